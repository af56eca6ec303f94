#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stasis {

/// Invalid or missing configuration entry; `key()` is the dotted name, e.g. "grid.eps".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat key-value configuration. `[section]` headers prefix the keys that
/// follow ("section.key"); `#` and `;` start comments.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  /// Comma-separated numbers, required to be strictly increasing.
  std::vector<double> get_sorted_list(const std::string& key) const;

  std::vector<std::string> keys() const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

 private:
  std::map<std::string, std::string> values_;
};

struct RunOptions {
  bool plot = false;
  int jobs = 1;
  std::filesystem::path out_dir = ".";
};

struct RunOutcome {
  bool all_pass = true;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  std::filesystem::path svg_path;  // empty unless plotted
};

/// Runs one experiment; throws ConfigError / std::exception on failure.
/// `stem` names the outputs unless the config sets experiment.output.
RunOutcome run_experiment(const ExperimentConfig& config, const std::string& stem, const RunOptions& options);

/// File-level entry used by the command line: 0 all pass, 2 any failure, 1 error.
int run_config_file(const std::filesystem::path& config_path, const RunOptions& options, std::ostream& out,
                    std::ostream& err);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Fixed-width round-trippable decimal text (%.17g).
std::string format_real(double value);

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Minimal log10-log10 line plot. Non-positive values are skipped.
std::string render_loglog_svg(const std::string& title, const std::string& x_label,
                              const std::vector<PlotSeries>& series);

}  // namespace stasis
