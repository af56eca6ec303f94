#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stasis/catalog.hpp"
#include "stasis/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Endpoint expansions of oscillatory integrals and free Schrodinger decay experiments"};
  app.require_subcommand(1);

  std::string config_path;
  stasis::RunOptions options;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Experiment config")->required();
  run->add_flag("--plot", options.plot, "Also write a log-log SVG plot");
  run->add_option("--jobs,-j", options.jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out,-o", out_dir, "Output directory");

  auto* catalog = app.add_subcommand("catalog", "List the built-in amplitudes and phases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (catalog->parsed()) {
    std::cout << stasis::catalog_list();
    return 0;
  }
  options.out_dir = out_dir;
  return stasis::run_config_file(config_path, options, std::cout, std::cerr);
}
