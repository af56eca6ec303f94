#pragma once

// Values produced by reference/generate_reference_values.py (mpmath, 40 digits).

#include <complex>
#include <utility>

namespace ref {

using C = std::complex<double>;

inline constexpr std::pair<double, double> kGamma[] = {
    {0.05, 19.470085311255512864},   {0.1, 9.5135076986687318363},     {0.25, 3.6256099082219083119},
    {0.75, 1.2254167024651776451},   {1.5, 0.88622692545275801365},    {3.3, 2.6834373819557687936},
    {7.25, 1155.3810139199896872},   {12.5, 136843365.46556585726},    {33.3, 7.487577596522706608e+35},
    {50.0, 6.0828186403426756087e+62},
};

inline const C kSqrtOnePlusI{1.098684113467809966, 0.4550898605622273413};
inline const C kPowNegPoint3{0.68840313090728296955, -0.41709032961400483254};  // (-0.5+2i)^-0.3

// int_0^1 p^-1/2 (1-p)^-1/2 e^{i w p} dp
inline const std::pair<double, C> kBesselIntegral[] = {
    {1.0, {2.5873677615517816028, 1.4134854502772931635}},
    {10.0, {-0.15826554709378483776, 0.53501905692236534413}},
    {100.0, {0.1691967560844202732, -0.046004701527367725706}},
    {1000.0, {0.094686824791992819387, 0.050112421093297732238}},
    {10000.0, {-0.0032307755477585685698, 0.020637038236779465514}},
};
inline constexpr double kJ0At5 = -0.17759677131433830435;

// int_0^1 p^-1/2 e^{25 i p} dp
inline const C kFresnel25{0.24458670655858504472, 0.21116691246612896554};

// int_0^1 p^(mu1-1) (1-p)^(mu2-1) e^{i w (p + p^2)} dp
struct QuadLift {
  double mu1, mu2, omega;
  C value;
};
inline const QuadLift kQuadLift[] = {
    {0.3, 0.6, 50.0, {0.83295131289653780548, 0.34205959145516252683}},
    {0.7, 0.4, 200.0, {-0.14431522246941989004, -0.036813671510462714276}},
};

// (1/2pi) int_0^1 p^-1/4 (1-p) dp
inline constexpr double kUSmallT = 0.1212609090223964463;

}  // namespace ref
