#pragma once

// Reference evaluations written directly from the closed-form expressions,
// with std::complex only. Nothing here calls into the library, so a test
// comparing the two compares two independent transcriptions.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

/// Four-level amplitudes (a, b, c, d) at t = 0, damping written out as the
/// substitutions delta2 -> delta2 + i gc and delta2 + Delta -> delta2 + Delta + i gd.
inline std::array<cd, 4> four_level(double w, double ws, double wba, double wca, double wdc, cd rba, cd rcb, cd rdc,
                                    double gc, double gd) {
  const double d1 = w - wba;
  const double d2 = 2 * w - wca;
  const double D = ws - wdc;
  const cd lower = d2 + I * gc;
  const cd upper = d2 + D + I * gd;
  const cd den = lower * upper - std::norm(rdc);
  const cd Cb = -rba / d1;
  const cd Cd = -rdc * rcb * rba / (d1 * den);
  const cd Cc = -(Cb * rcb + Cd * std::conj(rdc)) / lower;
  return {1.0, Cb, Cc, Cd};
}

/// Three-level amplitudes (a, d, c) at t = 0; the two-photon detuning carries
/// +i gc and the sum-frequency detuning +i gd.
inline std::array<cd, 3> three_level(double w, double ws, double wda, double wdc, cd r, cd rs, double gc, double gd) {
  const cd delta = 2 * w + ws - wda + I * gd;
  const cd two_photon = (2 * w + ws - wda) - (ws - wdc) + I * gc;
  const cd Cd = r * two_photon / (std::norm(rs) - delta * two_photon);
  const cd Cc = (-r - delta * Cd) / rs;
  return {1.0, Cd, Cc};
}

inline cd chi1(double w, double ws, double wda, double wdc, cd rs, double gc, double gd) {
  const double delta = 2 * w + ws - wda;
  const double Delta = ws - wdc;
  const cd num = delta - Delta + I * gc;
  return num / (std::norm(rs) - (delta + I * gd) * num);
}

inline cd chi3(double w, double ws, double wba, double wca, double wdc, cd rdc, double gc, double gd) {
  const double d1 = w - wba;
  const double d2 = 2 * w - wca;
  const double D = ws - wdc;
  return -1.0 / (3.0 * d1 * ((d2 + I * gc) * (d2 + D + I * gd) - std::norm(rdc)));
}

/// Plain symmetric difference of a vector-valued function.
inline std::vector<cd> central_difference(const std::function<std::vector<cd>(double)>& f, double x, double h) {
  const auto up = f(x + h);
  const auto down = f(x - h);
  std::vector<cd> d(up.size());
  for (std::size_t i = 0; i < up.size(); ++i) d[i] = (up[i] - down[i]) / (2 * h);
  return d;
}

inline double norm(const std::vector<cd>& v) {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline double rel_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  std::vector<cd> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm(d) / std::max(norm(b), 1e-300);
}

}  // namespace oracle
