#pragma once

// Linear and third-order susceptibilities of the atomic media, together with
// the derived refractive indices and absorption coefficients.

#include <cmath>

#include "eitm/atom_models.hpp"
#include "eitm/core.hpp"

namespace eitm {

enum class SusceptibilityOrder { Linear, ThirdOrder };

struct Susceptibility {
  complex_t value;
  SusceptibilityOrder order = SusceptibilityOrder::Linear;
  bool damped = false;
  ModelKind model = ModelKind::ThreeLevel;
};

/// Density, dipole elements and unit constants. All default to 1 so curves
/// carry only the detuning structure.
struct PhysicalConstants {
  real_t number_density = 1;
  complex_t mu_ad = 1;
  complex_t mu_dc = 1;
  complex_t mu_cb = 1;
  complex_t mu_ba = 1;
  complex_t mu_da = 1;
  real_t epsilon0 = 1;
  real_t hbar = 1;
  real_t c = 1;
};

inline void validate(const PhysicalConstants& k) {
  if (!(k.number_density > 0) || !(k.epsilon0 > 0) || !(k.hbar > 0) || !(k.c > 0)) {
    throw InvalidSpec("number density, epsilon0, hbar and c must be strictly positive");
  }
}

/// Third-order (sum-frequency) susceptibility of the four-level medium.
inline Susceptibility chi3(const FourLevelParams& p, const PhysicalConstants& k, DampingMode mode,
                           real_t pole_threshold = kDefaultPoleThreshold) {
  validate(k);
  const FourLevelDetunings d = detunings(p, mode);
  const complex_t denom = four_level_denominator(d, p.rabi_dc);
  detail::check_pole(d.one_photon, pole_threshold, "delta1");
  detail::check_pole(denom, pole_threshold, "delta2 (delta2 + Delta) - |Omega_dc|^2");

  const complex_t prefactor =
      -k.number_density * k.mu_ad * k.mu_dc * k.mu_cb * k.mu_ba / (3.0 * k.epsilon0 * k.hbar);
  return {prefactor / (d.one_photon * denom), SusceptibilityOrder::ThirdOrder, mode == DampingMode::On,
          ModelKind::FourLevel};
}

/// Linear susceptibility of the three-level medium at omega_4. The damped
/// form has numerator (delta - Delta + i gamma_c) and denominator
/// |Omega_s|^2 - (delta + i gamma_d)(delta - Delta + i gamma_c).
inline Susceptibility chi1(const ThreeLevelParams& p, const PhysicalConstants& k, DampingMode mode,
                           real_t pole_threshold = kDefaultPoleThreshold) {
  validate(k);
  const ThreeLevelDetunings d = detunings(p, mode);
  const complex_t denom = three_level_denominator(d, p.rabi_s);
  detail::check_pole(denom, pole_threshold, "|Omega_s|^2 - delta (delta - Delta)");

  const real_t prefactor = k.number_density * std::norm(k.mu_da) / (k.epsilon0 * k.hbar);
  return {prefactor * d.two_photon() / denom, SusceptibilityOrder::Linear, mode == DampingMode::On,
          ModelKind::ThreeLevel};
}

struct RefractiveIndex {
  complex_t value;
  bool negative_permittivity = false;  // real part of 1 + chi1 below zero
  bool below_unity = false;            // Re(n0) < 1
};

/// n0 = sqrt(1 + chi1) on the principal branch; a negative real permittivity
/// maps to +i sqrt(|eps|).
inline RefractiveIndex linear_index(const Susceptibility& chi) {
  complex_t eps = 1.0 + chi.value;
  if (eps.imag() == 0.0) eps = complex_t(eps.real(), 0.0);  // drop a -0 imaginary part
  RefractiveIndex n;
  n.value = std::sqrt(eps);
  n.negative_permittivity = eps.real() < 0.0;
  n.below_unity = n.value.real() < 1.0;
  return n;
}

/// n2 = 3 chi3 / (4 n0^2 epsilon0 c).
inline complex_t nonlinear_index(const Susceptibility& chi3_value, complex_t n0, const PhysicalConstants& k) {
  if (n0 == complex_t(0.0)) throw DegenerateInput("nonlinear index undefined for n0 = 0");
  return 3.0 * chi3_value.value / (4.0 * n0 * n0 * k.epsilon0 * k.c);
}

/// Time-averaged intensity I = 2 Re(n0) epsilon0 c |E_s|^2.
inline real_t wave_intensity(complex_t field, complex_t n0, const PhysicalConstants& k) {
  return 2.0 * n0.real() * k.epsilon0 * k.c * std::norm(field);
}

/// Intensity-dependent index n0 + n2 I.
inline complex_t total_index(complex_t n0, complex_t n2, real_t intensity) { return n0 + n2 * intensity; }

/// Low-intensity absorption coefficient Im(chi1) omega / c.
inline real_t absorption_linear(const Susceptibility& chi, real_t omega, const PhysicalConstants& k) {
  return chi.value.imag() * omega / k.c;
}

inline real_t absorption_saturated(real_t alpha0, real_t intensity, real_t saturation_intensity) {
  if (!(saturation_intensity > 0)) throw DegenerateInput("saturation intensity must be positive");
  if (!(intensity >= 0)) throw DegenerateInput("intensity must be non-negative");
  return alpha0 / (1.0 + intensity / saturation_intensity);
}

}  // namespace eitm
