#pragma once

// Perturbative steady-state wavefunctions of the four-level (sum-frequency)
// and three-level (EIT) atoms. Everything here is a pure function of the
// parameter records; units are reduced (hbar = 1).

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include "eitm/core.hpp"

namespace eitm {

/// Four-level ladder a-b-c-d driven by a weak field (omega, two photons up to
/// c) and a strong field (omega_s) on c-d.
struct FourLevelParams {
  real_t omega_ba = 0;
  real_t omega_ca = 0;
  real_t omega_dc = 0;
  real_t omega = 0;
  real_t omega_s = 0;
  complex_t rabi_ba = 0;
  complex_t rabi_cb = 0;
  complex_t rabi_dc = 0;
  real_t gamma_c = 0;
  real_t gamma_d = 0;

  bool operator==(const FourLevelParams&) const = default;
};

/// Three-level system a-d-c probed at omega_4 = 2 omega + omega_s and
/// dressed by the strong field omega_s on d-c. omega_4 is always derived.
struct ThreeLevelParams {
  real_t omega_da = 0;
  real_t omega_dc = 0;
  real_t omega = 0;
  real_t omega_s = 0;
  complex_t rabi = 0;
  complex_t rabi_s = 0;
  real_t gamma_c = 0;
  real_t gamma_d = 0;

  real_t omega4() const { return 2.0 * omega + omega_s; }

  bool operator==(const ThreeLevelParams&) const = default;
};

/// Detunings of the four-level model. With damping on, two_photon carries
/// +i gamma_c and two_photon + coupling carries +i gamma_d.
struct FourLevelDetunings {
  complex_t one_photon;  // omega - omega_ba, never damped
  complex_t two_photon;  // 2 omega - omega_ca
  complex_t coupling;    // omega_s - omega_dc

  complex_t upper() const { return two_photon + coupling; }
};

/// Detunings of the three-level model. With damping on, sum_frequency
/// carries +i gamma_d and sum_frequency - coupling carries +i gamma_c.
struct ThreeLevelDetunings {
  complex_t sum_frequency;  // omega_4 - omega_da
  complex_t coupling;       // omega_s - omega_dc

  complex_t two_photon() const { return sum_frequency - coupling; }
};

/// Amplitudes (C_a, C_b, C_c, C_d) for the four-level model or
/// (C_a, C_d, C_c) for the three-level model.
struct AtomState {
  StateVector amplitudes;
  bool normalized = false;
  ModelKind model = ModelKind::FourLevel;
};

// ---------------------------------------------------------------------------
// validation

namespace detail {

inline void require_finite(real_t v, const char* name) {
  if (!std::isfinite(v)) throw InvalidSpec(std::string(name) + " must be finite");
}

inline void require_finite(complex_t v, const char* name) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw InvalidSpec(std::string(name) + " must be finite");
  }
}

inline void require_rate(real_t v, const char* name) {
  require_finite(v, name);
  if (v < 0) throw InvalidSpec(std::string(name) + " must be >= 0");
}

}  // namespace detail

inline void validate(const FourLevelParams& p) {
  detail::require_finite(p.omega_ba, "omega_ba");
  detail::require_finite(p.omega_ca, "omega_ca");
  detail::require_finite(p.omega_dc, "omega_dc");
  detail::require_finite(p.omega, "omega");
  detail::require_finite(p.omega_s, "omega_s");
  detail::require_finite(p.rabi_ba, "rabi_ba");
  detail::require_finite(p.rabi_cb, "rabi_cb");
  detail::require_finite(p.rabi_dc, "rabi_dc");
  detail::require_rate(p.gamma_c, "gamma_c");
  detail::require_rate(p.gamma_d, "gamma_d");
}

inline void validate(const ThreeLevelParams& p) {
  detail::require_finite(p.omega_da, "omega_da");
  detail::require_finite(p.omega_dc, "omega_dc");
  detail::require_finite(p.omega, "omega");
  detail::require_finite(p.omega_s, "omega_s");
  detail::require_finite(p.rabi, "rabi");
  detail::require_finite(p.rabi_s, "rabi_s");
  detail::require_rate(p.gamma_c, "gamma_c");
  detail::require_rate(p.gamma_d, "gamma_d");
}

// ---------------------------------------------------------------------------
// detunings

inline FourLevelDetunings detunings(const FourLevelParams& p, DampingMode mode) {
  const bool damped = mode == DampingMode::On;
  const real_t gc = damped ? p.gamma_c : 0.0;
  const real_t gd = damped ? p.gamma_d : 0.0;
  FourLevelDetunings d;
  d.one_photon = p.omega - p.omega_ba;
  d.two_photon = complex_t(2.0 * p.omega - p.omega_ca, gc);
  // (two_photon + coupling) must pick up exactly +i gamma_d.
  d.coupling = complex_t(p.omega_s - p.omega_dc, gd - gc);
  return d;
}

inline ThreeLevelDetunings detunings(const ThreeLevelParams& p, DampingMode mode) {
  const bool damped = mode == DampingMode::On;
  const real_t gc = damped ? p.gamma_c : 0.0;
  const real_t gd = damped ? p.gamma_d : 0.0;
  ThreeLevelDetunings d;
  d.sum_frequency = complex_t(p.omega4() - p.omega_da, gd);
  // (sum_frequency - coupling) carries +i gamma_c, as in the damped chi1.
  d.coupling = complex_t(p.omega_s - p.omega_dc, gd - gc);
  return d;
}

// ---------------------------------------------------------------------------
// steady-state amplitudes

/// Resonant denominator delta2 (delta2 + Delta) - |Omega_dc|^2.
inline complex_t four_level_denominator(const FourLevelDetunings& d, complex_t rabi_dc) {
  return d.two_photon * d.upper() - std::norm(rabi_dc);
}

/// Resonant denominator |Omega_s|^2 - delta (delta - Delta).
inline complex_t three_level_denominator(const ThreeLevelDetunings& d, complex_t rabi_s) {
  return std::norm(rabi_s) - d.sum_frequency * d.two_photon();
}

/// Coefficient vector (C_a, C_b, C_c, C_d) evaluated in scalar type R. Pole
/// checks use the double-precision detunings.
template <class R = real_t>
BasicStateVector<R> steady_vector(const FourLevelParams& p, DampingMode mode,
                                  real_t pole_threshold = kDefaultPoleThreshold) {
  const FourLevelDetunings d = detunings(p, mode);
  detail::check_pole(d.one_photon, pole_threshold, "delta1");
  detail::check_pole(four_level_denominator(d, p.rabi_dc), pole_threshold,
                     "delta2 (delta2 + Delta) - |Omega_dc|^2");
  detail::check_pole(d.two_photon, pole_threshold, "delta2");

  using C = std::complex<R>;
  const bool damped = mode == DampingMode::On;
  const C rba(p.rabi_ba), rcb(p.rabi_cb), rdc(p.rabi_dc);
  const R one_photon = R(p.omega) - R(p.omega_ba);
  const C lower(R(2) * R(p.omega) - R(p.omega_ca), damped ? R(p.gamma_c) : R(0));
  const C upper(lower.real() + (R(p.omega_s) - R(p.omega_dc)), damped ? R(p.gamma_d) : R(0));
  const C denom = lower * upper - std::norm(rdc);

  const C cb = -rba / one_photon;
  const C cd = -rdc * rcb * rba / (one_photon * denom);
  const C cc = -(cb * rcb + cd * std::conj(rdc)) / lower;
  BasicStateVector<R> v(4);
  v << C(1), cb, cc, cd;
  return v;
}

/// Coefficient vector (C_a, C_d, C_c) evaluated in scalar type R.
template <class R = real_t>
BasicStateVector<R> steady_vector(const ThreeLevelParams& p, DampingMode mode,
                                  real_t pole_threshold = kDefaultPoleThreshold) {
  if (p.rabi_s == complex_t(0.0)) {
    throw DegenerateInput("three-level amplitudes need a nonzero strong-field Rabi frequency");
  }
  const ThreeLevelDetunings d = detunings(p, mode);
  detail::check_pole(three_level_denominator(d, p.rabi_s), pole_threshold, "|Omega_s|^2 - delta (delta - Delta)");

  using C = std::complex<R>;
  const bool damped = mode == DampingMode::On;
  const C r(p.rabi), rs(p.rabi_s);
  const R delta = R(2) * R(p.omega) + R(p.omega_s) - R(p.omega_da);
  const R coupling = R(p.omega_s) - R(p.omega_dc);
  const C sum_frequency(delta, damped ? R(p.gamma_d) : R(0));
  const C two_photon(delta - coupling, damped ? R(p.gamma_c) : R(0));
  const C denom = std::norm(rs) - sum_frequency * two_photon;

  const C cd = r * two_photon / denom;
  const C cc = (-r - sum_frequency * cd) / rs;
  BasicStateVector<R> v(3);
  v << C(1), cd, cc;
  return v;
}

inline AtomState steady_amplitudes(const FourLevelParams& p, DampingMode mode,
                                   real_t pole_threshold = kDefaultPoleThreshold) {
  return {steady_vector(p, mode, pole_threshold), false, ModelKind::FourLevel};
}

inline AtomState steady_amplitudes(const ThreeLevelParams& p, DampingMode mode,
                                   real_t pole_threshold = kDefaultPoleThreshold) {
  return {steady_vector(p, mode, pole_threshold), false, ModelKind::ThreeLevel};
}

// ---------------------------------------------------------------------------
// interaction-picture phases

/// Frequencies multiplying t in the interaction-picture phase of each
/// amplitude, in amplitude order.
inline std::array<real_t, 4> phase_frequencies(const FourLevelParams& p) {
  return {0.0, p.omega, 2.0 * p.omega, 2.0 * p.omega + p.omega_s};
}

inline std::array<real_t, 3> phase_frequencies(const ThreeLevelParams& p) {
  return {0.0, p.omega4(), p.omega4() - p.omega_s};
}

/// Steady coefficients dressed with exp(-i w_k t), in scalar type R. The
/// phase arguments are formed in R as well.
template <class R, class Params>
BasicStateVector<R> interaction_picture_vector(const Params& p, DampingMode mode, real_t t,
                                               real_t pole_threshold = kDefaultPoleThreshold) {
  BasicStateVector<R> v = steady_vector<R>(p, mode, pole_threshold);
  if (t == 0.0) return v;
  std::array<R, 4> w{};
  if constexpr (std::is_same_v<Params, FourLevelParams>) {
    w = {R(0), R(p.omega), R(2) * R(p.omega), R(2) * R(p.omega) + R(p.omega_s)};
  } else {
    const R w4 = R(2) * R(p.omega) + R(p.omega_s);
    w = {R(0), w4, R(2) * R(p.omega)};
  }
  for (Eigen::Index k = 1; k < v.size(); ++k) v[k] *= std::polar(R(1), -w[static_cast<std::size_t>(k)] * R(t));
  return v;
}

/// Steady amplitudes dressed with exp(-i w_k t). t = 0 returns the bare
/// coefficient vector.
template <class Params>
AtomState interaction_picture_state(const Params& p, DampingMode mode, real_t t,
                                    real_t pole_threshold = kDefaultPoleThreshold) {
  AtomState s = steady_amplitudes(p, mode, pole_threshold);
  s.amplitudes = interaction_picture_vector<real_t>(p, mode, t, pole_threshold);
  return s;
}

// ---------------------------------------------------------------------------
// normalization and density matrix

/// Unit-norm copy of a coefficient vector; global phase untouched.
template <class R>
BasicStateVector<R> normalized_vector(BasicStateVector<R> v) {
  const R n2 = v.squaredNorm();
  if (!(n2 > R(0))) throw DegenerateInput("cannot normalize a zero state vector");
  v /= std::sqrt(n2);
  return v;
}

inline AtomState normalize(const AtomState& s) {
  const real_t n2 = s.amplitudes.squaredNorm();
  if (!(n2 > 0.0)) throw DegenerateInput("cannot normalize a zero state vector");
  AtomState out = s;
  out.amplitudes /= std::sqrt(n2);
  out.normalized = true;
  return out;
}

template <class Derived>
auto pure_density(const Eigen::MatrixBase<Derived>& psi) {
  return (psi * psi.adjoint()).eval();
}

inline DensityMatrix pure_density(const AtomState& s) {
  if (!s.normalized) throw DegenerateInput("pure_density expects a normalized state");
  return pure_density(s.amplitudes);
}

// ---------------------------------------------------------------------------
// named parameter access (sweeps, differentiation)

/// Every scalar parameter of either model. Rabi frequencies are addressed by
/// magnitude; setting one keeps its phase.
enum class Param {
  OmegaBa,
  OmegaCa,
  OmegaDc,
  OmegaDa,
  Omega,
  OmegaS,
  RabiBa,
  RabiCb,
  RabiDc,
  Rabi,
  RabiS,
  GammaC,
  GammaD,
};

inline constexpr std::array<Param, 13> kAllParams = {
    Param::OmegaBa, Param::OmegaCa, Param::OmegaDc, Param::OmegaDa, Param::Omega,
    Param::OmegaS,  Param::RabiBa,  Param::RabiCb,  Param::RabiDc,  Param::Rabi,
    Param::RabiS,   Param::GammaC,  Param::GammaD};

inline std::string_view param_name(Param p) {
  switch (p) {
    case Param::OmegaBa: return "omega_ba";
    case Param::OmegaCa: return "omega_ca";
    case Param::OmegaDc: return "omega_dc";
    case Param::OmegaDa: return "omega_da";
    case Param::Omega: return "omega";
    case Param::OmegaS: return "omega_s";
    case Param::RabiBa: return "rabi_ba";
    case Param::RabiCb: return "rabi_cb";
    case Param::RabiDc: return "rabi_dc";
    case Param::Rabi: return "rabi";
    case Param::RabiS: return "rabi_s";
    case Param::GammaC: return "gamma_c";
    case Param::GammaD: return "gamma_d";
  }
  return "?";
}

inline std::optional<Param> param_from_name(std::string_view name) {
  for (Param p : kAllParams) {
    if (param_name(p) == name) return p;
  }
  return std::nullopt;
}

namespace detail {

inline void set_rabi(complex_t& target, real_t magnitude) {
  const real_t phase = target == complex_t(0.0) ? 0.0 : std::arg(target);
  target = std::polar(magnitude, phase);
}

[[noreturn]] inline void not_in_model(Param p, ModelKind m) {
  throw InvalidSpec(std::string("parameter ") + std::string(param_name(p)) + " does not exist in the " +
                    to_string(m) + " model");
}

}  // namespace detail

inline bool has_param(const FourLevelParams&, Param p) {
  return p != Param::OmegaDa && p != Param::Rabi && p != Param::RabiS;
}

inline bool has_param(const ThreeLevelParams&, Param p) {
  switch (p) {
    case Param::OmegaDa:
    case Param::OmegaDc:
    case Param::Omega:
    case Param::OmegaS:
    case Param::Rabi:
    case Param::RabiS:
    case Param::GammaC:
    case Param::GammaD: return true;
    default: return false;
  }
}

inline real_t get_param(const FourLevelParams& q, Param p) {
  switch (p) {
    case Param::OmegaBa: return q.omega_ba;
    case Param::OmegaCa: return q.omega_ca;
    case Param::OmegaDc: return q.omega_dc;
    case Param::Omega: return q.omega;
    case Param::OmegaS: return q.omega_s;
    case Param::RabiBa: return std::abs(q.rabi_ba);
    case Param::RabiCb: return std::abs(q.rabi_cb);
    case Param::RabiDc: return std::abs(q.rabi_dc);
    case Param::GammaC: return q.gamma_c;
    case Param::GammaD: return q.gamma_d;
    default: detail::not_in_model(p, ModelKind::FourLevel);
  }
}

inline real_t get_param(const ThreeLevelParams& q, Param p) {
  switch (p) {
    case Param::OmegaDa: return q.omega_da;
    case Param::OmegaDc: return q.omega_dc;
    case Param::Omega: return q.omega;
    case Param::OmegaS: return q.omega_s;
    case Param::Rabi: return std::abs(q.rabi);
    case Param::RabiS: return std::abs(q.rabi_s);
    case Param::GammaC: return q.gamma_c;
    case Param::GammaD: return q.gamma_d;
    default: detail::not_in_model(p, ModelKind::ThreeLevel);
  }
}

inline void set_param(FourLevelParams& q, Param p, real_t v) {
  switch (p) {
    case Param::OmegaBa: q.omega_ba = v; break;
    case Param::OmegaCa: q.omega_ca = v; break;
    case Param::OmegaDc: q.omega_dc = v; break;
    case Param::Omega: q.omega = v; break;
    case Param::OmegaS: q.omega_s = v; break;
    case Param::RabiBa: detail::set_rabi(q.rabi_ba, v); break;
    case Param::RabiCb: detail::set_rabi(q.rabi_cb, v); break;
    case Param::RabiDc: detail::set_rabi(q.rabi_dc, v); break;
    case Param::GammaC: q.gamma_c = v; break;
    case Param::GammaD: q.gamma_d = v; break;
    default: detail::not_in_model(p, ModelKind::FourLevel);
  }
}

inline void set_param(ThreeLevelParams& q, Param p, real_t v) {
  switch (p) {
    case Param::OmegaDa: q.omega_da = v; break;
    case Param::OmegaDc: q.omega_dc = v; break;
    case Param::Omega: q.omega = v; break;
    case Param::OmegaS: q.omega_s = v; break;
    case Param::Rabi: detail::set_rabi(q.rabi, v); break;
    case Param::RabiS: detail::set_rabi(q.rabi_s, v); break;
    case Param::GammaC: q.gamma_c = v; break;
    case Param::GammaD: q.gamma_d = v; break;
    default: detail::not_in_model(p, ModelKind::ThreeLevel);
  }
}

template <class Params>
Params with_param(Params q, Param p, real_t v) {
  set_param(q, p, v);
  return q;
}

}  // namespace eitm
