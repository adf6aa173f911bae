#pragma once

// Quantum statistical speeds of a pure-state family psi(eta):
//   QFI  F   = 4 [ <psi'|psi'> - |<psi|psi'>|^2 ]
//   HSS      = sqrt( Tr[(d rho / d eta)^2] / 2 ),  rho = |psi><psi|
// Derivatives are numerical (central differences with optional Richardson
// extrapolation). QFI differentiates the state vector, HSS differentiates
// the density matrix entrywise, so the two routes share no derivative.

#include <cmath>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "eitm/atom_models.hpp"
#include "eitm/core.hpp"

namespace eitm {

enum class DiffMethod { CentralDifference, RichardsonExtrapolated };

struct DiffConfig {
  DiffMethod method = DiffMethod::RichardsonExtrapolated;
  real_t step_rel = 1e-6;     // step = step_rel * max(1, |eta|)
  real_t step_floor = 1e-9;   // absolute lower bound on the step
  int richardson_levels = 2;  // steps h, h/2, ..., h/2^(levels-1)
  bool power_of_two_step = true;
  real_t level_tolerance = 1e-3;  // max relative disagreement between the last two levels
};

inline void validate(const DiffConfig& cfg) {
  if (!(cfg.step_rel > 0) || !(cfg.step_floor > 0)) throw InvalidSpec("finite-difference step must be > 0");
  if (cfg.richardson_levels < 1) throw InvalidSpec("richardson_levels must be >= 1");
  if (!(cfg.level_tolerance > 0)) throw InvalidSpec("level_tolerance must be > 0");
}

/// Base step at eta. Rounded to a power of two by default so that eta +- h
/// is exact for |eta| >= h.
inline real_t finite_step(real_t eta, const DiffConfig& cfg) {
  real_t h = std::max(cfg.step_rel * std::max(1.0, std::abs(eta)), cfg.step_floor);
  if (cfg.power_of_two_step) h = std::exp2(std::round(std::log2(h)));
  return h;
}

/// Derivative of an Eigen-valued function of one real variable, carried
/// out in the scalar type of the function's result.
template <class Fn>
auto derivative(Fn&& f, real_t x, const DiffConfig& cfg) {
  using Value = std::decay_t<decltype(f(x))>;
  using Real = typename Eigen::NumTraits<typename Value::Scalar>::Real;
  validate(cfg);
  const real_t h = finite_step(x, cfg);

  Real scale = 0;
  auto central = [&](real_t step) -> Value {
    const Value up = f(x + step);
    const Value down = f(x - step);
    scale = std::max(scale, static_cast<Real>(up.norm()));
    return ((up - down) / Real(2 * step)).eval();
  };

  const int levels = cfg.method == DiffMethod::CentralDifference ? 1 : cfg.richardson_levels;
  if (levels == 1) return central(h);

  // Richardson tableau; row k starts from step h / 2^k.
  std::vector<Value> prev_row{central(h)};
  Value prev_best = prev_row[0];
  for (int k = 1; k < levels; ++k) {
    const real_t smallest = h / std::exp2(k);
    std::vector<Value> row{central(smallest)};
    Real factor = 4;
    for (int j = 1; j <= k; ++j, factor *= 4) {
      row.push_back(((factor * row[j - 1] - prev_row[j - 1]) / (factor - 1)).eval());
    }
    const Value& best = row.back();
    const Real disagreement = (best - prev_best).norm();
    const Real noise_floor = 64 * std::numeric_limits<Real>::epsilon() * scale / Real(smallest);
    if (disagreement > Real(cfg.level_tolerance) * best.norm() + noise_floor) {
      throw StepTooLarge("Richardson levels disagree; reduce the finite-difference step");
    }
    prev_best = best;
    prev_row = std::move(row);
  }
  return prev_best;
}

/// F = 4 [<dpsi|dpsi> - |<psi|dpsi>|^2] for a normalized psi, clamped at 0.
template <class Vec>
real_t qfi_from_derivative(const Vec& psi, const Vec& dpsi) {
  const auto f = 4 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
  return std::max(static_cast<real_t>(f), 0.0);
}

/// sqrt(Tr[drho^2] / 2), clamped at 0 before the root.
template <class Mat>
real_t hss_from_derivative(const Mat& drho) {
  const auto tr = static_cast<real_t>((drho * drho).trace().real());
  return std::sqrt(std::max(0.5 * tr, 0.0));
}

// ---------------------------------------------------------------------------
// families given as eta -> normalized state vector

// The family's vector type (StateVector or WideStateVector) sets the
// precision of the differencing.

template <class Fn>
auto state_derivative(Fn&& family, real_t eta, const DiffConfig& cfg) {
  using Vec = std::decay_t<decltype(family(eta))>;
  return derivative([&](real_t x) -> Vec { return family(x); }, eta, cfg);
}

template <class Fn>
real_t qfi_pure(Fn&& family, real_t eta, const DiffConfig& cfg) {
  const auto psi = family(eta);
  return qfi_from_derivative(psi, state_derivative(family, eta, cfg));
}

template <class Fn>
real_t hss(Fn&& family, real_t eta, const DiffConfig& cfg) {
  const auto drho = derivative([&](real_t x) { return pure_density(family(x)); }, eta, cfg);
  return hss_from_derivative(drho);
}

// ---------------------------------------------------------------------------
// families given as params -> normalized state vector, differentiated in one
// named parameter

template <class StateFn, class Params>
auto bind_param(StateFn&& state_fn, Param sel, const Params& at) {
  (void)get_param(at, sel);  // InvalidSpec for a parameter the model lacks
  return [&state_fn, sel, at](real_t x) { return state_fn(with_param(at, sel, x)); };
}

template <class StateFn, class Params>
auto state_derivative(StateFn&& state_fn, Param sel, const Params& at, const DiffConfig& cfg) {
  return state_derivative(bind_param(state_fn, sel, at), get_param(at, sel), cfg);
}

template <class StateFn, class Params>
real_t qfi_pure(StateFn&& state_fn, Param sel, const Params& at, const DiffConfig& cfg) {
  return qfi_pure(bind_param(state_fn, sel, at), get_param(at, sel), cfg);
}

template <class StateFn, class Params>
real_t hss(StateFn&& state_fn, Param sel, const Params& at, const DiffConfig& cfg) {
  return hss(bind_param(state_fn, sel, at), get_param(at, sel), cfg);
}

/// Normalized interaction-picture state of either model at time t,
/// evaluated in scalar type R.
template <class R>
struct BasicNormalizedState {
  DampingMode mode = DampingMode::On;
  real_t eval_time = 0;
  real_t pole_threshold = kDefaultPoleThreshold;

  template <class Params>
  BasicStateVector<R> operator()(const Params& p) const {
    return normalized_vector(interaction_picture_vector<R>(p, mode, eval_time, pole_threshold));
  }
};

using NormalizedState = BasicNormalizedState<real_t>;
/// Used by scans: keeps the speeds stable down to relative steps of 1e-8.
using WideNormalizedState = BasicNormalizedState<wide_real_t>;

/// Smallest resolvable change 1 / sqrt(F).
inline real_t cramer_rao_bound(real_t fisher) {
  if (!(fisher > 0)) throw DegenerateInput("Cramer-Rao bound needs positive Fisher information");
  return 1.0 / std::sqrt(fisher);
}

}  // namespace eitm
