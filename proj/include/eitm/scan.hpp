#pragma once

// One-dimensional parameter sweeps. Every requested quantity is evaluated at
// every grid point; points that hit a pole are masked (NaN) and never
// interpolated. Curves are max-normalized, searched for features and paired
// into coincidence reports.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "eitm/atom_models.hpp"
#include "eitm/core.hpp"
#include "eitm/features.hpp"
#include "eitm/optical_response.hpp"
#include "eitm/statistical_speed.hpp"

namespace eitm {

enum class QuantityKind { Qfi, Hss, ChiAbs, ChiRe, ChiIm, N0, Alpha0 };

struct Quantity {
  QuantityKind kind = QuantityKind::Qfi;
  Param selector = Param::OmegaS;  // QFI / HSS only

  bool operator==(const Quantity& o) const {
    return kind == o.kind && (!is_speed() || selector == o.selector);
  }
  bool is_speed() const { return kind == QuantityKind::Qfi || kind == QuantityKind::Hss; }
};

namespace detail {

inline std::string selector_token(Param p) {
  if (p == Param::Omega) return "omega";
  if (p == Param::OmegaS) return "omegas";
  return std::string(param_name(p));
}

}  // namespace detail

/// Token used in configs and on the command line: qfi_omegas, hss_omega,
/// qfi_<param>, chi_abs, chi_re, chi_im, n0, alpha0.
inline std::string quantity_token(const Quantity& q) {
  switch (q.kind) {
    case QuantityKind::Qfi: return "qfi_" + detail::selector_token(q.selector);
    case QuantityKind::Hss: return "hss_" + detail::selector_token(q.selector);
    case QuantityKind::ChiAbs: return "chi_abs";
    case QuantityKind::ChiRe: return "chi_re";
    case QuantityKind::ChiIm: return "chi_im";
    case QuantityKind::N0: return "n0";
    case QuantityKind::Alpha0: return "alpha0";
  }
  return "?";
}

inline std::optional<Quantity> parse_quantity(std::string_view token) {
  if (token == "chi_abs") return Quantity{QuantityKind::ChiAbs};
  if (token == "chi_re") return Quantity{QuantityKind::ChiRe};
  if (token == "chi_im") return Quantity{QuantityKind::ChiIm};
  if (token == "n0") return Quantity{QuantityKind::N0};
  if (token == "alpha0") return Quantity{QuantityKind::Alpha0};
  for (auto [prefix, kind] : {std::pair{std::string_view("qfi_"), QuantityKind::Qfi},
                              std::pair{std::string_view("hss_"), QuantityKind::Hss}}) {
    if (token.substr(0, prefix.size()) != prefix) continue;
    const std::string_view rest = token.substr(prefix.size());
    if (rest == "omega") return Quantity{kind, Param::Omega};
    if (rest == "omegas") return Quantity{kind, Param::OmegaS};
    if (auto p = param_from_name(rest)) return Quantity{kind, *p};
  }
  return std::nullopt;
}

/// CSV column name. Susceptibility columns carry the order of the model.
inline std::string column_name(const Quantity& q, ModelKind model) {
  const std::string chi = model == ModelKind::FourLevel ? "chi3" : "chi1";
  switch (q.kind) {
    case QuantityKind::ChiAbs: return chi + "_abs";
    case QuantityKind::ChiRe: return chi + "_re";
    case QuantityKind::ChiIm: return chi + "_im";
    case QuantityKind::N0: return "n0_re";
    default: return quantity_token(q);
  }
}

/// Pair a feature of one quantity with a feature of another.
struct CoincidenceRequest {
  Quantity a;
  FeatureKind kind_a = FeatureKind::GlobalMaximum;
  Quantity b;
  FeatureKind kind_b = FeatureKind::GlobalMaximum;
};

using ModelParams = std::variant<FourLevelParams, ThreeLevelParams>;

inline ModelKind model_of(const ModelParams& p) {
  return std::holds_alternative<FourLevelParams>(p) ? ModelKind::FourLevel : ModelKind::ThreeLevel;
}

struct ScanSpec {
  std::string name = "scan";
  ModelParams base = FourLevelParams{};
  Param swept = Param::OmegaDc;
  real_t min = 0;
  real_t max = 1;
  std::size_t points = 501;
  std::vector<Quantity> quantities;
  DampingMode damping = DampingMode::On;
  DiffConfig diff;
  real_t eval_time = 10.0;
  real_t pole_threshold = kDefaultPoleThreshold;
  PhysicalConstants constants;
  FeatureOptions features;
  std::vector<CoincidenceRequest> coincidences;  // empty: argmax/argmin of every pair
  int tol_cells = 2;
  unsigned threads = 0;  // 0: hardware concurrency

  ModelKind model() const { return model_of(base); }
};

inline void validate(const ScanSpec& s) {
  if (!std::isfinite(s.min) || !std::isfinite(s.max) || !(s.min < s.max)) {
    throw InvalidSpec("grid needs finite min < max");
  }
  if (s.points < 3) throw InvalidSpec("grid needs at least 3 points");
  if (s.quantities.empty()) throw InvalidSpec("no quantities requested");
  if (s.tol_cells < 0) throw InvalidSpec("tol_cells must be >= 0");
  if (!std::isfinite(s.eval_time)) throw InvalidSpec("eval_time must be finite");
  if (!(s.pole_threshold >= 0)) throw InvalidSpec("pole_threshold must be >= 0");
  validate(s.diff);
  validate(s.constants);
  std::visit(
      [&](const auto& p) {
        validate(p);
        if (!has_param(p, s.swept)) {
          throw InvalidSpec("swept parameter " + std::string(param_name(s.swept)) + " is not part of the " +
                            to_string(s.model()) + " model");
        }
        for (const Quantity& q : s.quantities) {
          if (q.is_speed() && !has_param(p, q.selector)) {
            throw InvalidSpec("quantity " + quantity_token(q) + " differentiates a parameter the model lacks");
          }
          if ((q.kind == QuantityKind::N0 || q.kind == QuantityKind::Alpha0) && s.model() != ModelKind::ThreeLevel) {
            throw InvalidSpec("quantity " + quantity_token(q) + " needs the linear susceptibility (three-level)");
          }
        }
      },
      s.base);
  auto listed = [&](const Quantity& q) {
    return std::find(s.quantities.begin(), s.quantities.end(), q) != s.quantities.end();
  };
  for (const auto& r : s.coincidences) {
    if (!listed(r.a) || !listed(r.b)) throw InvalidSpec("coincidence request names an unrequested quantity");
  }
}

/// Linear grid; the end points are exact.
inline std::vector<real_t> linear_grid(real_t min, real_t max, std::size_t points) {
  std::vector<real_t> g(points);
  const real_t span = max - min;
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = min + span * static_cast<real_t>(i) / static_cast<real_t>(points - 1);
  }
  g.back() = max;
  return g;
}

/// Evaluate one quantity at one parameter point. Throws EvaluationError
/// (pole, unstable step) or DegenerateInput when undefined there.
template <class Params>
real_t evaluate_quantity(const Quantity& q, const Params& p, const ScanSpec& s) {
  const WideNormalizedState state{s.damping, s.eval_time, s.pole_threshold};
  auto chi = [&]() -> Susceptibility {
    if constexpr (std::is_same_v<Params, FourLevelParams>) {
      return chi3(p, s.constants, s.damping, s.pole_threshold);
    } else {
      return chi1(p, s.constants, s.damping, s.pole_threshold);
    }
  };
  switch (q.kind) {
    case QuantityKind::Qfi: return qfi_pure(state, q.selector, p, s.diff);
    case QuantityKind::Hss: return hss(state, q.selector, p, s.diff);
    case QuantityKind::ChiAbs: return std::abs(chi().value);
    case QuantityKind::ChiRe: return chi().value.real();
    case QuantityKind::ChiIm: return chi().value.imag();
    case QuantityKind::N0: return linear_index(chi()).value.real();
    case QuantityKind::Alpha0:
      if constexpr (std::is_same_v<Params, ThreeLevelParams>) {
        return absorption_linear(chi(), p.omega4(), s.constants);
      }
      break;
  }
  throw InvalidSpec("quantity not available for this model");
}

struct QuantityCurve {
  Quantity quantity;
  std::string column;
  std::vector<real_t> raw;         // NaN where masked
  std::vector<real_t> normalized;  // raw / norm_max
  real_t norm_max = 0;             // max |raw| over unmasked points
  std::vector<std::size_t> masked;
  FeatureSet features;
};

struct CoincidenceResult {
  CoincidenceRequest request;
  std::string label;  // e.g. "qfi_omega:argmin ~ chi_abs:argmax"
  CoincidenceReport report;
};

struct ScanResult {
  ScanSpec spec;
  std::vector<real_t> grid;
  std::vector<QuantityCurve> curves;
  std::vector<CoincidenceResult> coincidences;

  const QuantityCurve& curve(const Quantity& q) const {
    for (const auto& c : curves) {
      if (c.quantity == q) return c;
    }
    throw InvalidSpec("quantity " + quantity_token(q) + " not in scan result");
  }
};

inline std::string coincidence_label(const CoincidenceRequest& r) {
  return quantity_token(r.a) + ":" + std::string(to_string(r.kind_a)) + " ~ " + quantity_token(r.b) + ":" +
         std::string(to_string(r.kind_b));
}

/// Divide by max |curve|; an identically zero curve stays zero with max 0.
inline real_t max_normalize(const std::vector<real_t>& raw, std::vector<real_t>& out) {
  real_t m = 0;
  for (real_t v : raw) {
    if (!std::isnan(v)) m = std::max(m, std::abs(v));
  }
  out.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::isnan(raw[i]) ? raw[i] : (m > 0 ? raw[i] / m : 0.0);
  }
  return m;
}

inline ScanResult run_scan(const ScanSpec& spec) {
  validate(spec);
  ScanResult result;
  result.spec = spec;
  result.grid = linear_grid(spec.min, spec.max, spec.points);
  const std::size_t n = spec.points;
  const std::size_t nq = spec.quantities.size();

  // values[k * nq + q]; each worker owns a disjoint set of k.
  std::vector<real_t> values(n * nq, std::numeric_limits<real_t>::quiet_NaN());
  auto evaluate_point = [&](std::size_t k) {
    std::visit(
        [&](const auto& base) {
          const auto p = with_param(base, spec.swept, result.grid[k]);
          for (std::size_t q = 0; q < nq; ++q) {
            try {
              values[k * nq + q] = evaluate_quantity(spec.quantities[q], p, spec);
            } catch (const EvaluationError&) {
            } catch (const DegenerateInput&) {
            }
          }
        },
        spec.base);
  };

  unsigned workers = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) evaluate_point(k);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < n; k += workers) evaluate_point(k);
      });
    }
  }

  for (std::size_t q = 0; q < nq; ++q) {
    QuantityCurve c;
    c.quantity = spec.quantities[q];
    c.column = column_name(c.quantity, spec.model());
    c.raw.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      c.raw[k] = values[k * nq + q];
      if (std::isnan(c.raw[k])) c.masked.push_back(k);
    }
    if (2 * c.masked.size() > n) {
      throw AllPoles("more than half of the grid is masked for " + c.column);
    }
    c.norm_max = max_normalize(c.raw, c.normalized);
    c.features = detect_features(c.raw, result.grid, spec.features);
    result.curves.push_back(std::move(c));
  }

  std::vector<CoincidenceRequest> requests = spec.coincidences;
  if (requests.empty()) {
    for (std::size_t a = 0; a < nq; ++a) {
      for (std::size_t b = a + 1; b < nq; ++b) {
        requests.push_back({spec.quantities[a], FeatureKind::GlobalMaximum, spec.quantities[b],
                            FeatureKind::GlobalMaximum});
        requests.push_back({spec.quantities[a], FeatureKind::GlobalMinimum, spec.quantities[b],
                            FeatureKind::GlobalMinimum});
      }
    }
  }
  for (const auto& r : requests) {
    const auto& ca = result.curve(r.a);
    const auto& cb = result.curve(r.b);
    result.coincidences.push_back(
        {r, coincidence_label(r), coincidence(ca.features, r.kind_a, cb.features, r.kind_b, spec.tol_cells)});
  }
  return result;
}

}  // namespace eitm
