#pragma once

// Built-in scan presets, one per figure panel. Caption values are stored as
// given; values a caption does not repeat are inherited from the preceding
// panel and listed in `inherited`. Sweep ranges are not in the captions and
// are chosen to bracket the analytically known feature (see `range_note`).

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eitm/scan.hpp"

namespace eitm {

struct Preset {
  std::string name;
  std::string figure;
  std::string description;
  std::vector<std::string> inherited;
  std::string range_note;
  ScanSpec spec;
};

namespace detail {

inline Quantity qfi(Param p) { return {QuantityKind::Qfi, p}; }
inline Quantity hss_of(Param p) { return {QuantityKind::Hss, p}; }
inline Quantity chi(QuantityKind k) { return {k, Param::OmegaS}; }

inline ScanSpec make_spec(std::string name, ModelParams base, Param swept, real_t lo, real_t hi,
                          std::vector<Quantity> quantities, DampingMode damping) {
  ScanSpec s;
  s.name = std::move(name);
  s.base = std::move(base);
  s.swept = swept;
  s.min = lo;
  s.max = hi;
  s.quantities = std::move(quantities);
  s.damping = damping;
  return s;
}

/// Speed quantities (first two) against the susceptibility (third): the
/// given feature kinds of both speeds paired with the susceptibility
/// feature, and the two speeds paired with each other.
inline std::vector<CoincidenceRequest> speed_vs_chi(const std::vector<Quantity>& q, FeatureKind speed_kind,
                                                    FeatureKind chi_kind) {
  return {{q[0], speed_kind, q[2], chi_kind}, {q[1], speed_kind, q[2], chi_kind}, {q[0], speed_kind, q[1], speed_kind}};
}

inline FourLevelParams four_level(real_t rabi_cb, real_t rabi_ba, real_t rabi_dc, real_t omega, real_t omega_s,
                                  real_t omega_ba, real_t omega_ca, real_t omega_dc, real_t gamma_c,
                                  real_t gamma_d) {
  FourLevelParams p;
  p.rabi_cb = rabi_cb;
  p.rabi_ba = rabi_ba;
  p.rabi_dc = rabi_dc;
  p.omega = omega;
  p.omega_s = omega_s;
  p.omega_ba = omega_ba;
  p.omega_ca = omega_ca;
  p.omega_dc = omega_dc;
  p.gamma_c = gamma_c;
  p.gamma_d = gamma_d;
  return p;
}

inline ThreeLevelParams three_level(real_t rabi, real_t rabi_s, real_t omega_da, real_t omega, real_t omega_dc,
                                    real_t omega_s, real_t gamma_c, real_t gamma_d) {
  ThreeLevelParams p;
  p.rabi = rabi;
  p.rabi_s = rabi_s;
  p.omega_da = omega_da;
  p.omega = omega;
  p.omega_dc = omega_dc;
  p.omega_s = omega_s;
  p.gamma_c = gamma_c;
  p.gamma_d = gamma_d;
  return p;
}

}  // namespace detail

inline std::vector<Preset> preset_catalog() {
  using detail::chi;
  using detail::hss_of;
  using detail::make_spec;
  using detail::qfi;
  using detail::speed_vs_chi;
  using detail::three_level;
  using detail::four_level;
  constexpr auto On = DampingMode::On;
  constexpr auto Off = DampingMode::Off;
  constexpr auto Max = FeatureKind::GlobalMaximum;
  constexpr auto Min = FeatureKind::GlobalMinimum;
  constexpr auto Pole = FeatureKind::PoleCrossing;

  std::vector<Preset> c;
  auto add = [&](Preset p) { c.push_back(std::move(p)); };

  // Four-level, speeds with respect to omega_s against |chi3|.
  const std::vector<Quantity> q2 = {qfi(Param::OmegaS), hss_of(Param::OmegaS), chi(QuantityKind::ChiAbs)};
  {
    Preset p{"fig2a", "Fig. 2(a)", "four-level, damped: F, HSS (omega_s) and |chi3| vs omega_dc", {},
             "omega_dc in [0.5, 1.5] around omega_s = 1", {}};
    p.spec = make_spec(p.name, four_level(1e-5, 1.1e-5, 10, 3, 1, 3.1, 6, 1, 1, 100), Param::OmegaDc, 0.5, 1.5,
                       q2, On);
    p.spec.coincidences = speed_vs_chi(q2, Max, Max);
    add(p);
  }
  {
    Preset p{"fig2b", "Fig. 2(b)", "four-level, damped: F, HSS (omega_s) and |chi3| vs omega",
             {"rabi_cb, rabi_ba, rabi_dc, omega_s, omega_ca, gamma_c, gamma_d from fig2a"},
             "omega in [2.5, 3.5] around omega_ba = 3 (delta1 = 0 is a masked pole)", {}};
    p.spec = make_spec(p.name, four_level(1e-5, 1.1e-5, 10, 3, 1, 3, 6, 1.001, 1, 100), Param::Omega, 2.5, 3.5,
                       q2, On);
    p.spec.coincidences = speed_vs_chi(q2, Max, Max);
    add(p);
  }
  {
    Preset p{"fig2c", "Fig. 2(c)", "four-level, damped: F, HSS (omega_s) and |chi3| vs Omega_dc",
             {"rabi_cb, rabi_ba, gamma_c, gamma_d from fig2a"}, "rabi_dc in [0, 30]", {}};
    p.spec = make_spec(p.name, four_level(1e-5, 1.1e-5, 10, 3, 1.0001, 3.01, 6, 1.001, 1, 100), Param::RabiDc,
                       0.0, 30.0, q2, On);
    p.spec.coincidences = speed_vs_chi(q2, Max, Max);
    add(p);
  }

  // Four-level, speeds with respect to omega against |chi3|.
  const std::vector<Quantity> q3 = {qfi(Param::Omega), hss_of(Param::Omega), chi(QuantityKind::ChiAbs)};
  {
    Preset p{"fig3a", "Fig. 3(a)", "four-level, damped: F, HSS (omega) and |chi3| vs omega_dc", {},
             "omega_dc in [13, 15] around omega_s = 14", {}};
    p.spec = make_spec(p.name, four_level(1, 1.4, 100, 26, 14, 26.01, 52, 14, 100, 60), Param::OmegaDc, 13, 15,
                       q3, On);
    p.spec.coincidences = speed_vs_chi(q3, Min, Max);
    add(p);
  }
  {
    Preset p{"fig3b", "Fig. 3(b)", "four-level, damped: F, HSS (omega) and |chi3| vs omega",
             {"rabi_cb, rabi_ba, rabi_dc, omega_s, omega_ca from fig3a"},
             "omega in [25, 27] around omega_ba = 26 (delta1 = 0 is a masked pole)", {}};
    p.spec = make_spec(p.name, four_level(1, 1.4, 100, 26, 14, 26, 52, 14.001, 1, 100), Param::Omega, 25, 27, q3,
                       On);
    p.spec.coincidences = speed_vs_chi(q3, Min, Max);
    add(p);
  }

  // Three-level, undamped, speeds with respect to omega_s against chi1.
  const std::vector<Quantity> q5 = {qfi(Param::OmegaS), hss_of(Param::OmegaS), chi(QuantityKind::ChiRe)};
  {
    Preset p{"fig5a", "Fig. 5(a)", "three-level, undamped: F, HSS (omega_s) and chi1 vs Omega_s", {},
             "rabi_s in [1, 20]; pole of chi1 at |Omega_s|^2 = delta (delta - Delta), Omega_s ~ 8.895", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 10, 20, 4.65, 1.8, 1.81, 0, 0), Param::RabiS, 1, 20, q5, Off);
    p.spec.coincidences = {{q5[0], Max, q5[2], Pole}, {q5[1], Max, q5[2], Pole}, {q5[0], Max, q5[1], Max}};
    add(p);
  }
  {
    Preset p{"fig5b", "Fig. 5(b)", "three-level, undamped: F, HSS (omega_s) and chi1 vs omega", {},
             "omega in [2, 16]; chi1 zero at omega = 9 (delta = Delta), poles near 3.9975 and 13.9975", {}};
    p.spec = make_spec(p.name, three_level(1e-3, 10, 20, 9, 2, 2.01, 0, 0), Param::Omega, 2, 16, q5, Off);
    add(p);
  }
  {
    Preset p{"fig5c", "Fig. 5(c)", "three-level, undamped: F, HSS (omega_s) and chi1 vs omega", {},
             "omega in [4, 24]; chi1 zero at omega = 13.995", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 100, 30, 14, 2.01, 2, 0, 0), Param::Omega, 4, 24, q5, Off);
    add(p);
  }

  // Three-level, damped, speeds with respect to omega_s against Im chi1.
  const std::vector<Quantity> q6 = {qfi(Param::OmegaS), hss_of(Param::OmegaS), chi(QuantityKind::ChiIm)};
  {
    Preset p{"fig6a", "Fig. 6(a)", "three-level, damped: F, HSS (omega_s) and Im chi1 vs Omega_s", {},
             "rabi_s in [1, 20]", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 10, 20, 4.65, 1.8, 1.81, 0.01, 100), Param::RabiS, 1, 20, q6, On);
    p.spec.coincidences = speed_vs_chi(q6, Max, Max);
    add(p);
  }
  {
    Preset p{"fig6b", "Fig. 6(b)", "three-level, damped: F, HSS (omega_s) and Im chi1 vs Omega_s",
             {"rabi, omega_da, omega_dc, omega_s, gamma_c, gamma_d from fig6a"}, "rabi_s in [1, 20]", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 10, 20, 9, 1.8, 1.81, 0.01, 100), Param::RabiS, 1, 20, q6, On);
    p.spec.coincidences = speed_vs_chi(q6, Min, Min);
    add(p);
  }
  {
    Preset p{"fig6c", "Fig. 6(c)", "three-level, damped: F, HSS (omega_s) and Im chi1 vs omega",
             {"rabi, omega_da, gamma_d from fig6b"}, "omega in [6, 10]; delta = 0 at omega = 7.9995", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 10, 20, 8, 4, 4.001, 0.001, 100), Param::Omega, 6, 10, q6, On);
    p.spec.coincidences = speed_vs_chi(q6, Min, Min);
    add(p);
  }
  {
    Preset p{"fig6d", "Fig. 6(d)", "three-level, damped: F, HSS (omega_s) and Im chi1 vs omega_dc",
             {"rabi, omega_da, gamma_d from fig6c"}, "omega_dc in [3, 5] around omega_s = 4", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 10, 20, 8, 4, 4, 0.001, 100), Param::OmegaDc, 3, 5, q6, On);
    p.spec.coincidences = speed_vs_chi(q6, Min, Min);
    add(p);
  }

  // Three-level, undamped, speeds with respect to omega against chi1.
  const std::vector<Quantity> q6p = {qfi(Param::Omega), hss_of(Param::Omega), chi(QuantityKind::ChiRe)};
  {
    Preset p{"fig6pa", "Fig. 6'(a)", "three-level, undamped: F, HSS (omega) and chi1 vs Omega_s", {},
             "rabi_s in [1, 20]; pole of chi1 near Omega_s = 8.895", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 10, 20, 4.65, 1.8, 1.81, 0, 0), Param::RabiS, 1, 20, q6p, Off);
    p.spec.coincidences = {{q6p[0], Max, q6p[2], Pole}, {q6p[1], Max, q6p[2], Pole}, {q6p[0], Max, q6p[1], Max}};
    add(p);
  }
  {
    Preset p{"fig6pb", "Fig. 6'(b)", "three-level, undamped: F, HSS (omega) and chi1 vs omega", {},
             "omega in [2, 16]; chi1 zero at omega = 9", {}};
    p.spec = make_spec(p.name, three_level(1e-3, 10, 20, 9, 2, 2.01, 0, 0), Param::Omega, 2, 16, q6p, Off);
    add(p);
  }
  {
    Preset p{"fig6pc", "Fig. 6'(c)", "three-level, undamped: F, HSS (omega) and chi1 vs omega", {},
             "omega in [40, 160]; chi1 zero at omega = 100, poles near 50 and 150", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 100, 210, 100, 10, 10.01, 0, 0), Param::Omega, 40, 160, q6p, Off);
    add(p);
  }

  // Three-level, damped, speeds with respect to omega against Im chi1.
  const std::vector<Quantity> q7 = {qfi(Param::Omega), hss_of(Param::Omega), chi(QuantityKind::ChiIm)};
  {
    Preset p{"fig7a", "Fig. 7(a)", "three-level, damped: F, HSS (omega) and Im chi1 vs omega", {},
             "omega in [6, 10]; delta = 0 at omega = 7.9995", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 10, 20, 8, 4, 4.001, 100, 0.001), Param::Omega, 6, 10, q7, On);
    p.spec.coincidences = speed_vs_chi(q7, Max, Max);
    add(p);
  }
  {
    Preset p{"fig7b", "Fig. 7(b)", "three-level, damped: F, HSS (omega) and Im chi1 vs omega",
             {"rabi, omega_dc, omega_s from fig7a"}, "omega in [5, 9]; delta = 0 at omega = 6.9995", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 1000, 18, 7, 4, 4.001, 100, 1), Param::Omega, 5, 9, q7, On);
    p.spec.coincidences = speed_vs_chi(q7, Max, Max);
    add(p);
  }
  {
    Preset p{"fig7c", "Fig. 7(c)", "three-level, damped: F, HSS (omega) and Im chi1 vs omega_dc",
             {"rabi, rabi_s = 1000 from fig7b",
              "omega_da = 20 from fig7a (fig7b's 18 would give delta = 2; the panel is the delta = 0 case)"},
             "omega_dc in [3, 5] around omega_s = 4", {}};
    p.spec = make_spec(p.name, three_level(1e-5, 1000, 20, 8, 4, 4, 0.02, 0.01), Param::OmegaDc, 3, 5, q7, On);
    p.spec.coincidences = speed_vs_chi(q7, Min, Min);
    add(p);
  }
  return c;
}

inline std::optional<Preset> find_preset(std::string_view name) {
  for (auto& p : preset_catalog()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace eitm
