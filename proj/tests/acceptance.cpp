// Acceptance suite: one PASS/FAIL line per figure-level or identity
// criterion. Exit status is the number of failures (0 = all pass).

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "eitm/eitm.hpp"
#include "oracles.hpp"

using namespace eitm;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream time;
  time.precision(3);
  time << dt << " s";
  if (budget_s > 0) {
    time << " of " << budget_s << " s";
    if (dt > budget_s) {
      v.pass = false;
      v.detail += "; over time budget";
    }
  }
  std::printf("%s  %-28s %s [%s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), time.str().c_str());
  std::fflush(stdout);
  failures += v.pass ? 0 : 1;
}

std::string fmt(double v) { return format_real(v, 4); }

ScanSpec preset(std::string_view name) { return find_preset(name)->spec; }

std::size_t cells(const ScanResult& r, std::size_t index, double x) {
  return static_cast<std::size_t>(std::llround(std::abs(r.grid[index] - x) / (r.grid[1] - r.grid[0])));
}

std::size_t argmax_of(const std::vector<real_t>& v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[k]) k = i;
  return k;
}

std::size_t argmin_of(const std::vector<real_t>& v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[k]) k = i;
  return k;
}

// Random parameter sets kept away from every resonance denominator.
FourLevelParams random_four(std::mt19937_64& rng, DampingMode mode) {
  std::uniform_real_distribution<double> u(-2, 2), pos(0.1, 3), ph(0, 2 * M_PI);
  while (true) {
    FourLevelParams p;
    p.omega = 3 + u(rng);
    p.omega_s = 1 + u(rng);
    p.omega_ba = p.omega + u(rng);
    p.omega_ca = 2 * p.omega + u(rng);
    p.omega_dc = p.omega_s + u(rng);
    p.rabi_ba = std::polar(pos(rng), ph(rng));
    p.rabi_cb = std::polar(pos(rng), ph(rng));
    p.rabi_dc = std::polar(pos(rng), ph(rng));
    p.gamma_c = pos(rng);
    p.gamma_d = pos(rng);
    const auto d = detunings(p, mode);
    if (std::abs(d.one_photon) > 0.05 && std::abs(d.two_photon) > 0.05 &&
        std::abs(four_level_denominator(d, p.rabi_dc)) > 0.05)
      return p;
  }
}

ThreeLevelParams random_three(std::mt19937_64& rng, DampingMode mode) {
  std::uniform_real_distribution<double> u(-2, 2), pos(0.1, 3), ph(0, 2 * M_PI);
  while (true) {
    ThreeLevelParams p;
    p.omega = 5 + u(rng);
    p.omega_s = 2 + u(rng);
    p.omega_da = 2 * p.omega + p.omega_s + u(rng);
    p.omega_dc = p.omega_s + u(rng);
    p.rabi = std::polar(pos(rng), ph(rng));
    p.rabi_s = std::polar(pos(rng) + 0.4, ph(rng));
    p.gamma_c = pos(rng);
    p.gamma_d = pos(rng);
    if (std::abs(three_level_denominator(detunings(p, mode), p.rabi_s)) > 0.05) return p;
  }
}

// The state family the scan engine differentiates.
const WideNormalizedState kState{DampingMode::On, 10.0};

template <class Vec>
std::vector<oracle::cd> to_std(const Vec& v) {
  std::vector<oracle::cd> out;
  for (Eigen::Index k = 0; k < v.size(); ++k) out.emplace_back(static_cast<double>(v[k].real()), static_cast<double>(v[k].imag()));
  return out;
}

}  // namespace

int main() {
  std::printf("eitm acceptance suite\n");

  criterion("pure-state identity", 10.0, [] {
    std::mt19937_64 rng(2024);
    double worst = 0;
    int evaluated = 0;
    for (auto mode : {DampingMode::Off, DampingMode::On}) {
      const WideNormalizedState state{mode, 10.0};
      for (int i = 0; i < 200; ++i) {
        const auto p4 = random_four(rng, mode);
        const auto p3 = random_three(rng, mode);
        for (Param sel : {Param::Omega, Param::OmegaS}) {
          for (int m = 0; m < 2; ++m) {
            const double f = m == 0 ? qfi_pure(state, sel, p4, DiffConfig{}) : qfi_pure(state, sel, p3, DiffConfig{});
            const double h = m == 0 ? hss(state, sel, p4, DiffConfig{}) : hss(state, sel, p3, DiffConfig{});
            worst = std::max(worst, std::abs(f - 4 * h * h) / f);
            ++evaluated;
          }
        }
      }
    }
    return Verdict{worst < 1e-6, std::to_string(evaluated) + " cases, max rel err " + fmt(worst) + " (tol 1e-6)"};
  });

  criterion("derivative oracle", 5.0, [] {
    std::mt19937_64 rng(7);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const bool four = i % 2 == 0;
      const Param sel = (i / 2) % 2 == 0 ? Param::Omega : Param::OmegaS;
      const double t = 10.0;
      std::vector<oracle::cd> lib;
      std::function<std::vector<oracle::cd>(double)> ref_state;
      double eta;
      auto normalized = [](std::vector<oracle::cd> v) {
        const double n = oracle::norm(v);
        for (auto& z : v) z /= n;
        return v;
      };
      if (four) {
        const auto p = random_four(rng, DampingMode::On);
        const auto d = state_derivative(kState, sel, p, DiffConfig{});
        lib = to_std(d);
        eta = get_param(p, sel);
        ref_state = [p, sel, t, &normalized](double x) {
          const double w = sel == Param::Omega ? x : p.omega;
          const double ws = sel == Param::OmegaS ? x : p.omega_s;
          auto a = oracle::four_level(w, ws, p.omega_ba, p.omega_ca, p.omega_dc, p.rabi_ba, p.rabi_cb, p.rabi_dc,
                                      p.gamma_c, p.gamma_d);
          return normalized({a[0], a[1] * std::polar(1.0, -w * t), a[2] * std::polar(1.0, -2 * w * t),
                             a[3] * std::polar(1.0, -(2 * w + ws) * t)});
        };
      } else {
        const auto p = random_three(rng, DampingMode::On);
        const auto d = state_derivative(kState, sel, p, DiffConfig{});
        lib = to_std(d);
        eta = get_param(p, sel);
        ref_state = [p, sel, t, &normalized](double x) {
          const double w = sel == Param::Omega ? x : p.omega;
          const double ws = sel == Param::OmegaS ? x : p.omega_s;
          auto a = oracle::three_level(w, ws, p.omega_da, p.omega_dc, p.rabi, p.rabi_s, p.gamma_c, p.gamma_d);
          const double w4 = 2 * w + ws;
          return normalized({a[0], a[1] * std::polar(1.0, -w4 * t), a[2] * std::polar(1.0, -(w4 - ws) * t)});
        };
      }
      const double h = 1e-6 * std::max(1.0, std::abs(eta)) / 10;
      worst = std::max(worst, oracle::rel_diff(lib, oracle::central_difference(ref_state, eta, h)));
    }
    return Verdict{worst < 1e-6, "100 points, max rel err " + fmt(worst) + " (tol 1e-6)"};
  });

  criterion("fig2a resonance peaks", 2.0, [] {
    const auto r = run_scan(preset("fig2a"));
    std::string detail = "argmax at omega_dc =";
    bool ok = true;
    for (const auto& c : r.curves) {
      const auto k = argmax_of(c.normalized);
      ok = ok && cells(r, k, 1.0) <= 2;
      detail += " " + fmt(r.grid[k]) + " (" + c.column + ")";
    }
    return Verdict{ok, detail + ", target 1 +- 2 cells"};
  });

  criterion("fig3a minimum vs |chi3| peak", 0, [] {
    const auto r = run_scan(preset("fig3a"));
    bool ok = true;
    std::string detail;
    for (const auto& c : r.coincidences) {
      if (c.request.b.kind != QuantityKind::ChiAbs) continue;
      ok = ok && c.report.aligned();
      detail += c.label + " d=" + std::to_string(c.report.pairs.empty() ? -1 : int(c.report.pairs[0].distance)) + "; ";
    }
    const auto& chi = r.curve({QuantityKind::ChiAbs});
    detail += "argmax |chi3| at " + fmt(r.grid[chi.features.global_max->index]);
    return Verdict{ok, detail};
  });

  criterion("EIT zero, not pole", 0, [] {
    // Exactly representable two-photon resonance: omega4 = 20 = omega_da,
    // Delta = 0 at omega = 9.
    ThreeLevelParams p;
    p.rabi = 1e-3;
    p.rabi_s = 10;
    p.omega_da = 20;
    p.omega = 9;
    p.omega_s = 2;
    p.omega_dc = 2;
    const bool exact = chi1(p, PhysicalConstants{}, DampingMode::Off).value == complex_t(0.0);

    bool scans_ok = true;
    std::string detail = std::string("chi1(delta=Delta) ") + (exact ? "== 0" : "!= 0");
    for (int variant = 0; variant < 2; ++variant) {
      ScanSpec s = preset("fig5b");
      if (variant == 1) {
        s.base = p;
        s.points = 141;  // grid contains omega = 9 exactly
      }
      const auto r = run_scan(s);
      const auto& chi = r.curve({QuantityKind::ChiRe});
      const auto& b = std::get<ThreeLevelParams>(s.base);
      const double target = (b.omega_da - b.omega_s + (b.omega_s - b.omega_dc)) / 2.0;  // delta = Delta
      bool zero_found = false, pole_here = false;
      for (const auto& f : chi.features.zero_crossings) zero_found = zero_found || cells(r, f.index, target) <= 2;
      for (const auto& f : chi.features.pole_crossings) pole_here = pole_here || cells(r, f.index, target) <= 2;
      scans_ok = scans_ok && zero_found && !pole_here;
      detail += "; " + std::string(variant ? "exact grid" : "fig5b") + ": zero at " + fmt(target) +
                (zero_found ? " found" : " missing") + (pole_here ? ", POLE reported" : ", no pole");
    }
    return Verdict{exact && scans_ok, detail};
  });

  criterion("fig5a single pole crossing", 0, [] {
    const auto r = run_scan(preset("fig5a"));
    const auto& chi = r.curve({QuantityKind::ChiRe});
    const double delta = 2 * 4.65 + 1.81 - 20, Delta = 1.81 - 1.8;
    const double pole = std::sqrt(delta * (delta - Delta));
    const auto& poles = chi.features.pole_crossings;
    const bool ok = poles.size() == 1 && chi.features.zero_crossings.empty() && cells(r, poles[0].index, pole) <= 2;
    return Verdict{ok, std::to_string(poles.size()) + " pole(s)" +
                           (poles.empty() ? "" : " at " + fmt(poles[0].location)) + ", closed form " + fmt(pole) +
                           ", zeros " + std::to_string(chi.features.zero_crossings.size())};
  });

  criterion("fig7c absorption minimum", 0, [] {
    const auto r = run_scan(preset("fig7c"));
    const auto& chi = r.curve({QuantityKind::ChiIm});
    const auto& h = r.curve({QuantityKind::Hss, Param::Omega});
    const auto kc = argmin_of(chi.raw), kh = argmin_of(h.raw);
    const bool ok = cells(r, kc, 4.0) <= 2 && cells(r, kh, 4.0) <= 2;
    return Verdict{ok, "argmin Im chi1 at " + fmt(r.grid[kc]) + ", HSS_omega at " + fmt(r.grid[kh]) + ", target 4"};
  });

  criterion("invariances", 0, [] {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ph(0, 2 * M_PI);
    double phase_err = 0, reparam_err = 0, chi_err = 0;
    for (int i = 0; i < 50; ++i) {
      const auto p = random_four(rng, DampingMode::On);
      const std::complex<wide_real_t> phase = std::polar<wide_real_t>(1, ph(rng));
      auto rotated = [&](const FourLevelParams& q) -> WideStateVector { return phase * kState(q); };
      const double f = qfi_pure(kState, Param::OmegaS, p, DiffConfig{});
      const double h = hss(kState, Param::OmegaS, p, DiffConfig{});
      phase_err = std::max(phase_err, std::abs(qfi_pure(rotated, Param::OmegaS, p, DiffConfig{}) - f) / f);
      phase_err = std::max(phase_err, std::abs(hss(rotated, Param::OmegaS, p, DiffConfig{}) - h) / h);

      auto doubled = [&](real_t eta) { return kState(with_param(p, Param::OmegaS, 2 * eta)); };
      reparam_err = std::max(reparam_err, std::abs(qfi_pure(doubled, p.omega_s / 2, DiffConfig{}) - 4 * f) / (4 * f));
      reparam_err = std::max(reparam_err, std::abs(hss(doubled, p.omega_s / 2, DiffConfig{}) - 2 * h) / (2 * h));

      auto q = p;
      q.rabi_dc *= std::polar(1.0, ph(rng));
      const auto a = chi3(p, PhysicalConstants{}, DampingMode::On).value;
      const auto b = chi3(q, PhysicalConstants{}, DampingMode::On).value;
      chi_err = std::max(chi_err, std::abs(a - b) / std::abs(a));
    }
    const bool ok = phase_err <= 1e-10 && reparam_err <= 1e-6 && chi_err <= 1e-12;
    return Verdict{ok, "phase " + fmt(phase_err) + " (1e-10), reparam " + fmt(reparam_err) + " (1e-6), chi3 phase " +
                           fmt(chi_err) + " (1e-12)"};
  });

  criterion("step-size robustness", 0, [] {
    std::vector<std::size_t> ref;
    bool ok = true;
    std::string detail = "argmax indices";
    for (double h : {1e-8, 1e-7, 1e-6, 1e-5, 1e-4}) {
      ScanSpec s = preset("fig2a");
      s.diff.step_rel = h;
      const auto r = run_scan(s);
      std::vector<std::size_t> idx;
      for (const auto& c : r.curves) {
        if (!c.quantity.is_speed()) continue;
        idx.push_back(argmax_of(c.raw));
      }
      if (ref.empty()) ref = idx;
      ok = ok && idx == ref;
      detail += " h=" + fmt(h) + ":" + std::to_string(idx[0]) + "/" + std::to_string(idx[1]);
    }
    return Verdict{ok, detail};
  });

  std::printf("%d failure(s)\n", failures);
  return failures;
}
