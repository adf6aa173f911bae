#pragma once

// Text formats: the flat key=value scan configuration, the CSV dialect
// written for every scan, and the plain-text feature/coincidence reports.
//
// CSV layout:
//   # key: value            metadata (name, model, parameters, maxima, masks)
//   omega_dc,qfi_omegas,... column names: swept parameter, raw curves, *_norm
//   0.5,1.2e-23,...         one row per grid point; masked cells are empty

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "eitm/presets.hpp"
#include "eitm/scan.hpp"

namespace eitm {

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// number formatting

/// precision 0: shortest representation that round-trips exactly.
inline std::string format_real(real_t v, int precision = 0) {
  char buf[64];
  const auto r = precision > 0 ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision)
                               : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string format_complex(complex_t v) {
  if (v.imag() == 0.0) return format_real(v.real());
  return "(" + format_real(v.real()) + "," + format_real(v.imag()) + ")";
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::optional<real_t> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  real_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// "x" or "(x,y)".
inline std::optional<complex_t> parse_complex(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    const std::string_view inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
      auto re = parse_real(inner);
      return re ? std::optional<complex_t>(complex_t(*re, 0)) : std::nullopt;
    }
    auto re = parse_real(inner.substr(0, comma));
    auto im = parse_real(inner.substr(comma + 1));
    if (!re || !im) return std::nullopt;
    return complex_t(*re, *im);
  }
  auto re = parse_real(s);
  return re ? std::optional<complex_t>(complex_t(*re, 0)) : std::nullopt;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// key=value scan configuration

inline std::string quantity_list(const std::vector<Quantity>& qs) {
  std::string s;
  for (std::size_t i = 0; i < qs.size(); ++i) s += (i ? "," : "") + quantity_token(qs[i]);
  return s;
}

inline std::optional<std::vector<Quantity>> parse_quantity_list(std::string_view s) {
  std::vector<Quantity> out;
  for (const auto& tok : split(s, ',')) {
    auto q = parse_quantity(tok);
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

inline std::string coincidence_token(const CoincidenceRequest& r) {
  return quantity_token(r.a) + ":" + std::string(to_string(r.kind_a)) + "~" + quantity_token(r.b) + ":" +
         std::string(to_string(r.kind_b));
}

inline std::optional<CoincidenceRequest> parse_coincidence(std::string_view s) {
  const auto tilde = s.find('~');
  if (tilde == std::string_view::npos) return std::nullopt;
  auto side = [](std::string_view t) -> std::optional<std::pair<Quantity, FeatureKind>> {
    t = trim(t);
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto q = parse_quantity(trim(t.substr(0, colon)));
    auto k = feature_kind_from_string(trim(t.substr(colon + 1)));
    if (!q || !k) return std::nullopt;
    return std::pair{*q, *k};
  };
  auto a = side(s.substr(0, tilde));
  auto b = side(s.substr(tilde + 1));
  if (!a || !b) return std::nullopt;
  return CoincidenceRequest{a->first, a->second, b->first, b->second};
}

/// Serialize every field of a scan spec; parse_config(to_config(s)) == s.
inline std::string to_config(const ScanSpec& s) {
  std::ostringstream o;
  o << "name = " << s.name << "\n";
  o << "model = " << to_string(s.model()) << "\n";
  o << "swept = " << param_name(s.swept) << "\n";
  o << "min = " << format_real(s.min) << "\n";
  o << "max = " << format_real(s.max) << "\n";
  o << "points = " << s.points << "\n";
  o << "quantities = " << quantity_list(s.quantities) << "\n";
  o << "damping = " << to_string(s.damping) << "\n";
  o << "eval_time = " << format_real(s.eval_time) << "\n";
  o << "pole_threshold = " << format_real(s.pole_threshold) << "\n";
  o << "diff_method = " << (s.diff.method == DiffMethod::CentralDifference ? "central" : "richardson") << "\n";
  o << "step_rel = " << format_real(s.diff.step_rel) << "\n";
  o << "step_floor = " << format_real(s.diff.step_floor) << "\n";
  o << "richardson_levels = " << s.diff.richardson_levels << "\n";
  o << "power_of_two_step = " << (s.diff.power_of_two_step ? "true" : "false") << "\n";
  o << "level_tolerance = " << format_real(s.diff.level_tolerance) << "\n";
  o << "tol_cells = " << s.tol_cells << "\n";
  o << "blowup_ratio = " << format_real(s.features.blowup_ratio) << "\n";
  o << "threads = " << s.threads << "\n";
  for (const auto& r : s.coincidences) o << "coincide = " << coincidence_token(r) << "\n";
  const auto& k = s.constants;
  o << "number_density = " << format_real(k.number_density) << "\n";
  o << "mu_ad = " << format_complex(k.mu_ad) << "\n";
  o << "mu_dc = " << format_complex(k.mu_dc) << "\n";
  o << "mu_cb = " << format_complex(k.mu_cb) << "\n";
  o << "mu_ba = " << format_complex(k.mu_ba) << "\n";
  o << "mu_da = " << format_complex(k.mu_da) << "\n";
  o << "epsilon0 = " << format_real(k.epsilon0) << "\n";
  o << "hbar = " << format_real(k.hbar) << "\n";
  o << "c = " << format_real(k.c) << "\n";
  if (const auto* p = std::get_if<FourLevelParams>(&s.base)) {
    o << "omega_ba = " << format_real(p->omega_ba) << "\n";
    o << "omega_ca = " << format_real(p->omega_ca) << "\n";
    o << "omega_dc = " << format_real(p->omega_dc) << "\n";
    o << "omega = " << format_real(p->omega) << "\n";
    o << "omega_s = " << format_real(p->omega_s) << "\n";
    o << "rabi_ba = " << format_complex(p->rabi_ba) << "\n";
    o << "rabi_cb = " << format_complex(p->rabi_cb) << "\n";
    o << "rabi_dc = " << format_complex(p->rabi_dc) << "\n";
    o << "gamma_c = " << format_real(p->gamma_c) << "\n";
    o << "gamma_d = " << format_real(p->gamma_d) << "\n";
  } else {
    const auto& q = std::get<ThreeLevelParams>(s.base);
    o << "omega_da = " << format_real(q.omega_da) << "\n";
    o << "omega_dc = " << format_real(q.omega_dc) << "\n";
    o << "omega = " << format_real(q.omega) << "\n";
    o << "omega_s = " << format_real(q.omega_s) << "\n";
    o << "rabi = " << format_complex(q.rabi) << "\n";
    o << "rabi_s = " << format_complex(q.rabi_s) << "\n";
    o << "gamma_c = " << format_real(q.gamma_c) << "\n";
    o << "gamma_d = " << format_real(q.gamma_d) << "\n";
  }
  return o.str();
}

namespace detail {

inline bool set_model_param(ModelParams& base, std::string_view key, std::string_view value) {
  auto param = param_from_name(key);
  if (!param) return false;
  const auto v = parse_complex(value);
  if (!v) throw InvalidConfig("bad value for " + std::string(key) + ": " + std::string(value));
  return std::visit(
      [&](auto& p) {
        if (!has_param(p, *param)) return false;
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FourLevelParams>) {
          if (*param == Param::RabiBa) return (p.rabi_ba = *v, true);
          if (*param == Param::RabiCb) return (p.rabi_cb = *v, true);
          if (*param == Param::RabiDc) return (p.rabi_dc = *v, true);
        } else {
          if (*param == Param::Rabi) return (p.rabi = *v, true);
          if (*param == Param::RabiS) return (p.rabi_s = *v, true);
        }
        if (v->imag() != 0.0) throw InvalidConfig(std::string(key) + " must be real");
        set_param(p, *param, v->real());
        return true;
      },
      base);
}

}  // namespace detail

/// Apply key=value lines on top of `s`. '#' starts a comment. Unknown keys
/// and malformed values raise InvalidConfig.
inline ScanSpec apply_config(ScanSpec s, std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::vector<std::pair<std::string, std::string>> ordered;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
    ordered.emplace_back(std::string(trim(l.substr(0, eq))), std::string(trim(l.substr(eq + 1))));
  }

  // The model must be known before parameters are applied.
  for (const auto& [k, v] : ordered) {
    if (k != "model") continue;
    if (v == "four-level" && s.model() != ModelKind::FourLevel) s.base = FourLevelParams{};
    else if (v == "three-level" && s.model() != ModelKind::ThreeLevel) s.base = ThreeLevelParams{};
    else if (v != "four-level" && v != "three-level") throw InvalidConfig("unknown model: " + v);
  }

  bool coincidences_reset = false;
  for (const auto& [k, v] : ordered) {
    auto real = [&, &k = k, &v = v] {
      auto r = parse_real(v);
      if (!r) throw InvalidConfig("bad number for " + k + ": " + v);
      return *r;
    };
    auto integer = [&] {
      const real_t r = real();
      if (r < 0 || r != std::floor(r)) throw InvalidConfig("expected a non-negative integer for " + k);
      return static_cast<long long>(r);
    };
    auto boolean = [&, &k = k, &v = v] {
      if (v == "true" || v == "on" || v == "1") return true;
      if (v == "false" || v == "off" || v == "0") return false;
      throw InvalidConfig("bad boolean for " + k + ": " + v);
    };
    if (k == "model") continue;
    if (k == "name") s.name = v;
    else if (k == "swept") {
      auto p = param_from_name(v);
      if (!p) throw InvalidConfig("unknown swept parameter: " + v);
      s.swept = *p;
    } else if (k == "min") s.min = real();
    else if (k == "max") s.max = real();
    else if (k == "points") s.points = static_cast<std::size_t>(integer());
    else if (k == "quantities") {
      auto qs = parse_quantity_list(v);
      if (!qs) throw InvalidConfig("bad quantity list: " + v);
      s.quantities = *qs;
    } else if (k == "damping") s.damping = boolean() ? DampingMode::On : DampingMode::Off;
    else if (k == "eval_time") s.eval_time = real();
    else if (k == "pole_threshold") s.pole_threshold = real();
    else if (k == "diff_method") {
      if (v == "central") s.diff.method = DiffMethod::CentralDifference;
      else if (v == "richardson") s.diff.method = DiffMethod::RichardsonExtrapolated;
      else throw InvalidConfig("diff_method must be central or richardson");
    } else if (k == "step_rel") s.diff.step_rel = real();
    else if (k == "step_floor") s.diff.step_floor = real();
    else if (k == "richardson_levels") s.diff.richardson_levels = static_cast<int>(integer());
    else if (k == "power_of_two_step") s.diff.power_of_two_step = boolean();
    else if (k == "level_tolerance") s.diff.level_tolerance = real();
    else if (k == "tol_cells") s.tol_cells = static_cast<int>(integer());
    else if (k == "blowup_ratio") s.features.blowup_ratio = real();
    else if (k == "threads") s.threads = static_cast<unsigned>(integer());
    else if (k == "coincide") {
      if (!coincidences_reset) {
        s.coincidences.clear();
        coincidences_reset = true;
      }
      auto r = parse_coincidence(v);
      if (!r) throw InvalidConfig("bad coincidence request: " + v);
      s.coincidences.push_back(*r);
    } else if (k == "number_density") s.constants.number_density = real();
    else if (k == "epsilon0") s.constants.epsilon0 = real();
    else if (k == "hbar") s.constants.hbar = real();
    else if (k == "c") s.constants.c = real();
    else if (k.rfind("mu_", 0) == 0) {
      auto z = parse_complex(v);
      if (!z) throw InvalidConfig("bad value for " + k);
      if (k == "mu_ad") s.constants.mu_ad = *z;
      else if (k == "mu_dc") s.constants.mu_dc = *z;
      else if (k == "mu_cb") s.constants.mu_cb = *z;
      else if (k == "mu_ba") s.constants.mu_ba = *z;
      else if (k == "mu_da") s.constants.mu_da = *z;
      else throw InvalidConfig("unknown key: " + k);
    } else if (!detail::set_model_param(s.base, k, v)) {
      throw InvalidConfig("unknown key for the " + std::string(to_string(s.model())) + " model: " + k);
    }
  }
  return s;
}

inline ScanSpec parse_config(std::string_view text) { return apply_config(ScanSpec{}, text); }

// ---------------------------------------------------------------------------
// CSV

struct CsvOptions {
  int precision = 0;  // significant digits; 0 = shortest exact representation
  const Preset* preset = nullptr;
};

inline std::string write_csv(const ScanResult& r, const CsvOptions& opt = {}) {
  const ScanSpec& s = r.spec;
  std::ostringstream o;
  o << "# eitm scan\n";
  o << "# name: " << s.name << "\n";
  if (opt.preset) {
    o << "# preset: " << opt.preset->name << "\n";
    o << "# figure: " << opt.preset->figure << "\n";
    for (const auto& note : opt.preset->inherited) o << "# inherited: " << note << "\n";
    o << "# range: " << opt.preset->range_note << "\n";
  }
  o << "# model: " << to_string(s.model()) << "\n";
  o << "# damping: " << to_string(s.damping) << "\n";
  o << "# swept: " << param_name(s.swept) << "\n";
  o << "# grid: " << format_real(s.min) << ":" << format_real(s.max) << ":" << s.points << " linear\n";
  o << "# eval_time: " << format_real(s.eval_time) << "\n";
  o << "# normalization: max |curve| over the scan window\n";
  // Parameter block, in config syntax.
  std::istringstream cfg(to_config(s));
  std::string line;
  while (std::getline(cfg, line)) {
    const auto key = line.substr(0, line.find(' '));
    if (param_from_name(key)) o << "# param " << line << "\n";
  }
  for (const auto& c : r.curves) o << "# norm_max " << c.column << " = " << format_real(c.norm_max) << "\n";
  for (const auto& c : r.curves) {
    o << "# masked " << c.column << " =";
    if (c.masked.empty()) o << " none";
    for (auto k : c.masked) o << " " << k;
    o << "\n";
  }

  o << param_name(s.swept);
  for (const auto& c : r.curves) o << "," << c.column;
  for (const auto& c : r.curves) o << "," << c.column << "_norm";
  o << "\n";
  auto cell = [&](real_t v) { return std::isnan(v) ? std::string() : format_real(v, opt.precision); };
  for (std::size_t k = 0; k < r.grid.size(); ++k) {
    o << format_real(r.grid[k], opt.precision);
    for (const auto& c : r.curves) o << "," << cell(c.raw[k]);
    for (const auto& c : r.curves) o << "," << cell(c.normalized[k]);
    o << "\n";
  }
  return o.str();
}

struct CsvTable {
  std::vector<std::string> metadata;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<real_t>>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw InvalidConfig("no column " + std::string(name));
  }
};

inline CsvTable read_csv(std::string_view text) {
  CsvTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.metadata.emplace_back(trim(std::string_view(line).substr(1)));
      continue;
    }
    auto cells = split(line, ',');
    if (t.columns.empty()) {
      t.columns = std::move(cells);
      continue;
    }
    if (cells.size() != t.columns.size()) throw InvalidConfig("ragged CSV row");
    std::vector<std::optional<real_t>> row;
    for (const auto& c : cells) {
      if (c.empty()) {
        row.emplace_back();
        continue;
      }
      auto v = parse_real(c);
      if (!v) throw InvalidConfig("bad CSV cell: " + c);
      row.emplace_back(*v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// reports

inline std::string write_features(const ScanResult& r) {
  std::ostringstream o;
  o << "# features of " << r.spec.name << " (swept " << param_name(r.spec.swept) << ", " << r.grid.size()
    << " points)\n";
  auto line = [&](const Feature& f) {
    o << "  " << to_string(f.kind) << " index=" << f.index << " grid=" << format_real(r.grid[f.index])
      << " location=" << format_real(f.location) << "\n";
  };
  for (const auto& c : r.curves) {
    o << "[" << c.column << "]\n";
    if (c.features.global_max) line(*c.features.global_max);
    if (c.features.global_min) line(*c.features.global_min);
    for (const auto& f : c.features.maxima) line(f);
    for (const auto& f : c.features.minima) line(f);
    for (const auto& f : c.features.zero_crossings) line(f);
    for (const auto& f : c.features.pole_crossings) line(f);
  }
  return o.str();
}

inline std::string write_coincidences(const ScanResult& r) {
  std::ostringstream o;
  o << "# coincidences of " << r.spec.name << " (tolerance " << r.spec.tol_cells << " grid cells)\n";
  for (const auto& c : r.coincidences) {
    o << c.label << " : " << (c.report.aligned() ? "aligned" : "not-aligned") << "\n";
    for (const auto& p : c.report.pairs) {
      o << "  " << format_real(r.grid[p.a.index]) << " <-> " << format_real(r.grid[p.b.index])
        << " distance=" << p.distance << (p.aligned ? " aligned" : " not-aligned") << "\n";
    }
    if (c.report.unmatched_a || c.report.unmatched_b) {
      o << "  unmatched " << c.report.unmatched_a << " / " << c.report.unmatched_b << "\n";
    }
  }
  return o.str();
}

/// Cramer-Rao bounds at the QFI maxima, one line per QFI curve.
inline std::string write_bounds(const ScanResult& r) {
  std::ostringstream o;
  for (const auto& c : r.curves) {
    if (c.quantity.kind != QuantityKind::Qfi || c.norm_max <= 0) continue;
    o << "# cramer_rao " << c.column << " = " << format_real(cramer_rao_bound(c.norm_max)) << "\n";
  }
  return o.str();
}

}  // namespace eitm
