#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process; tools/eitm.cpp only forwards argv.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eitm/eitm.hpp"

namespace eitm::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInvalidConfig = 2, kAllPoles = 3, kIoFailure = 4 };

class IoFailure : public Error {
 public:
  using Error::Error;
};

struct RunOptions {
  std::string preset;
  std::string config_file;
  std::string out_dir;
  std::optional<std::size_t> points;
  std::string range;
  std::string damping;
  std::string quantities;
  std::optional<int> tol_cells;
  std::optional<real_t> eval_time;
  std::optional<real_t> step_rel;
  std::optional<unsigned> threads;
  std::string name;
  int precision = 0;
  bool no_features = false;
  bool no_coincidence = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Resolve preset/config plus overrides into a validated scan spec.
inline ScanSpec build_spec(const RunOptions& o, const Preset** preset_out) {
  static const std::vector<Preset> catalog = preset_catalog();
  ScanSpec s;
  *preset_out = nullptr;
  if (o.preset.empty() == o.config_file.empty()) throw InvalidConfig("give exactly one of --preset or --config");
  if (!o.preset.empty()) {
    for (const auto& p : catalog) {
      if (p.name == o.preset) *preset_out = &p;
    }
    if (!*preset_out) throw InvalidConfig("unknown preset: " + o.preset);
    s = (*preset_out)->spec;
  } else {
    s = parse_config(read_file(o.config_file));
  }

  if (!o.name.empty()) s.name = o.name;
  if (o.points) s.points = *o.points;
  if (!o.range.empty()) {
    const auto parts = split(o.range, ':');
    std::optional<real_t> lo, hi;
    if (parts.size() == 2) {
      lo = parse_real(parts[0]);
      hi = parse_real(parts[1]);
    }
    if (!lo || !hi) throw InvalidConfig("--range expects MIN:MAX");
    s.min = *lo;
    s.max = *hi;
  }
  if (!o.damping.empty()) {
    if (o.damping == "on") s.damping = DampingMode::On;
    else if (o.damping == "off") s.damping = DampingMode::Off;
    else throw InvalidConfig("--damping expects on or off");
  }
  if (!o.quantities.empty()) {
    auto qs = parse_quantity_list(o.quantities);
    if (!qs) throw InvalidConfig("bad --quantities list: " + o.quantities);
    s.quantities = *qs;
    s.coincidences.clear();  // requests may name quantities no longer present
  }
  if (o.tol_cells) s.tol_cells = *o.tol_cells;
  if (o.eval_time) s.eval_time = *o.eval_time;
  if (o.step_rel) s.diff.step_rel = *o.step_rel;
  if (o.threads) s.threads = *o.threads;
  if (s.tol_cells < 0) throw InvalidConfig("--tol-cells must be >= 0");
  try {
    validate(s);
  } catch (const InvalidSpec& e) {
    throw InvalidConfig(e.what());
  }
  return s;
}

/// All files are rendered in memory first, then written via temporary
/// names and renamed, so a failure leaves no partial outputs behind.
inline void write_outputs(const std::filesystem::path& dir, const std::vector<std::pair<std::string, std::string>>& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoFailure("output directory does not exist: " + dir.string());
  std::vector<fs::path> written;
  auto rollback = [&] {
    for (const auto& p : written) fs::remove(p, ec);
  };
  for (const auto& [name, content] : files) {
    const fs::path tmp = dir / (name + ".tmp");
    std::ofstream out(tmp, std::ios::binary);
    out << content;
    out.close();
    written.push_back(tmp);
    if (!out) {
      rollback();
      throw IoFailure("cannot write " + tmp.string());
    }
  }
  for (const auto& [name, content] : files) {
    fs::rename(dir / (name + ".tmp"), dir / name, ec);
    if (ec) {
      rollback();
      throw IoFailure("cannot rename into " + (dir / name).string());
    }
  }
}

inline std::string output_dir(const RunOptions& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("EITM_OUT"); env && *env) return env;
  return ".";
}

inline void run(const RunOptions& o, std::ostream& out) {
  const Preset* preset = nullptr;
  const ScanSpec spec = build_spec(o, &preset);
  const ScanResult r = run_scan(spec);

  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back(spec.name + ".csv", write_csv(r, {o.precision, preset}));
  if (!o.no_features) files.emplace_back(spec.name + ".features.txt", write_features(r) + write_bounds(r));
  if (!o.no_coincidence) files.emplace_back(spec.name + ".coincidence.txt", write_coincidences(r));
  const std::filesystem::path dir = output_dir(o);
  write_outputs(dir, files);

  for (const auto& c : r.coincidences) {
    out << c.label << " : " << (c.report.aligned() ? "aligned" : "not-aligned") << "\n";
  }
  out << "wrote " << (dir / (spec.name + ".csv")).string() << "\n";
}

/// An empty filter lists everything; a filter matching no model lists nothing.
inline void list_presets(const std::string& model_filter, std::ostream& out) {
  for (const auto& p : preset_catalog()) {
    if (!model_filter.empty() && model_filter != to_string(p.spec.model())) continue;
    out << std::left << std::setw(8) << p.name << std::setw(12) << p.figure << std::setw(13)
        << to_string(p.spec.model()) << "damping=" << std::setw(4) << to_string(p.spec.damping)
        << "sweep " << param_name(p.spec.swept) << " [" << format_real(p.spec.min) << ", "
        << format_real(p.spec.max) << "]  " << p.description << "\n";
    for (const auto& note : p.inherited) out << "          inherited: " << note << "\n";
  }
}

/// Entry point; returns the process exit code.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Statistical speeds and susceptibilities of driven three- and four-level atoms"};
  app.require_subcommand(0, 1);

  bool top_list = false;
  std::string model_filter;
  app.add_flag("--list-presets", top_list, "List built-in presets and exit");
  app.add_option("--model", model_filter, "Preset filter for --list-presets: four-level or three-level");

  RunOptions o;
  auto* run_cmd = app.add_subcommand("run", "Run a scan and write <name>.csv, .features.txt, .coincidence.txt");
  auto* src = run_cmd->add_option_group("source");
  src->add_option("--preset", o.preset, "Built-in preset name");
  src->add_option("--config", o.config_file, "key = value scan configuration file");
  src->require_option(1);
  run_cmd->add_option("--out", o.out_dir, "Output directory (default: $EITM_OUT, else .)");
  run_cmd->add_option("--points", o.points, "Number of grid points");
  run_cmd->add_option("--range", o.range, "Sweep range MIN:MAX");
  run_cmd->add_option("--damping", o.damping, "on or off");
  run_cmd->add_option("--quantities", o.quantities, "Comma-separated list, e.g. qfi_omegas,hss_omegas,chi_abs");
  run_cmd->add_option("--tol-cells", o.tol_cells, "Coincidence tolerance in grid cells");
  run_cmd->add_option("--eval-time", o.eval_time, "Interaction-picture evaluation time");
  run_cmd->add_option("--h-rel", o.step_rel, "Relative finite-difference step");
  run_cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  run_cmd->add_option("--name", o.name, "Output base name (default: preset or config name)");
  run_cmd->add_option("--precision", o.precision, "CSV significant digits (0: shortest exact)")
      ->check(CLI::Range(0, 17));
  run_cmd->add_flag("--no-features", o.no_features, "Skip <name>.features.txt");
  run_cmd->add_flag("--no-coincidence", o.no_coincidence, "Skip <name>.coincidence.txt");

  std::string list_model;
  auto* list_cmd = app.add_subcommand("list-presets", "List built-in presets");
  list_cmd->add_option("--model", list_model, "four-level or three-level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "eitm: " << e.what() << "\n";
    return kInvalidConfig;
  }

  try {
    if (top_list) {
      list_presets(model_filter, out);
    } else if (*list_cmd) {
      list_presets(list_model, out);
    } else if (*run_cmd) {
      run(o, out);
    } else {
      out << app.help();
    }
    return kOk;
  } catch (const InvalidConfig& e) {
    err << "eitm: invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const AllPoles& e) {
    err << "eitm: " << e.what() << "\n";
    return kAllPoles;
  } catch (const IoFailure& e) {
    err << "eitm: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "eitm: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace eitm::cli
