#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "eitm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eitm::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("eitm_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  std::string l;
  while (std::getline(in, l))
    if (!l.empty() && l[0] != '#') lines.push_back(l);
  return lines;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, RunPresetWritesAllThreeFiles) {
  TempDir d;
  const auto o = run({"run", "--preset", "fig2a", "--out", d.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto lines = data_lines(slurp(d.path() / "fig2a.csv"));
  EXPECT_EQ(lines.front(), "omega_dc,qfi_omegas,hss_omegas,chi3_abs,qfi_omegas_norm,hss_omegas_norm,chi3_abs_norm");
  EXPECT_EQ(lines.size(), 502u);
  EXPECT_TRUE(fs::exists(d.path() / "fig2a.features.txt"));
  EXPECT_TRUE(fs::exists(d.path() / "fig2a.coincidence.txt"));
}

TEST(Cli, PointsOverride) {
  TempDir d;
  ASSERT_EQ(run({"run", "--preset", "fig2a", "--points", "11", "--out", d.path().string()}).code, 0);
  const auto lines = data_lines(slurp(d.path() / "fig2a.csv"));
  EXPECT_EQ(lines.size(), 12u);
  EXPECT_EQ(lines.front().substr(0, 9), "omega_dc,");
}

TEST(Cli, OverridesApply) {
  TempDir d;
  const auto o = run({"run", "--preset", "fig5b", "--points", "21", "--range", "8:10", "--damping", "on",
                      "--quantities", "chi_im,n0", "--tol-cells", "3", "--precision", "6", "--name", "custom",
                      "--out", d.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string csv = slurp(d.path() / "custom.csv");
  EXPECT_NE(csv.find("# damping: on"), std::string::npos);
  EXPECT_NE(csv.find("# grid: 8:10:21 linear"), std::string::npos);
  EXPECT_EQ(data_lines(csv).front(), "omega,chi1_im,n0_re,chi1_im_norm,n0_re_norm");
  EXPECT_NE(slurp(d.path() / "custom.coincidence.txt").find("tolerance 3"), std::string::npos);
}

TEST(Cli, MissingOutputDirectoryIsIoFailure) {
  TempDir d;
  const fs::path missing = d.path() / "nope";
  const auto o = run({"run", "--preset", "fig2a", "--points", "11", "--out", missing.string()});
  EXPECT_EQ(o.code, 4);
  EXPECT_EQ(count_lines(o.err), 1u);
  EXPECT_FALSE(fs::exists(missing));
  EXPECT_TRUE(fs::is_empty(d.path()));
}

TEST(Cli, EnvironmentSuppliesDefaultOutputDirectory) {
  TempDir d;
  ::setenv("EITM_OUT", d.path().c_str(), 1);
  const auto o = run({"run", "--preset", "fig7c", "--points", "11"});
  ::unsetenv("EITM_OUT");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(d.path() / "fig7c.csv"));
}

TEST(Cli, ConfigFileRun) {
  TempDir d;
  const fs::path cfg = d.path() / "scan.cfg";
  std::ofstream(cfg) << eitm::to_config(eitm::find_preset("fig6c")->spec) << "points = 31\nname = from_file\n";
  const auto o = run({"run", "--config", cfg.string(), "--out", d.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(data_lines(slurp(d.path() / "from_file.csv")).size(), 32u);
}

TEST(Cli, InvalidConfigurations) {
  TempDir d;
  const auto out = d.path().string();
  EXPECT_EQ(run({"run", "--preset", "fig99", "--out", out}).code, 2);
  EXPECT_EQ(run({"run", "--preset", "fig2a", "--range", "3", "--out", out}).code, 2);
  EXPECT_EQ(run({"run", "--preset", "fig2a", "--range", "2:1", "--out", out}).code, 2);
  EXPECT_EQ(run({"run", "--preset", "fig2a", "--damping", "maybe", "--out", out}).code, 2);
  EXPECT_EQ(run({"run", "--preset", "fig2a", "--quantities", "n0", "--out", out}).code, 2);
  EXPECT_EQ(run({"run", "--preset", "fig2a", "--config", "x.cfg", "--out", out}).code, 2);
  EXPECT_EQ(run({"run", "--out", out}).code, 2);
  EXPECT_EQ(run({"run", "--preset", "fig2a", "--bogus"}).code, 2);
  const fs::path bad = d.path() / "bad.cfg";
  std::ofstream(bad) << "omega = fast\n";
  const auto o = run({"run", "--config", bad.string(), "--out", out});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(count_lines(o.err), 1u);
}

TEST(Cli, UnreadableConfigIsIoFailure) {
  EXPECT_EQ(run({"run", "--config", "/nonexistent/scan.cfg"}).code, 4);
}

TEST(Cli, AllPolesExitCode) {
  TempDir d;
  const fs::path cfg = d.path() / "poles.cfg";
  std::ofstream(cfg) << eitm::to_config(eitm::find_preset("fig5a")->spec) << "points = 11\npole_threshold = 1e9\n";
  const auto o = run({"run", "--config", cfg.string(), "--out", d.path().string()});
  EXPECT_EQ(o.code, 3);
  EXPECT_FALSE(fs::exists(d.path() / "fig5a.csv"));
}

TEST(Cli, ListPresets) {
  const auto all = run({"list-presets"});
  ASSERT_EQ(all.code, 0);
  std::size_t count = 0;
  std::istringstream in(all.out);
  std::string l;
  while (std::getline(in, l)) count += l.rfind("fig", 0) == 0;
  EXPECT_GE(count, 17u);
  EXPECT_NE(all.out.find("inherited:"), std::string::npos);

  const auto top = run({"--list-presets"});
  EXPECT_EQ(top.code, 0);
  EXPECT_EQ(top.out, all.out);
}

TEST(Cli, ListPresetsFilter) {
  const auto three = run({"list-presets", "--model", "three-level"});
  ASSERT_EQ(three.code, 0);
  std::istringstream in(three.out);
  std::string l;
  while (std::getline(in, l)) {
    if (l.rfind("fig", 0) != 0) continue;
    EXPECT_TRUE(l.rfind("fig5", 0) == 0 || l.rfind("fig6", 0) == 0 || l.rfind("fig7", 0) == 0) << l;
  }
  const auto none = run({"list-presets", "--model", "two-level"});
  EXPECT_EQ(none.code, 0);
  EXPECT_TRUE(none.out.empty());
}

TEST(Cli, CsvIsByteIdenticalAcrossRuns) {
  TempDir a, b;
  ASSERT_EQ(run({"run", "--preset", "fig3a", "--points", "51", "--out", a.path().string()}).code, 0);
  ASSERT_EQ(run({"run", "--preset", "fig3a", "--points", "51", "--threads", "3", "--out", b.path().string()}).code, 0);
  EXPECT_EQ(slurp(a.path() / "fig3a.csv"), slurp(b.path() / "fig3a.csv"));
}
