#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qdim/cli/commands.hpp"
#include "qdim/cli/config.hpp"
#include "qdim/version.hpp"

namespace fs = std::filesystem;
using namespace qdim::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qdim");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qdim_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

const fs::path kConfigs = QDIM_CONFIG_DIR;

std::string config(const std::string& name) { return (kConfigs / (name + ".json")).string(); }

}  // namespace

TEST_CASE("validate exit codes") {
  const fs::path out = scratch("validate");
  const Run fig = run({"validate", "--config", config("two_scale"), "--out", out.string()});
  CHECK(fig.code == kSuccess);
  const std::string report = slurp(out / "validate.json");
  CHECK(report.find("\"osc\": true") != std::string::npos);

  const Run overlap = run({"validate", "--config", config("overlap"), "--out", out.string()});
  CHECK(overlap.code == kValidationFailure);
  CHECK(overlap.out.find("OSC fails") != std::string::npos);
}

TEST_CASE("config errors map to exit code 1") {
  const fs::path dir = scratch("config");
  const std::string maps = R"([{"kind": "similarity", "ratio": 0.5}, {"kind": "similarity", "ratio": 0.5, "offset": 0.5}])";

  const auto no_tail = write(dir, "no_tail.json", R"({"system": {"interval": [0, 1], "prefix": [)" + maps + "]}}");
  const Run a = run({"validate", "--config", no_tail.string(), "--out", dir.string()});
  CHECK(a.code == kUsageError);
  CHECK(a.err.find("tail rule required in config mode") != std::string::npos);

  const auto syntax = write(dir, "syntax.json", "{\n  \"system\": {\n    \"interval\": [0, 1],,\n  }\n}\n");
  const Run b = run({"validate", "--config", syntax.string(), "--out", dir.string()});
  CHECK(b.code == kUsageError);
  CHECK(b.err.find(":3:") != std::string::npos);

  const auto field = write(dir, "field.json",
                           R"({"system": {"interval": [0, 1], "tail": [[{"kind": "similarity", "ratio": 1.5}, {"kind": "similarity", "ratio": 0.5}]]}})");
  const Run c = run({"validate", "--config", field.string(), "--out", dir.string()});
  CHECK(c.code == kUsageError);
  CHECK(c.err.find("/system/tail/0/0") != std::string::npos);

  const auto smooth = write(dir, "smooth.json",
                            R"({"system": {"interval": [0, 1], "tail": [[{"kind": "smooth"}, {"kind": "mobius", "shift": 2}]]}})");
  const Run d = run({"validate", "--config", smooth.string(), "--out", dir.string()});
  CHECK(d.code == kUsageError);
  CHECK(d.err.find("/system/tail/0/0/kind") != std::string::npos);

  const auto typo = write(dir, "typo.json",
                          R"({"system": {"interval": [0, 1], "tail": [)" + maps + R"(]}, "task": {"qs": [2]}})");
  const Run t = run({"dq", "--config", typo.string(), "--out", dir.string()});
  CHECK(t.code == kUsageError);
  CHECK(t.err.find("/task: unknown field 'qs'") != std::string::npos);

  const Run e = run({"validate", "--config", (dir / "missing.json").string()});
  CHECK(e.code == kUsageError);

  const Run f = run({"frobnicate", "--config", config("two_scale")});
  CHECK(f.code == kUsageError);
  const Run g = run({"dq"});
  CHECK(g.code == kUsageError);

  const auto bad_measure = write(dir, "bad_measure.json",
                                 R"({"system": {"interval": [0, 1], "tail": [)" + maps +
                                     R"(]}, "measure": {"kind": "product", "tail": [[0.2, 0.3, 0.5]]}})");
  const Run h = run({"dq", "--config", bad_measure.string(), "--out", dir.string()});
  CHECK(h.code == kUsageError);
  CHECK(h.err.find("/measure") != std::string::npos);
}

TEST_CASE("numerical failures map to exit code 3") {
  const fs::path dir = scratch("numeric");
  const auto cfg = write(dir, "budget.json", R"({
    "system": {"interval": [0, 1], "tail": [[{"kind": "mobius", "shift": 2}, {"kind": "mobius", "shift": 3}]]},
    "measure": {"kind": "uniform"},
    "task": {"q": [2], "level": 14, "budget": 1000}})");
  const Run r = run({"dq", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == kNumericalFailure);
  CHECK(r.err.find("budget exceeded") != std::string::npos);
}

TEST_CASE("CSV outputs are deterministic, LF-only and versioned") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
      {"dq", {"dq.csv"}},
      {"pressure", {"pressure.csv"}},
      {"boxcount", {"boxcount_ladder.csv", "boxcount_estimates.csv"}},
      {"compare", {"compare.csv"}}};
  for (const auto& [cmd, files] : runs) {
    const fs::path a = scratch(cmd + "_a"), b = scratch(cmd + "_b");
    CHECK(run({cmd, "--config", config("cantor_skewed"), "--out", a.string()}).code == kSuccess);
    CHECK(run({cmd, "--config", config("cantor_skewed"), "--out", b.string()}).code == kSuccess);
    for (const auto& f : files) {
      const std::string text = slurp(a / f);
      CHECK(text == slurp(b / f));
      CHECK(text.find('\r') == std::string::npos);
      CHECK(text.rfind(std::string("# qdim ") + qdim::kVersion + " " + cmd + "\n", 0) == 0);
      CHECK(text.back() == '\n');
    }
    for (const auto& entry : fs::directory_iterator(a)) CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("compare and moran commands") {
  const fs::path dir = scratch("compare");
  const Run c = run({"compare", "--config", config("cantor_uniform"), "--out", dir.string()});
  CHECK(c.code == kSuccess);
  const std::string csv = slurp(dir / "compare.csv");
  CHECK(csv.find("q,box_dq,pressure_dq,abs_diff,tol,clamp_ok,pass\n") != std::string::npos);

  const Run m = run({"moran", "--config", config("moran_alternating"), "--out", dir.string()});
  CHECK(m.code == kSuccess);
  const std::string limits = slurp(dir / "moran_limits.json");
  CHECK(limits.find("\"verdict\"") != std::string::npos);
  const std::string sk = slurp(dir / "moran.csv");
  CHECK(sk.find("\n2,0.5981") != std::string::npos);

  const Run bad = run({"moran", "--config", config("mobius_gibbs"), "--out", dir.string()});
  CHECK(bad.code == kUsageError);
}

TEST_CASE("parse_config defaults and grids") {
  const auto cfg = parse_config_text(R"({
    "system": {"interval": [0, 2], "grid_points": 65,
               "tail": [[{"kind": "similarity", "ratio": 0.25, "orientation": -1, "offset": 0.5},
                         {"kind": "mobius", "shift": 4, "offset": 1}]]},
    "task": {"t": {"min": 0, "max": 1, "count": 5}, "mode": "cutset",
             "pressure_ladder": {"from_exponent": 4, "to_exponent": 6},
             "box_ladder": {"delta0": 0.01, "count": 5}},
    "output": {"dir": "out"}})");
  CHECK(cfg.system.grid_points == 65);
  CHECK(cfg.system.base().high == 2.0);
  CHECK(cfg.task.t == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK(cfg.task.mode == qdim::PressureMode::cutset);
  CHECK(cfg.task.pressure_ladder == std::vector<double>{1.0 / 16, 1.0 / 32, 1.0 / 64});
  CHECK(cfg.task.box_ladder.count == 5);
  CHECK(cfg.output_dir == "out");
  CHECK_FALSE(cfg.measure.has_value());
  CHECK(cfg.task.q == std::vector<double>{0.5, 1, 2, 3});
}

TEST_CASE("atomic writes replace existing files") {
  const fs::path dir = scratch("atomic");
  write_atomically(dir / "x.csv", "one\n");
  write_atomically(dir / "x.csv", "two\n");
  CHECK(slurp(dir / "x.csv") == "two\n");
  CHECK_FALSE(fs::exists(dir / "x.csv.tmp"));
}
