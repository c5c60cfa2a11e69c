#include "qdim/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <fstream>
#include <sstream>

namespace qdim::cli {
namespace {

using nlohmann::json;

// A JSON node paired with its pointer path for diagnostics.
class Node {
public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError((path_.empty() ? std::string("/") : path_) + ": " + message);
  }

  void only(std::initializer_list<const char*> keys) const {
    if (!value_.is_object()) fail("expected an object");
    for (const auto& item : value_.items()) {
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }) == keys.end())
        fail("unknown field '" + item.key() + "'");
    }
  }

  bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

  Node operator[](const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    if (!value_.contains(key)) fail(std::string("missing field '") + key + "'");
    return {value_.at(key), path_ + "/" + key};
  }

  Node at(std::size_t i) const { return {value_.at(i), path_ + "/" + std::to_string(i)}; }

  std::size_t size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double x = value_.get<double>();
    if (!std::isfinite(x)) fail("expected a finite number");
    return x;
  }

  std::size_t count() const {
    if (!value_.is_number_integer() || value_.get<long long>() < 0) fail("expected a non-negative integer");
    return value_.get<std::size_t>();
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }

  template <class T, class F>
  T wrap(F&& build) const {
    try {
      return build();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what());
    }
  }

private:
  const json& value_;
  std::string path_;
};

Map1D parse_map(const Node& node) {
  const std::string kind = node["kind"].string();
  if (kind == "similarity") node.only({"kind", "ratio", "orientation", "offset"});
  if (kind == "mobius") node.only({"kind", "shift", "offset"});
  const double offset = node.has("offset") ? node["offset"].number() : 0.0;
  if (kind == "similarity") {
    const double ratio = node["ratio"].number();
    int orientation = 1;
    if (node.has("orientation")) {
      const double o = node["orientation"].number();
      if (o != 1.0 && o != -1.0) node["orientation"].fail("orientation must be 1 or -1");
      orientation = static_cast<int>(o);
    }
    return node.wrap<Map1D>([&] { return Map1D::similarity(ratio, offset, orientation); });
  }
  if (kind == "mobius") {
    const double shift = node["shift"].number();
    return node.wrap<Map1D>([&] { return Map1D::mobius(shift, offset); });
  }
  if (kind == "smooth") node["kind"].fail("smooth maps need programmatic oracles; not available in config mode");
  node["kind"].fail("unknown map kind '" + kind + "' (expected similarity or mobius)");
}

std::vector<MapFamily> parse_families(const Node& node) {
  std::vector<MapFamily> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    MapFamily family;
    const Node fam = node.at(i);
    for (std::size_t j = 0; j < fam.size(); ++j) family.push_back(parse_map(fam.at(j)));
    if (family.size() < 2) fam.fail("a level needs at least 2 maps");
    out.push_back(std::move(family));
  }
  return out;
}

System parse_system(const Node& node) {
  node.only({"interval", "grid_points", "prefix", "tail"});
  const Node interval = node["interval"];
  if (interval.size() != 2) interval.fail("expected [low, high]");
  const Interval J{interval.at(0).number(), interval.at(1).number()};
  if (!(J.high > J.low)) interval.fail("interval must have low < high");

  if (!node.has("tail") || node["tail"].size() == 0) {
    throw ConfigError(std::string("/system/tail: tail rule required in config mode"));
  }
  auto prefix = node.has("prefix") ? parse_families(node["prefix"]) : std::vector<MapFamily>{};
  auto tail = parse_families(node["tail"]);
  System system{LevelSchedule(J, std::move(prefix), std::move(tail))};
  if (node.has("grid_points")) {
    system.grid_points = node["grid_points"].count();
    if (system.grid_points < 2) node["grid_points"].fail("need at least 2 grid points");
  }
  return system;
}

std::vector<ProbabilityVector> parse_vectors(const Node& node) {
  std::vector<ProbabilityVector> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(node.at(i).numbers());
  return out;
}

SymbolicMeasure parse_measure(const Node& node, const System& system) {
  const std::string kind = node["kind"].string();
  auto checked = [&](SymbolicMeasure m) {
    node.wrap<int>([&] {
      m.check_compatible(system.schedule,
                         std::max<std::size_t>(system.schedule.distinct_levels(), 1) * 4);
      return 0;
    });
    return m;
  };
  if (kind == "uniform") {
    node.only({"kind"});
    return checked(node.wrap<ProductMeasure>([&] { return ProductMeasure::uniform(system.schedule); }));
  }
  if (kind == "product") {
    node.only({"kind", "prefix", "tail"});
    auto prefix = node.has("prefix") ? parse_vectors(node["prefix"]) : std::vector<ProbabilityVector>{};
    if (!node.has("tail")) node.fail("product measure needs a 'tail' list of vectors");
    auto tail = parse_vectors(node["tail"]);
    return checked(node.wrap<ProductMeasure>([&] { return ProductMeasure(std::move(prefix), std::move(tail)); }));
  }
  if (kind == "gibbs") {
    node.only({"kind", "potential"});
    const Node pot = node["potential"];
    Matrix potential;
    for (std::size_t i = 0; i < pot.size(); ++i) potential.push_back(pot.at(i).numbers());
    return checked(pot.wrap<GibbsMeasure>([&] { return GibbsMeasure(potential); }));
  }
  node["kind"].fail("unknown measure kind '" + kind + "' (expected product, uniform or gibbs)");
}

TaskParams parse_task(const Node& node) {
  node.only({"q", "t", "mode", "strategy", "level", "pressure_ladder", "box_ladder", "refine", "root_tol",
             "validate_depth", "k_max", "moran_k_max", "compare_tol", "clamp_tol", "budget"});
  TaskParams task;
  if (node.has("q")) {
    task.q = node["q"].numbers();
    for (std::size_t i = 0; i < task.q.size(); ++i)
      if (!(task.q[i] > 0.0)) node["q"].at(i).fail("q must be > 0");
  }
  if (node.has("t")) {
    const Node t = node["t"];
    if (t.has("min")) {
      const double lo = t["min"].number(), hi = t["max"].number();
      const std::size_t n = t["count"].count();
      if (n < 2) t["count"].fail("need at least 2 points");
      for (std::size_t i = 0; i < n; ++i)
        task.t.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    } else {
      task.t = t.numbers();
    }
  }
  if (task.t.empty()) {
    for (int i = 0; i <= 10; ++i) task.t.push_back(0.1 * i);
  }
  if (node.has("mode")) {
    const std::string m = node["mode"].string();
    if (m == "level") task.mode = PressureMode::level;
    else if (m == "cutset") task.mode = PressureMode::cutset;
    else node["mode"].fail("mode must be 'level' or 'cutset'");
  }
  if (node.has("strategy")) {
    const std::string s = node["strategy"].string();
    if (s == "automatic") task.strategy = Strategy::automatic;
    else if (s == "product_fast_path") task.strategy = Strategy::product_fast_path;
    else if (s == "enumerate") task.strategy = Strategy::enumerate;
    else node["strategy"].fail("strategy must be automatic, product_fast_path or enumerate");
  }
  if (node.has("level")) task.level = node["level"].count();
  if (node.has("pressure_ladder")) {
    const Node l = node["pressure_ladder"];
    if (l.has("from_exponent")) {
      const std::size_t a = l["from_exponent"].count(), b = l["to_exponent"].count();
      if (b < a) l.fail("to_exponent must be >= from_exponent");
      for (std::size_t e = a; e <= b; ++e) task.pressure_ladder.push_back(std::ldexp(1.0, -static_cast<int>(e)));
    } else {
      task.pressure_ladder = l.numbers();
    }
    for (double d : task.pressure_ladder)
      if (!(d > 0.0 && d < 1.0)) l.fail("ladder entries must lie in (0, 1)");
  }
  if (node.has("box_ladder")) {
    const Node b = node["box_ladder"];
    b.only({"delta0", "count"});
    if (b.has("delta0")) task.box_ladder.delta0 = b["delta0"].number();
    if (b.has("count")) task.box_ladder.count = b["count"].count();
    if (!(task.box_ladder.delta0 > 0.0)) b["delta0"].fail("delta0 must be > 0");
  }
  if (node.has("refine")) task.box_ladder.refine = node["refine"].count();
  if (node.has("root_tol")) task.root_tol = node["root_tol"].number();
  if (!(task.root_tol > 0.0)) node["root_tol"].fail("root_tol must be > 0");
  if (node.has("validate_depth")) task.validate_depth = node["validate_depth"].count();
  if (node.has("k_max")) task.k_max = node["k_max"].count();
  if (node.has("moran_k_max")) task.moran_k_max = node["moran_k_max"].count();
  if (node.has("compare_tol")) task.compare_tol = node["compare_tol"].number();
  if (node.has("clamp_tol")) task.clamp_tol = node["clamp_tol"].number();
  if (node.has("budget")) task.budget = node["budget"].count();
  task.box_ladder.budget = task.budget;
  return task;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& doc) {
  const Node root(doc, "");
  if (!doc.is_object()) root.fail("config must be a JSON object");
  root.only({"system", "measure", "task", "output"});
  ExperimentConfig config{parse_system(root["system"]), std::nullopt, {}, {}};
  if (root.has("measure")) config.measure = parse_measure(root["measure"], config.system);
  if (root.has("task")) config.task = parse_task(root["task"]);
  if (root.has("output")) root["output"].only({"dir"});
  if (root.has("output") && root["output"].has("dir")) config.output_dir = root["output"]["dir"].string();
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(std::to_string(line) + ":" + std::to_string(column) + ": invalid JSON (" +
                      e.what() + ")");
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ":" + e.what());
  }
}

}  // namespace qdim::cli
