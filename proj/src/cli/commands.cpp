#include "qdim/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qdim/boxdim.hpp"
#include "qdim/moran.hpp"
#include "qdim/pressure.hpp"
#include "qdim/system.hpp"
#include "qdim/version.hpp"

namespace qdim::cli {
namespace fs = std::filesystem;

namespace {

std::string num(double x) { return fmt::format("{:.17g}", x); }

class Csv {
public:
  Csv(const std::string& command, const std::string& header) {
    text_ = fmt::format("# qdim {} {}\n{}\n", kVersion, command, header);
  }
  template <class... Fields>
  void row(const Fields&... fields) {
    std::string line;
    ((line += field(fields), line += ','), ...);
    line.back() = '\n';
    text_ += line;
  }
  const std::string& text() const { return text_; }

private:
  static std::string field(double x) { return num(x); }
  static std::string field(std::size_t x) { return std::to_string(x); }
  static std::string field(int x) { return std::to_string(x); }
  static std::string field(bool x) { return x ? "1" : "0"; }
  static std::string field(const std::string& s) { return s; }
  static std::string field(const char* s) { return s; }
  std::string text_;
};

SymbolicMeasure measure_of(const ExperimentConfig& config) {
  if (config.measure) return *config.measure;
  return ProductMeasure::uniform(config.system.schedule);
}

RootOptions root_options(const TaskParams& task) {
  RootOptions options;
  options.mode = task.mode;
  options.tol = task.root_tol;
  options.level = task.level;
  options.ladder = task.pressure_ladder;
  options.pressure = PressureOptions{task.strategy, task.budget};
  return options;
}

// Slope of the box-count estimate; the pressure root uses the same q.
double box_value(const DimensionEstimate& e) { return e.slope_ls; }

fs::path emit(CommandResult& result, const fs::path& dir, const std::string& name,
              const std::string& content) {
  const fs::path path = dir / name;
  write_atomically(path, content);
  result.files.push_back(path);
  return path;
}

nlohmann::json to_json(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

nlohmann::json to_json(const std::vector<double>& xs) {
  auto out = nlohmann::json::array();
  for (double x : xs) out.push_back(to_json(x));
  return out;
}

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

void write_atomically(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

CommandResult cmd_validate(const ExperimentConfig& config, const fs::path& out_dir) {
  CommandResult result;
  ValidationOptions options;
  options.depth = config.task.validate_depth;
  ValidationReport report = validate(config.system, options);
  if (report.ok() && report.depth_verified < options.depth) {
    report.osc = false;
    report.failures.push_back(fmt::format("OSC verified only to depth {} of {} (word budget)",
                                          report.depth_verified, options.depth));
  }

  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["ok"] = report.ok();
  doc["contraction"] = to_json(report.contraction);
  doc["contraction_ok"] = report.contraction_ok;
  doc["nesting_ok"] = report.nesting_ok;
  doc["osc"] = report.osc;
  doc["ssc"] = report.ssc;
  doc["depth_verified"] = report.depth_verified;
  doc["failures"] = report.failures;

  nlohmann::json diag;
  if (report.ok()) {
    try {
      const SystemDiagnostics d = condition_diagnostics(config.system, config.task.k_max, config.task.budget);
      diag["M"] = to_json(d.M);
      diag["c_bar"] = to_json(d.c_bar);
      diag["ratio"] = to_json(d.ratio);
      diag["plausible"] = d.plausible;
      diag["verdict"] = d.verdict;
    } catch (const Error& e) {
      diag["error"] = e.what();
    }
  } else {
    diag["error"] = "skipped: validation failed";
  }
  doc["diagnostics"] = diag;
  emit(result, out_dir, "validate.json", dump(doc));

  std::ostringstream summary;
  summary << "validate: " << (report.ok() ? "ok" : "FAILED") << " (depth " << report.depth_verified
          << ", osc " << (report.osc ? "yes" : "no") << ", ssc " << (report.ssc ? "yes" : "no") << ")";
  for (const auto& f : report.failures) summary << "\n  " << f;
  result.summary = summary.str();
  result.exit_code = report.ok() ? kSuccess : kValidationFailure;
  return result;
}

CommandResult cmd_pressure(const ExperimentConfig& config, const fs::path& out_dir) {
  CommandResult result;
  const SymbolicMeasure measure = measure_of(config);
  const RootOptions options = root_options(config.task);
  Csv csv("pressure", "q,t,value_lower,value_upper,mode");
  for (double q : config.task.q) {
    const PressureCurve curve = pressure_curve(config.system, measure, q, config.task.t, options);
    for (const auto& p : curve.samples) csv.row(q, p.t, p.lower, p.upper, to_string(curve.mode));
  }
  emit(result, out_dir, "pressure.csv", csv.text());
  result.summary = fmt::format("pressure: {} q values x {} t values", config.task.q.size(), config.task.t.size());
  return result;
}

CommandResult cmd_dq(const ExperimentConfig& config, const fs::path& out_dir) {
  CommandResult result;
  const SymbolicMeasure measure = measure_of(config);
  const RootOptions options = root_options(config.task);
  Csv csv("dq", "q,d_q,t_lo,t_hi,drift,mode,strategy,level");
  std::string summary = "dq:";
  for (double q : config.task.q) {
    const DimensionRoot r = root_dq(config.system, measure, q, options);
    csv.row(q, r.value, r.t_lo, r.t_hi, r.drift, to_string(r.mode), to_string(r.strategy), r.level);
    summary += fmt::format("\n  q={:g}: d_q={:.10f} (drift {:.2e})", q, r.value, r.drift);
  }
  emit(result, out_dir, "dq.csv", csv.text());
  result.summary = summary;
  return result;
}

CommandResult cmd_boxcount(const ExperimentConfig& config, const fs::path& out_dir) {
  CommandResult result;
  const SymbolicMeasure measure = measure_of(config);
  const auto hists = ladder_histograms(config.system, measure, config.task.box_ladder);
  Csv ladder("boxcount", "q,delta,sum,log_delta,log_sum,straddle_mass");
  Csv estimates("boxcount", "q,slope_ls,slope_min,slope_max,slope_ls_full,threshold_disagreement");
  std::string summary = "boxcount:";
  for (double q : config.task.q) {
    const DimensionEstimate e = estimate_from_histograms(hists, q);
    for (const auto& p : e.ladder) ladder.row(q, p.delta, p.sum, p.log_delta, p.log_sum, p.straddle_mass);
    estimates.row(q, e.slope_ls, e.slope_min, e.slope_max, e.slope_ls_full, e.threshold_disagreement);
    summary += fmt::format("\n  q={:g}: D_q~{:.6f} [{:.6f}, {:.6f}]", q, e.slope_ls, e.slope_min, e.slope_max);
  }
  emit(result, out_dir, "boxcount_ladder.csv", ladder.text());
  emit(result, out_dir, "boxcount_estimates.csv", estimates.text());
  result.summary = summary;
  return result;
}

CommandResult cmd_compare(const ExperimentConfig& config, const fs::path& out_dir) {
  CommandResult result;
  const SymbolicMeasure measure = measure_of(config);
  const RootOptions options = root_options(config.task);
  const auto hists = ladder_histograms(config.system, measure, config.task.box_ladder);
  Csv csv("compare", "q,box_dq,pressure_dq,abs_diff,tol,clamp_ok,pass");
  std::string summary = "compare:";
  bool all = true;
  for (double q : config.task.q) {
    const double box = box_value(estimate_from_histograms(hists, q));
    const double root = root_dq(config.system, measure, q, options).value;
    const double diff = std::abs(box - root);
    const bool clamp_ok = box <= std::min(root, 1.0) + config.task.clamp_tol;
    const bool pass = diff <= config.task.compare_tol && clamp_ok;
    all = all && pass;
    csv.row(q, box, root, diff, config.task.compare_tol, clamp_ok, pass);
    summary += fmt::format("\n  q={:g}: box {:.6f} pressure {:.6f} |diff| {:.2e} {}", q, box, root, diff,
                           pass ? "PASS" : "FAIL");
  }
  emit(result, out_dir, "compare.csv", csv.text());
  result.summary = summary;
  result.exit_code = all ? kSuccess : kValidationFailure;
  return result;
}

CommandResult cmd_moran(const ExperimentConfig& config, const fs::path& out_dir) {
  CommandResult result;
  const MoranReport report = moran_limits(config.system.schedule, config.task.moran_k_max);
  Csv csv("moran", "k,s_k");
  for (std::size_t k = 0; k < report.s.size(); ++k) csv.row(k + 1, report.s[k]);
  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["k_max"] = report.s.size();
  doc["s_lower"] = to_json(report.s_lower);
  doc["s_upper"] = to_json(report.s_upper);
  doc["gap"] = to_json(report.gap);
  doc["converged"] = report.converged;
  doc["verdict"] = report.verdict;
  emit(result, out_dir, "moran.csv", csv.text());
  emit(result, out_dir, "moran_limits.json", dump(doc));
  result.summary = fmt::format("moran: s_* {:.10f}, s^* {:.10f}, {}", report.s_lower, report.s_upper, report.verdict);
  return result;
}

CommandResult run_command(const std::string& name, const ExperimentConfig& config, const fs::path& out_dir) {
  if (name == "validate") return cmd_validate(config, out_dir);
  if (name == "pressure") return cmd_pressure(config, out_dir);
  if (name == "dq") return cmd_dq(config, out_dir);
  if (name == "boxcount") return cmd_boxcount(config, out_dir);
  if (name == "compare") return cmd_compare(config, out_dir);
  if (name == "moran") return cmd_moran(config, out_dir);
  throw InvalidInput("unknown command '" + name + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const NotMixing*>(&e)) return kUsageError;
  if (dynamic_cast<const NestingViolated*>(&e) || dynamic_cast<const ContractionViolated*>(&e) ||
      dynamic_cast<const NotConformal*>(&e))
    return kValidationFailure;
  return kNumericalFailure;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized q-dimensions of measures on non-autonomous conformal IFS", "qdim"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"validate", "check contraction, nesting and the open set condition"},
      {"pressure", "tabulate pressure proxies over the t grid"},
      {"dq", "pressure roots d_q"},
      {"boxcount", "mesh box-count estimates of D_q"},
      {"compare", "box-count estimate against pressure root per q"},
      {"moran", "Moran dimension sequence s_k and its limits"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (default: config output.dir, else .)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "qdim: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const ExperimentConfig config = load_config(config_path);
    const fs::path dir = !out_dir.empty() ? fs::path(out_dir)
                         : !config.output_dir.empty() ? fs::path(config.output_dir)
                                                      : fs::path(".");
    const CommandResult result = run_command(name, config, dir);
    out << result.summary << "\n";
    for (const auto& f : result.files) out << "wrote " << f.string() << "\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    err << "qdim " << name << ": error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace qdim::cli
