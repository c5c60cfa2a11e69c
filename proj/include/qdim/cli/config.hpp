#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdim/boxdim.hpp"
#include "qdim/error.hpp"
#include "qdim/measures.hpp"
#include "qdim/pressure.hpp"
#include "qdim/schedule.hpp"

namespace qdim::cli {

/// Malformed config. The message starts with "<line>:<column>:" for syntax
/// errors and with a JSON pointer ("/system/tail/0/1/ratio:") for field errors.
class ConfigError : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

struct TaskParams {
  std::vector<double> q{0.5, 1.0, 2.0, 3.0};
  std::vector<double> t;  ///< pressure grid; defaults to 0, 0.1, ..., 1
  PressureMode mode = PressureMode::level;
  Strategy strategy = Strategy::automatic;
  std::size_t level = 0;
  std::vector<double> pressure_ladder;  ///< empty -> 2^-6..2^-16
  LadderSpec box_ladder;
  double root_tol = 1e-9;
  std::size_t validate_depth = 8;
  std::size_t k_max = 16;
  std::size_t moran_k_max = 64;
  double compare_tol = 0.05;
  double clamp_tol = 0.02;
  std::size_t budget = kDefaultWordBudget;
};

struct ExperimentConfig {
  System system;
  std::optional<SymbolicMeasure> measure;
  TaskParams task;
  std::string output_dir;  ///< empty when the config does not name one
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qdim::cli
