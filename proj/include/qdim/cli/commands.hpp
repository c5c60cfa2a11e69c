#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdim/cli/config.hpp"

namespace qdim::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kValidationFailure = 2,
  kNumericalFailure = 3,
};

struct CommandResult {
  int exit_code = kSuccess;
  std::vector<std::filesystem::path> files;  ///< files written, in order
  std::string summary;                        ///< human-readable digest
};

CommandResult cmd_validate(const ExperimentConfig& config, const std::filesystem::path& out_dir);
CommandResult cmd_pressure(const ExperimentConfig& config, const std::filesystem::path& out_dir);
CommandResult cmd_dq(const ExperimentConfig& config, const std::filesystem::path& out_dir);
CommandResult cmd_boxcount(const ExperimentConfig& config, const std::filesystem::path& out_dir);
CommandResult cmd_compare(const ExperimentConfig& config, const std::filesystem::path& out_dir);
CommandResult cmd_moran(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Runs a command by name, mapping library errors onto exit codes.
CommandResult run_command(const std::string& name, const ExperimentConfig& config,
                          const std::filesystem::path& out_dir);

/// Exit code for an error escaping a command.
int exit_code_for(const std::exception& e);

/// Entry point behind the qdim executable.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace qdim::cli
