#pragma once

#include <string>
#include <vector>

#include "heis/lab/config.hpp"

namespace heis::lab {

struct CommandResult {
  std::vector<OutputFile> files;
  std::string summary;  // one line for stdout
  int exit_code = 0;    // nonzero for reported non-convergence
};

/// Subcommand names in CLI order.
const std::vector<std::string>& command_names();

/// Runs cfg.command. Output contents depend only on the config, never on
/// cfg.workers or the wall clock.
CommandResult run_command(const ExperimentConfig& cfg);

/// Writes every output into cfg.out_dir with a "<name>.run.json" record beside it.
void write_outputs(const ExperimentConfig& cfg, const CommandResult& r, double wall_time_s);

std::string read_text_file(const std::string& path);

}  // namespace heis::lab
