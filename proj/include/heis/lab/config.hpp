#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heis::lab {

/// One experiment: subcommand, its parameters and the global knobs. The
/// canonical text form is "key=value" lines sorted by key; parameters and
/// globals share one flat namespace.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::optional<uint64_t> seed;
  int workers = 1;
  uint64_t mem_cap_mib = 4096;
  std::string out_dir = ".";

  std::string canonical() const;
  uint64_t hash() const;  // FNV-1a 64 of canonical()
  std::string hash_hex() const;

  /// The seed, or a validation error naming the command.
  uint64_t require_seed() const;

  std::string get(const std::string& key, const std::string& fallback) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;

  /// Validation error for any parameter outside `known`.
  void check_keys(const std::vector<std::string>& known) const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the canonical form; '#' lines and blank lines are skipped, keys
/// may appear in any order but only once.
ExperimentConfig parse_config(const std::string& text);

uint64_t fnv1a64(const std::string& bytes);

struct OutputFile {
  std::string name;
  std::string content;
};

/// {config_hash, tool_version, wall_time_s, config, outputs:[{file, bytes, fnv1a64}]}
std::string run_record_json(const ExperimentConfig& cfg, const std::vector<OutputFile>& outputs,
                            double wall_time_s);

const char* tool_version();

}  // namespace heis::lab
