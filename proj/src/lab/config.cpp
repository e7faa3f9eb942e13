#include "heis/lab/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <json.hpp>
#include <set>
#include <sstream>

#include "heis/core/error.hpp"

namespace heis::lab {

namespace {

bool valid_key(const std::string& k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    fail(ErrorKind::validation, fmt::format("parameter {}: cannot parse '{}'", key, v));
  return out;
}

}  // namespace

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> all = params;
  all["command"] = command;
  if (seed) all["seed"] = fmt::format("{}", *seed);
  all["workers"] = fmt::format("{}", workers);
  all["mem_cap_mib"] = fmt::format("{}", mem_cap_mib);
  all["out_dir"] = out_dir;
  std::string out;
  for (const auto& [k, v] : all) out += k + "=" + v + "\n";
  return out;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

std::string ExperimentConfig::hash_hex() const { return fmt::format("{:016x}", hash()); }

uint64_t ExperimentConfig::require_seed() const {
  if (!seed) fail(ErrorKind::validation, fmt::format("{} is randomized and needs an explicit --seed", command));
  return *seed;
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int64_t ExperimentConfig::get_int(const std::string& key, int64_t fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_number<int64_t>(key, it->second);
}

uint64_t ExperimentConfig::get_u64(const std::string& key, uint64_t fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_number<uint64_t>(key, it->second);
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_number<double>(key, it->second);
}

void ExperimentConfig::check_keys(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : params)
    if (std::find(known.begin(), known.end(), k) == known.end())
      fail(ErrorKind::validation, fmt::format("{}: unknown parameter '{}'", command, k));
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::validation, fmt::format("config line {}: expected key=value", lineno));
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (!valid_key(key)) fail(ErrorKind::validation, fmt::format("config line {}: bad key '{}'", lineno, key));
    if (!seen.insert(key).second) fail(ErrorKind::validation, fmt::format("config: duplicate key '{}'", key));
    if (key == "command") {
      c.command = value;
    } else if (key == "seed") {
      c.seed = parse_number<uint64_t>(key, value);
    } else if (key == "workers") {
      c.workers = parse_number<int>(key, value);
      if (c.workers < 1) fail(ErrorKind::validation, "workers must be positive");
    } else if (key == "mem_cap_mib") {
      c.mem_cap_mib = parse_number<uint64_t>(key, value);
    } else if (key == "out_dir") {
      c.out_dir = value;
    } else {
      c.params[key] = value;
    }
  }
  if (c.command.empty()) fail(ErrorKind::validation, "config: missing command");
  return c;
}

const char* tool_version() {
#ifdef HEIS_VERSION
  return HEIS_VERSION;
#else
  return "dev";
#endif
}

std::string run_record_json(const ExperimentConfig& cfg, const std::vector<OutputFile>& outputs,
                            double wall_time_s) {
  nlohmann::ordered_json j;
  j["config_hash"] = cfg.hash_hex();
  j["tool_version"] = tool_version();
  j["wall_time_s"] = wall_time_s;
  j["config"] = cfg.canonical();
  auto files = nlohmann::ordered_json::array();
  for (const auto& f : outputs)
    files.push_back({{"file", f.name}, {"bytes", f.content.size()}, {"fnv1a64", fmt::format("{:016x}", fnv1a64(f.content))}});
  j["outputs"] = files;
  return j.dump(2) + "\n";
}

}  // namespace heis::lab
