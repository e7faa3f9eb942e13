#include <fmt/format.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heis/core/error.hpp"
#include "heis/lab/commands.hpp"
#include "heis/lab/config.hpp"

namespace {

struct Param {
  std::string key;
  std::string help;
};

const std::map<std::string, std::vector<Param>>& parameters() {
  static const std::map<std::string, std::vector<Param>> p{
      {"growth", {{"k", "rank (default 2)"}, {"r_max", "largest radius (default 8)"}}},
      {"isoperim",
       {{"k", "rank (default 2)"},
        {"corpus", "'default' or ';'-separated set specs such as 'column(10);ball(2)'"}}},
      {"box-profile",
       {{"k", "rank (default 2)"},
        {"r", "box half width (default 1)"},
        {"s_min", "first grid point (default -4)"},
        {"s_max", "last grid point (default 6)"},
        {"ds", "grid step (default 0.25)"},
        {"mc_samples", "Monte Carlo samples per grid point, 0 for exact only"}}},
      {"nm",
       {{"k", "rank (default 2)"},
        {"preset", "set preset (default halfspace)"},
        {"radius", "quasi-ball radius around the origin (default 4)"},
        {"n_lines", "number of lines (default 10000)"},
        {"resolution", "sampling step along lines, 0 for radius/512"}}},
      {"voxelize",
       {{"k", "rank (default 2)"},
        {"preset", "set preset (default box)"},
        {"rho", "cell scale (default 0.25)"},
        {"half_width", "lattice half width in x, y (default 5)"},
        {"w_half_width", "lattice half width in w (default 32)"},
        {"samples", "samples per cell (default 33)"}}},
      {"c1",
       {{"metric", "metric file; otherwise the word-metric ball"},
        {"k", "rank (default 2)"},
        {"r", "ball radius (default 1)"},
        {"subsample", "farthest-point subsample size, 0 for the whole ball"}}},
      {"sparsest-cut",
       {{"instance", "instance file; otherwise a random instance"},
        {"n", "random instance size (default 6)"},
        {"sdp_tol", "SDP residual tolerance (default 1e-6)"},
        {"sdp_iter_cap", "SDP iteration cap (default 200000)"}}},
      {"duality",
       {{"metric", "metric file; otherwise a seeded bipyramid metric"},
        {"n", "bipyramid size (default 5)"}}},
      {"poincare", {{"k", "rank (default 2)"}, {"set", "set spec (default ball(2))"}}},
  };
  return p;
}

const std::map<std::string, std::string> kDescriptions{
    {"growth", "ball sizes |B_r| of the word metric"},
    {"isoperim", "perimeters and isoperimetric ratios over a set corpus"},
    {"box-profile", "vertical perimeter profile of the continuum box"},
    {"nm", "nonmonotonicity of a continuum set along random horizontal lines"},
    {"voxelize", "cellular approximation of a continuum set and its perimeters"},
    {"c1", "L1 distortion of a finite metric by the cut LP"},
    {"sparsest-cut", "OPT, LP and SDP values of a sparsest cut instance"},
    {"duality", "sparsest cut instance from the dual of the cut LP"},
    {"poincare", "both sides of the Poincare inequality for an indicator"},
};

std::string flag(const std::string& key) {
  std::string f = "--" + key;
  for (char& c : f)
    if (c == '_') c = '-';
  return f;
}

int execute(const heis::lab::ExperimentConfig& cfg, bool dry_run) {
  if (dry_run) {
    std::fputs(cfg.canonical().c_str(), stdout);
    return 0;
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto result = heis::lab::run_command(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  heis::lab::write_outputs(cfg, result, wall);
  fmt::print("{}\n", result.summary);
  for (const auto& f : result.files) fmt::print("wrote {}/{}\n", cfg.out_dir, f.name);
  fmt::print("config hash {}\n", cfg.hash_hex());
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on the Heisenberg group, L1 embeddings and sparsest cut relaxations"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<uint64_t> seed;
  int workers = 1;
  uint64_t mem_cap_mib = 4096;
  std::string out_dir = ".";
  bool dry_run = false;
  app.add_option("--seed", seed, "master seed (required by randomized commands)");
  app.add_option("--workers", workers, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  app.add_option("--mem-cap-mib", mem_cap_mib, "memory cap for ball construction");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_flag("--print-config", dry_run, "print the canonical config and exit");

  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& name : heis::lab::command_names()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    for (const auto& p : parameters().at(name)) sub->add_option(flag(p.key), values[name][p.key], p.help);
  }
  std::string config_file;
  auto* run = app.add_subcommand("run", "run a saved key=value config");
  run->add_option("--config", config_file, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : heis::exit_code(heis::ErrorKind::validation);
  }

  try {
    heis::lab::ExperimentConfig cfg;
    if (run->parsed()) {
      cfg = heis::lab::parse_config(heis::lab::read_text_file(config_file));
      if (seed) cfg.seed = seed;
      if (app.count("--workers")) cfg.workers = workers;
      if (app.count("--mem-cap-mib")) cfg.mem_cap_mib = mem_cap_mib;
      if (app.count("--out-dir")) cfg.out_dir = out_dir;
    } else {
      auto* sub = app.get_subcommands().front();
      cfg.command = sub->get_name();
      for (const auto& p : parameters().at(cfg.command))
        if (sub->count(flag(p.key))) cfg.params[p.key] = values[cfg.command][p.key];
      cfg.seed = seed;
      cfg.workers = workers;
      cfg.mem_cap_mib = mem_cap_mib;
      cfg.out_dir = out_dir;
    }
    return execute(cfg, dry_run);
  } catch (const heis::Error& e) {
    fmt::print(stderr, "error ({}): {}\n", heis::kind_name(e.kind()), e.what());
    return heis::exit_code(e.kind());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
