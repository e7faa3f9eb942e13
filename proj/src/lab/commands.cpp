#include "heis/lab/commands.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "heis/cayley/ball.hpp"
#include "heis/continuum/lines.hpp"
#include "heis/continuum/profile.hpp"
#include "heis/continuum/voxelize.hpp"
#include "heis/core/error.hpp"
#include "heis/core/parallel.hpp"
#include "heis/embed/cut_lp.hpp"
#include "heis/embed/negative_type.hpp"
#include "heis/perimeter/functional.hpp"
#include "heis/perimeter/generate.hpp"
#include "heis/perimeter/perimeter.hpp"
#include "heis/sparsecut/duality.hpp"
#include "heis/sparsecut/relaxation.hpp"

namespace heis::lab {

namespace {

using json = nlohmann::ordered_json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

cayley::BallOptions ball_options(const ExperimentConfig& cfg) {
  cayley::BallOptions o;
  o.mem_cap_bytes = static_cast<size_t>(cfg.mem_cap_mib) << 20;
  return o;
}

int rank_param(const ExperimentConfig& cfg, int fallback = 2) {
  const auto k = cfg.get_int("k", fallback);
  if (k < 1 || k > 8) fail(ErrorKind::validation, "k must be in [1, 8]");
  return static_cast<int>(k);
}

CommandResult cmd_growth(const ExperimentConfig& cfg) {
  cfg.check_keys({"k", "r_max"});
  const int k = rank_param(cfg);
  const auto r_max = cfg.get_int("r_max", 8);
  if (r_max < 0 || r_max > 255) fail(ErrorKind::validation, "r_max must be in [0, 255]");
  auto rows = cayley::growth_table(k, static_cast<int>(r_max), ball_options(cfg));
  CommandResult r;
  r.files.push_back({"growth.csv", cayley::growth_csv(rows)});
  r.summary = fmt::format("|B_{}| = {}", rows.back().r, rows.back().count);
  return r;
}

CommandResult cmd_isoperim(const ExperimentConfig& cfg) {
  cfg.check_keys({"k", "corpus"});
  const int k = rank_param(cfg);
  const std::string corpus = cfg.get("corpus", "default");
  std::vector<perimeter::SetSpec> specs;
  if (corpus == "default") {
    specs = perimeter::default_corpus(cfg.require_seed());
  } else {
    std::string item;
    std::istringstream in(corpus);
    while (std::getline(in, item, ';'))
      if (!item.empty()) specs.push_back(perimeter::parse_set_spec(item));
    if (specs.empty()) fail(ErrorKind::validation, "corpus is empty");
  }
  struct Row {
    uint64_t size = 0, h = 0;
    double v = 0, v_err = 0, ratio = 0;
  };
  std::vector<Row> rows(specs.size());
  parallel_tasks(specs.size(), cfg.workers, [&](size_t i) {
    auto s = perimeter::generate_set(k, specs[i]);
    Row& row = rows[i];
    row.size = s.size();
    row.h = perimeter::horizontal_perimeter(s);
    auto v = perimeter::vertical_perimeter(s);
    row.v = v.value;
    row.v_err = v.error;
    row.ratio = v.value / static_cast<double>(row.h);
  });
  std::string csv = "set_id,spec,size,h_perim,v_perim,v_error,ratio\n";
  size_t best = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& w = rows[i];
    csv += fmt::format("{},\"{}\",{},{},{},{},{}\n", i, specs[i].text(), w.size, w.h, w.v, w.v_err, w.ratio);
    if (w.ratio > rows[best].ratio) best = i;
  }
  json summary;
  summary["k"] = k;
  summary["sets"] = rows.size();
  summary["max_ratio"] = rows[best].ratio;
  summary["argmax_set_id"] = best;
  summary["argmax_spec"] = specs[best].text();
  CommandResult r;
  r.files.push_back({"isoperim.csv", csv});
  r.files.push_back({"isoperim_summary.json", dump(summary)});
  r.summary = fmt::format("max ratio {} at set {} ({})", rows[best].ratio, best, specs[best].text());
  return r;
}

CommandResult cmd_box_profile(const ExperimentConfig& cfg) {
  cfg.check_keys({"k", "r", "s_min", "s_max", "ds", "mc_samples"});
  const int k = rank_param(cfg);
  const double rad = cfg.get_double("r", 1), s0 = cfg.get_double("s_min", -4), s1 = cfg.get_double("s_max", 6),
               ds = cfg.get_double("ds", 0.25);
  const auto mc = cfg.get_u64("mc_samples", 0);
  const continuum::BoxSpec box{k, rad};
  const auto grid = continuum::s_grid(s0, s1, ds);
  const auto exact = continuum::box_profile(box, grid);
  CommandResult r;
  r.files.push_back({"box_profile_exact.csv", continuum::profile_csv(exact)});
  std::string plot = fmt::format(
      "set datafile separator ','\n"
      "set key autotitle columnhead\n"
      "set xlabel 's'\n"
      "set ylabel 'vertical profile'\n"
      "set logscale y 2\n"
      "set title 'box C_r, k = {}, r = {}'\n"
      "plot 'box_profile_exact.csv' using 1:2 with lines title 'exact'",
      k, rad);
  if (mc > 0) {
    // U covers E and E Z^{4^s} for every grid point.
    const double shift = std::pow(4.0, s1);
    continuum::QuasiBall u{ContinuousPoint::along_z(k, shift / 2), 2 * k * rad + 4 * std::sqrt(rad * rad + shift / 2)};
    auto p = continuum::mc_vertical_profile(continuum::box_indicator(box), u, grid,
                                            {static_cast<size_t>(mc), cfg.require_seed(), cfg.workers});
    r.files.push_back({"box_profile_mc.csv", continuum::profile_csv(p)});
    plot += ", \\\n     'box_profile_mc.csv' using 1:2:3 with yerrorbars title 'monte carlo'";
  }
  plot += "\n";
  r.files.push_back({"box_profile.gp", plot});
  double peak_s = exact.samples.front().s, peak = -1;
  for (const auto& x : exact.samples)
    if (x.value > peak) {
      peak = x.value;
      peak_s = x.s;
    }
  r.summary = fmt::format("peak {} at s = {}; L2 norm {}", peak, peak_s, continuum::box_l2_norm(box));
  return r;
}

continuum::QuasiBall ball_param(const ExperimentConfig& cfg, int k, double radius_fallback) {
  const double radius = cfg.get_double("radius", radius_fallback);
  if (!(radius > 0)) fail(ErrorKind::validation, "radius must be positive");
  return continuum::centered_ball(k, radius);
}

CommandResult cmd_nm(const ExperimentConfig& cfg) {
  cfg.check_keys({"k", "preset", "radius", "n_lines", "resolution"});
  const int k = rank_param(cfg);
  const std::string name = cfg.get("preset", "halfspace");
  continuum::NmOptions o;
  o.n_lines = cfg.get_u64("n_lines", 10000);
  o.resolution = cfg.get_double("resolution", 0);
  o.seed = cfg.require_seed();
  o.workers = cfg.workers;
  auto rep = continuum::nonmonotonicity(continuum::preset(name, k), ball_param(cfg, k, 4), o);
  CommandResult r;
  r.files.push_back({"nm.json", continuum::nm_report_json(rep) + "\n"});
  r.summary = fmt::format("NM({}) = {} +- {}", name, rep.nm, rep.stderr_);
  return r;
}

CommandResult cmd_voxelize(const ExperimentConfig& cfg) {
  cfg.check_keys({"k", "preset", "rho", "half_width", "w_half_width", "samples"});
  const int k = rank_param(cfg);
  const std::string name = cfg.get("preset", "box");
  const double rho = cfg.get_double("rho", 0.25);
  const auto hw = cfg.get_int("half_width", 5), ww = cfg.get_int("w_half_width", 32);
  if (hw < 0 || ww < 0) fail(ErrorKind::validation, "half widths must be nonnegative");
  continuum::LatticeRegion region = continuum::cube_region(k, hw);
  region.lo.back() = -ww;
  region.hi.back() = ww;
  continuum::VoxelOptions o;
  o.samples_per_cell = static_cast<int>(cfg.get_int("samples", 33));
  o.seed = cfg.require_seed();
  o.workers = cfg.workers;
  auto set = continuum::voxelize(continuum::preset(name, k), rho, region, o);
  std::string cells;
  for (const auto& g : set.members()) cells += to_string(g) + "\n";
  json summary;
  summary["preset"] = name;
  summary["k"] = k;
  summary["rho"] = rho;
  summary["region_cells"] = region.count();
  summary["size"] = set.size();
  if (!set.empty()) {
    const auto h = perimeter::horizontal_perimeter(set);
    const auto v = perimeter::vertical_perimeter(set);
    summary["h_perim"] = h;
    summary["v_perim"] = v.value;
    summary["v_error"] = v.error;
    summary["ratio"] = h > 0 ? json(v.value / static_cast<double>(h)) : json(nullptr);
  }
  CommandResult r;
  r.files.push_back({"voxels.txt", cells});
  r.files.push_back({"voxelize.json", dump(summary)});
  r.summary = fmt::format("{} cells of {}", set.size(), region.count());
  return r;
}

embed::MetricSpace metric_param(const ExperimentConfig& cfg) {
  const std::string file = cfg.get("metric", "");
  if (!file.empty()) return embed::parse_metric(read_text_file(file));
  const int k = rank_param(cfg);
  const auto radius = cfg.get_int("r", 1);
  if (radius < 0 || radius > 64) fail(ErrorKind::validation, "r must be in [0, 64]");
  const auto m = cfg.get_int("subsample", 0);
  std::optional<embed::FarthestPoint> sub;
  if (m > 0) sub = embed::FarthestPoint{static_cast<int>(m), cfg.require_seed()};
  return embed::ball_metric(k, static_cast<int>(radius), sub, ball_options(cfg));
}

CommandResult cmd_c1(const ExperimentConfig& cfg) {
  cfg.check_keys({"metric", "k", "r", "subsample"});
  auto m = metric_param(cfg);
  auto res = embed::c1_distortion(m);
  auto replay = embed::replay_certificate(m, res.certificate, res.distortion);
  auto neg = embed::is_negative_type(m);
  json j;
  j["n"] = m.size();
  j["distortion"] = res.distortion;
  j["certificate"] = json::parse(embed::cut_measure_json(res.certificate));
  j["replay"] = {{"pass", replay.pass},
                 {"lower_violation", replay.lower_violation},
                 {"upper_violation", replay.upper_violation}};
  j["negative_type"] = {{"yes", neg.yes}, {"min_eigenvalue", neg.min_eigenvalue}};
  j["lp_iterations"] = res.iterations;
  CommandResult r;
  r.files.push_back({"c1.json", dump(j)});
  r.summary = fmt::format("c1 = {} on {} points; replay {}", res.distortion, m.size(), replay.pass ? "pass" : "FAIL");
  if (!replay.pass) r.exit_code = exit_code(ErrorKind::solver);
  return r;
}

CommandResult cmd_sparsest_cut(const ExperimentConfig& cfg) {
  cfg.check_keys({"instance", "n", "sdp_tol", "sdp_iter_cap"});
  const std::string file = cfg.get("instance", "");
  sparsecut::Instance inst;
  if (!file.empty()) {
    inst = sparsecut::parse_instance(read_text_file(file));
  } else {
    inst = sparsecut::random_instance(static_cast<int>(cfg.get_int("n", 6)), cfg.require_seed());
  }
  sparsecut::SdpOptions so;
  so.tol = cfg.get_double("sdp_tol", so.tol);
  so.iter_cap = cfg.get_int("sdp_iter_cap", so.iter_cap);
  const auto opt = sparsecut::opt_bruteforce(inst);
  const auto lp = sparsecut::lp_relaxation(inst);
  const auto sdp = sparsecut::gl_sdp(inst, so);
  json j;
  j["n"] = inst.n;
  j["opt"] = json::parse(sparsecut::result_json(opt));
  j["lp"] = json::parse(sparsecut::result_json(lp));
  j["sdp"] = json::parse(sparsecut::result_json(sdp));
  j["gap"] = {{"value", opt.value / sdp.value}, {"lower", opt.value / sdp.value}, {"upper", opt.value / lp.value}};
  j["sandwich"] = lp.value <= sdp.value + 1e-4 && sdp.value <= opt.value + 1e-4;
  CommandResult r;
  r.files.push_back({"sparsest_cut.json", dump(j)});
  if (!file.empty()) r.files.push_back({"instance.txt", sparsecut::instance_to_text(inst)});
  r.summary = fmt::format("OPT {} LP {} SDP {}{}", opt.value, lp.value, sdp.value, sdp.converged ? "" : " (not converged)");
  if (!sdp.converged) r.exit_code = exit_code(ErrorKind::non_convergence);
  return r;
}

CommandResult cmd_duality(const ExperimentConfig& cfg) {
  cfg.check_keys({"metric", "n"});
  const std::string file = cfg.get("metric", "");
  embed::MetricSpace m = file.empty() ? sparsecut::bipyramid_metric(static_cast<int>(cfg.get_int("n", 5)), cfg.require_seed())
                                      : embed::parse_metric(read_text_file(file));
  auto rep = sparsecut::duality_harness(m);
  CommandResult r;
  r.files.push_back({"duality_instance.txt", sparsecut::instance_to_text(rep.instance)});
  r.files.push_back({"duality.json", sparsecut::duality_json(rep) + "\n"});
  if (file.empty()) r.files.push_back({"source_metric.txt", embed::metric_to_text(m)});
  r.summary = fmt::format("c1 = {}, OPT/SDP >= {}", rep.d_star, rep.gap_lower);
  if (!rep.pass) r.exit_code = exit_code(ErrorKind::solver);
  return r;
}

CommandResult cmd_poincare(const ExperimentConfig& cfg) {
  cfg.check_keys({"k", "set"});
  const int k = rank_param(cfg);
  const auto spec = perimeter::parse_set_spec(cfg.get("set", "ball(2)"));
  auto set = perimeter::generate_set(k, spec);
  auto sides = perimeter::poincare_sides(perimeter::LatticeFunction::indicator(set));
  const auto h = perimeter::horizontal_perimeter(set);
  const auto v = perimeter::vertical_perimeter(set);
  json j;
  j["set"] = spec.text();
  j["k"] = k;
  j["size"] = set.size();
  j["lhs"] = sides.lhs;
  j["rhs"] = sides.rhs;
  j["ratio"] = sides.lhs / sides.rhs;
  j["v_perim"] = v.value;
  j["v_error"] = v.error;
  j["h_perim"] = h;
  CommandResult r;
  r.files.push_back({"poincare.json", dump(j)});
  r.summary = fmt::format("lhs {} rhs {}", sides.lhs, sides.rhs);
  return r;
}

const std::map<std::string, std::function<CommandResult(const ExperimentConfig&)>>& table() {
  static const std::map<std::string, std::function<CommandResult(const ExperimentConfig&)>> t{
      {"growth", cmd_growth},     {"isoperim", cmd_isoperim}, {"box-profile", cmd_box_profile},
      {"nm", cmd_nm},             {"voxelize", cmd_voxelize}, {"c1", cmd_c1},
      {"sparsest-cut", cmd_sparsest_cut}, {"duality", cmd_duality}, {"poincare", cmd_poincare}};
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"growth", "isoperim", "box-profile", "nm",      "voxelize",
                                              "c1",     "sparsest-cut", "duality", "poincare"};
  return names;
}

CommandResult run_command(const ExperimentConfig& cfg) {
  auto it = table().find(cfg.command);
  if (it == table().end()) fail(ErrorKind::validation, fmt::format("unknown command '{}'", cfg.command));
  if (cfg.workers < 1) fail(ErrorKind::validation, "workers must be positive");
  return it->second(cfg);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::validation, fmt::format("cannot read {}", path));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_outputs(const ExperimentConfig& cfg, const CommandResult& r, double wall_time_s) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) fail(ErrorKind::resource, fmt::format("cannot create {}: {}", cfg.out_dir, ec.message()));
  const std::string record = run_record_json(cfg, r.files, wall_time_s);
  auto put = [&](const std::string& name, const std::string& content) {
    std::ofstream out(fs::path(cfg.out_dir) / name, std::ios::binary);
    out << content;
    if (!out) fail(ErrorKind::resource, fmt::format("cannot write {}", name));
  };
  for (const auto& f : r.files) {
    put(f.name, f.content);
    put(f.name + ".run.json", record);
  }
}

}  // namespace heis::lab
