#include "heis/sparsecut/duality.hpp"

#include <fmt/format.h>

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "heis/core/error.hpp"
#include "heis/core/rng.hpp"
#include "heis/embed/cut_lp.hpp"
#include "heis/embed/negative_type.hpp"
#include "heis/sparsecut/relaxation.hpp"

namespace heis::sparsecut {

DualityReport duality_harness(const embed::MetricSpace& m, const embed::SimplexOptions& opts) {
  embed::validate_metric(m);
  const int n = m.size();
  if (n < 2 || n > 12) fail(ErrorKind::validation, "duality harness needs 2 to 12 points");
  if (!embed::is_negative_type(m).yes) fail(ErrorKind::validation, "source metric is not of negative type");

  const auto lp = embed::c1_distortion(m, opts);
  DualityReport r;
  r.d_star = lp.distortion;
  const double lower = pair_sum(lp.alpha, m.d), upper = pair_sum(lp.beta, m.d);
  double worst = 0;
  for (uint64_t mask = 1; mask < (uint64_t{1} << (n - 1)); ++mask) {
    Eigen::MatrixXd cut = cut_metric(n, mask);
    worst = std::max(worst, pair_sum(lp.alpha, cut) - pair_sum(lp.beta, cut));
  }
  if (std::fabs(lower - r.d_star) > 1e-7 * r.d_star || std::fabs(upper - 1) > 1e-7 || worst > 1e-7 * r.d_star)
    fail(ErrorKind::solver, fmt::format("degenerate LP dual: sum(alpha d) = {}, sum(beta d) = {}, "
                                        "worst cut excess = {}, distortion = {}",
                                        lower, upper, worst, r.d_star));

  r.instance = make_instance(r.d_star * lp.beta, lp.alpha);
  const auto opt = opt_bruteforce(r.instance);
  r.opt = opt.value;
  r.opt_mask = opt.mask;

  Eigen::MatrixXd q = m.d / pair_sum(r.instance.d, m.d);
  r.source_value = pair_sum(r.instance.c, q);
  r.gap_lower = r.opt / r.source_value;
  const auto neg = embed::is_negative_type(q);
  r.source_min_eigenvalue = neg.min_eigenvalue;
  r.source_triangle_violation = embed::max_triangle_violation(q);
  r.source_feasible = neg.yes && r.source_triangle_violation <= 1e-9 * std::max(1.0, q.maxCoeff()) &&
                      std::fabs(pair_sum(r.instance.d, q) - 1) <= 1e-9;
  r.pass = r.source_feasible && r.gap_lower >= r.d_star - 1e-3;
  return r;
}

std::string duality_json(const DualityReport& r) {
  nlohmann::ordered_json j;
  j["d_star"] = r.d_star;
  j["opt"] = r.opt;
  j["opt_mask"] = r.opt_mask;
  j["source_value"] = r.source_value;
  j["gap_lower"] = r.gap_lower;
  j["source_min_eigenvalue"] = r.source_min_eigenvalue;
  j["source_triangle_violation"] = r.source_triangle_violation;
  j["source_feasible"] = r.source_feasible;
  j["pass"] = r.pass;
  return j.dump(2);
}

GapEstimate integrality_gap(const Instance& inst, const SdpOptions& opts) {
  const auto opt = opt_bruteforce(inst);
  const auto sdp = gl_sdp(inst, opts);
  const auto lp = lp_relaxation(inst);
  GapEstimate g;
  g.gap = opt.value / sdp.value;
  g.lower = g.gap;
  g.upper = opt.value / lp.value;
  g.converged = sdp.converged;
  return g;
}

embed::MetricSpace squared_euclidean_metric(const Eigen::MatrixXd& points) {
  const auto n = points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (points.row(i) - points.row(j)).squaredNorm();
  return embed::make_metric(std::move(d));
}

embed::MetricSpace bipyramid_metric(int n, uint64_t seed) {
  if (n < 5 || n > 12) fail(ErrorKind::validation, "bipyramid metric needs 5 to 12 points");
  Rng rng(seed);
  const int dim = 3 + (n - 5);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, dim);
    const double h = std::sqrt(rng.uniform(0.55, 0.95));
    for (int i = 0; i < 3; ++i) {
      x(i, 0) = std::cos(2 * std::numbers::pi * i / 3);
      x(i, 1) = std::sin(2 * std::numbers::pi * i / 3);
    }
    x(3, 2) = h;
    x(4, 2) = -h;
    for (int e = 5; e < n; ++e) x(e, 3 + (e - 5)) = std::sqrt(rng.uniform(1.1, 1.6));
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] += rng.uniform(-0.03, 0.03);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (x.row(i) - x.row(j)).squaredNorm();
    // Pentagonal inequality with weights (1, 1, 1, −1, −1) on the first five points.
    const double b[5] = {1, 1, 1, -1, -1};
    double pent = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) pent += b[i] * b[j] * d(i, j);
    if (pent < 0.05) continue;
    bool strict = true;
    for (int i = 0; i < n && strict; ++i)
      for (int j = 0; j < n && strict; ++j)
        for (int k = 0; k < n && strict; ++k)
          if (i != j && j != k && i != k) strict = d(i, j) + 1e-3 < d(i, k) + d(k, j);
    if (!strict) continue;
    return embed::make_metric(std::move(d));
  }
  fail(ErrorKind::solver, "bipyramid sampler found no acute configuration");
}

}  // namespace heis::sparsecut
