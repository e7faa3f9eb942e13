#include "heis/embed/cut_lp.hpp"

#include <cmath>
#include <json.hpp>

#include "heis/core/error.hpp"

namespace heis::embed {

namespace {

bool separates(uint32_t mask, int i, int j) { return ((mask >> i) & 1u) != ((mask >> j) & 1u); }

}  // namespace

Eigen::MatrixXd cut_distances(const CutMeasure& cm) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(cm.n, cm.n);
  for (const auto& c : cm.cuts)
    for (int i = 0; i < cm.n; ++i)
      for (int j = i + 1; j < cm.n; ++j)
        if (separates(c.mask, i, j)) {
          d(i, j) += c.weight;
          d(j, i) += c.weight;
        }
  return d;
}

Eigen::MatrixXd embedding_from_cuts(const CutMeasure& cm) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(cm.n, static_cast<Eigen::Index>(cm.cuts.size()));
  for (size_t s = 0; s < cm.cuts.size(); ++s)
    for (int i = 0; i < cm.n; ++i)
      if ((cm.cuts[s].mask >> i) & 1u) x(i, static_cast<Eigen::Index>(s)) = cm.cuts[s].weight;
  return x;
}

DistortionResult c1_distortion(const MetricSpace& m, const SimplexOptions& opts) {
  validate_metric(m);
  const int n = m.size();
  if (n > kMaxCutPoints) fail(ErrorKind::validation, "c1 LP supports at most 16 points");
  DistortionResult res;
  res.alpha = Eigen::MatrixXd::Zero(n, n);
  res.beta = Eigen::MatrixXd::Zero(n, n);
  res.certificate.n = n;
  if (n == 1) {
    res.distortion = 1;
    return res;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(m.d(i, j) > 0)) fail(ErrorKind::validation, "c1 needs distinct points at positive distance");

  const uint32_t ncuts = (1u << (n - 1)) - 1;
  const int npairs = n * (n - 1) / 2;
  LinearProgram lp;
  lp.a = Eigen::MatrixXd::Zero(2 * npairs, ncuts + 1);
  lp.b = Eigen::VectorXd::Zero(2 * npairs);
  lp.c = Eigen::VectorXd::Zero(ncuts + 1);
  lp.c(ncuts) = 1;
  lp.sense.resize(2 * npairs);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++p) {
      for (uint32_t s = 0; s < ncuts; ++s)
        if (separates(s + 1, i, j)) lp.a(2 * p, s) = lp.a(2 * p + 1, s) = 1;
      lp.b(2 * p) = m.d(i, j);
      lp.sense[2 * p] = RowSense::ge;
      lp.a(2 * p + 1, ncuts) = -m.d(i, j);
      lp.sense[2 * p + 1] = RowSense::le;
    }
  LpSolution sol = solve_lp(lp, opts);
  res.status = sol.status;
  res.iterations = sol.iterations;
  if (sol.status == LpStatus::infeasible || sol.status == LpStatus::unbounded)
    fail(ErrorKind::solver, "cut LP reported infeasible or unbounded; this indicates a solver bug");
  if (sol.status == LpStatus::iteration_limit) fail(ErrorKind::non_convergence, "cut LP hit the iteration cap");
  res.distortion = sol.x(ncuts);
  for (uint32_t s = 0; s < ncuts; ++s)
    if (sol.x(s) > 0) res.certificate.cuts.push_back({s + 1, sol.x(s)});
  p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++p) {
      res.alpha(i, j) = res.alpha(j, i) = std::max(0.0, sol.y(2 * p));
      res.beta(i, j) = res.beta(j, i) = std::max(0.0, -sol.y(2 * p + 1));
    }
  // Round-off in the duals would otherwise show up as spurious tiny demands.
  for (auto* w : {&res.alpha, &res.beta}) {
    const double floor = 1e-12 * w->maxCoeff();
    *w = (w->array() < floor).select(0.0, *w);
  }
  return res;
}

ReplayReport replay_certificate(const MetricSpace& m, const CutMeasure& cm, double distortion, double tol) {
  if (cm.n != m.size()) fail(ErrorKind::validation, "certificate size mismatch");
  for (const auto& c : cm.cuts)
    if (!(c.weight >= 0) || c.mask == 0 || (c.mask >> (cm.n - 1)) != 0)
      fail(ErrorKind::validation, "certificate has an invalid cut");
  Eigen::MatrixXd e = cut_distances(cm);
  ReplayReport r;
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j) {
      const double d = m.d(i, j);
      r.lower_violation = std::max(r.lower_violation, (d - e(i, j)) / d);
      r.upper_violation = std::max(r.upper_violation, (e(i, j) - distortion * d) / d);
    }
  r.pass = r.lower_violation <= tol && r.upper_violation <= tol;
  return r;
}

std::string cut_measure_json(const CutMeasure& cm) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& c : cm.cuts) j.push_back({{"mask", c.mask}, {"weight", c.weight}});
  return j.dump();
}

}  // namespace heis::embed
