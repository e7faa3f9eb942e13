#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "heis/core/error.hpp"
#include "heis/embed/metric_space.hpp"
#include "heis/sparsecut/relaxation.hpp"

namespace heis::sparsecut {

namespace {

// Facet q(a) <= q(b) + q(c), given as pair indices.
using Facet = std::array<int, 3>;

struct PairIndex {
  int n;
  int operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }
};

std::vector<Facet> all_facets(int n) {
  PairIndex p{n};
  std::vector<Facet> f;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        f.push_back({p(i, j), p(i, k), p(j, k)});
        f.push_back({p(i, k), p(i, j), p(j, k)});
        f.push_back({p(j, k), p(i, j), p(i, k)});
      }
  return f;
}

double violation(const Facet& f, const Eigen::VectorXd& x) { return x(f[0]) - x(f[1]) - x(f[2]); }

}  // namespace

RelaxationResult lp_relaxation(const Instance& inst, const LpOptions& opts) {
  validate_instance(inst);
  const int n = inst.n;
  if (n > 64) fail(ErrorKind::validation, "LP relaxation supports at most 64 points");
  const int np = n * (n - 1) / 2;
  PairIndex p{n};
  const std::vector<Facet> facets = all_facets(n);
  const bool eager = static_cast<int64_t>(facets.size()) <= opts.eager_facets;
  std::vector<Facet> active = eager ? facets : std::vector<Facet>{};

  Eigen::VectorXd cost(np), dem(np);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cost(p(i, j)) = inst.c(i, j);
      dem(p(i, j)) = inst.d(i, j);
    }

  RelaxationResult r;
  r.kind = RelaxationKind::lp;
  r.iterations = 0;
  Eigen::VectorXd x;
  // Solved through its dual, max u0 s.t. u0 d − T'u <= c, u >= 0: one row per
  // pair, one column per facet, and the slack basis is feasible. The pair
  // duals give q; facets are added as columns when they are not all eager.
  for (int round = 0;; ++round) {
    if (round >= opts.max_rounds) fail(ErrorKind::non_convergence, "LP relaxation: too many facet rounds");
    embed::LinearProgram lp;
    const auto cols = static_cast<Eigen::Index>(active.size()) + 1;
    lp.a = Eigen::MatrixXd::Zero(np, cols);
    lp.b = cost;
    lp.c = Eigen::VectorXd::Zero(cols);
    lp.c(0) = -1;
    lp.sense.assign(np, embed::RowSense::le);
    lp.a.col(0) = dem;
    for (size_t f = 0; f < active.size(); ++f) {
      lp.a(active[f][0], f + 1) -= 1;
      lp.a(active[f][1], f + 1) += 1;
      lp.a(active[f][2], f + 1) += 1;
    }
    auto sol = embed::solve_lp(lp, opts.simplex);
    r.iterations += sol.iterations;
    if (sol.status == embed::LpStatus::iteration_limit)
      fail(ErrorKind::non_convergence, "LP relaxation hit the simplex iteration cap");
    if (sol.status != embed::LpStatus::optimal)
      fail(ErrorKind::solver, "LP relaxation reported infeasible or unbounded");
    x = (-sol.y).cwiseMax(0.0);
    const double norm = dem.dot(x);
    if (!(norm > 0)) fail(ErrorKind::solver, "LP relaxation dual has zero demand");
    x /= norm;
    if (eager) break;
    const double tol = 1e-10 * std::max(1.0, x.maxCoeff());
    std::vector<std::pair<double, size_t>> viol;
    for (size_t f = 0; f < facets.size(); ++f) {
      double v = violation(facets[f], x);
      if (v > tol) viol.push_back({-v, f});
    }
    if (viol.empty()) break;
    std::sort(viol.begin(), viol.end());
    viol.resize(std::min<size_t>(viol.size(), std::max<size_t>(64, static_cast<size_t>(np))));
    for (auto [v, f] : viol) active.push_back(facets[f]);
  }

  r.metric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r.metric(i, j) = r.metric(j, i) = x(p(i, j));
  r.value = pair_sum(inst.c, r.metric);
  r.residuals.max_triangle_violation = embed::max_triangle_violation(r.metric);
  r.residuals.normalization_error = std::fabs(pair_sum(inst.d, r.metric) - 1);
  return r;
}

}  // namespace heis::sparsecut
