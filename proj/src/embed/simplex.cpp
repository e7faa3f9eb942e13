#include "heis/embed/simplex.hpp"

#include <cmath>

#include "heis/core/error.hpp"

namespace heis::embed {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Solver {
  Eigen::Index m = 0, n = 0, ncol = 0;  // rows, structural columns, all columns
  Tableau t;                            // m x (ncol + 1), last column is the rhs
  Eigen::VectorXd cost;                 // reduced costs, size ncol + 1 (last = -objective)
  std::vector<Eigen::Index> basis;
  Eigen::Index first_artificial = 0;
  const SimplexOptions& opts;
  int64_t iterations = 0, bland = 0;

  explicit Solver(const SimplexOptions& o) : opts(o) {}

  void pivot(Eigen::Index r, Eigen::Index q) {
    t.row(r) /= t(r, q);
    for (Eigen::Index i = 0; i < m; ++i)
      if (i != r && t(i, q) != 0) t.row(i) -= t(i, q) * t.row(r);
    if (cost(q) != 0) cost -= cost(q) * t.row(r).transpose();
    basis[r] = q;
  }

  LpStatus run(Eigen::Index allowed) {
    int64_t degenerate = 0;
    const double tol = opts.tolerance;
    for (;;) {
      if (iterations >= opts.max_iterations) return LpStatus::iteration_limit;
      const bool use_bland = degenerate > opts.degenerate_limit;
      Eigen::Index q = -1;
      double best = -tol;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (cost(j) < best) {
          q = j;
          if (use_bland) break;
          best = cost(j);
        }
      }
      if (q < 0) return LpStatus::optimal;
      Eigen::Index r = -1;
      double ratio = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t(i, q) <= tol) continue;
        double v = t(i, ncol) / t(i, q);
        if (r < 0 || v < ratio - 1e-12 * std::max(1.0, std::fabs(ratio)) ||
            (v <= ratio + 1e-12 * std::max(1.0, std::fabs(ratio)) && basis[i] < basis[r])) {
          r = i;
          ratio = v;
        }
      }
      if (r < 0) return LpStatus::unbounded;
      degenerate = ratio <= tol ? degenerate + 1 : 0;
      bland += use_bland;
      pivot(r, q);
      ++iterations;
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  const Eigen::Index m = lp.a.rows(), n = lp.a.cols();
  if (lp.b.size() != m || lp.c.size() != n || static_cast<Eigen::Index>(lp.sense.size()) != m)
    fail(ErrorKind::validation, "linear program dimensions do not match");
  if (!lp.a.allFinite() || !lp.b.allFinite() || !lp.c.allFinite())
    fail(ErrorKind::validation, "linear program has non-finite data");

  // Standard form: flip rows with b < 0, add slack (le), surplus (ge) and
  // artificial (ge, eq) columns.
  std::vector<double> flip(m);
  std::vector<RowSense> sense(lp.sense);
  Eigen::Index nslack = 0, nart = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    flip[i] = lp.b(i) < 0 ? -1.0 : 1.0;
    if (flip[i] < 0 && sense[i] != RowSense::eq) sense[i] = sense[i] == RowSense::le ? RowSense::ge : RowSense::le;
    nslack += sense[i] != RowSense::eq;
    nart += sense[i] != RowSense::le;
  }
  Solver s(opts);
  s.m = m;
  s.n = n;
  s.ncol = n + nslack + nart;
  s.first_artificial = n + nslack;
  s.t = Tableau::Zero(m, s.ncol + 1);
  s.basis.assign(m, -1);
  Eigen::Index sc = n, ac = s.first_artificial;
  std::vector<Eigen::Index> identity_col(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    s.t.row(i).head(n) = flip[i] * lp.a.row(i);
    s.t(i, s.ncol) = flip[i] * lp.b(i);
    if (sense[i] == RowSense::le) {
      s.t(i, sc) = 1;
      identity_col[i] = s.basis[i] = sc++;
    } else {
      if (sense[i] == RowSense::ge) s.t(i, sc++) = -1;
      s.t(i, ac) = 1;
      identity_col[i] = s.basis[i] = ac++;
    }
  }
  // Logical columns are signed unit vectors; remember them for the final re-solve.
  std::vector<std::pair<Eigen::Index, double>> logical(s.ncol - n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = n; j < s.ncol; ++j)
      if (s.t(i, j) != 0) logical[j - n] = {i, s.t(i, j)};
  Eigen::VectorXd b_std = s.t.col(s.ncol);

  LpSolution sol;
  // Phase 1: minimize the sum of artificials.
  s.cost = Eigen::VectorXd::Zero(s.ncol + 1);
  for (Eigen::Index j = s.first_artificial; j < s.ncol; ++j) s.cost(j) = 1;
  for (Eigen::Index i = 0; i < m; ++i)
    if (s.basis[i] >= s.first_artificial) s.cost -= s.t.row(i).transpose();
  if (nart > 0) {
    LpStatus st = s.run(s.first_artificial);
    if (st == LpStatus::iteration_limit) {
      sol.status = st;
      sol.iterations = s.iterations;
      return sol;
    }
    const double infeas = -s.cost(s.ncol);
    if (infeas > 1e-7 * std::max(1.0, lp.b.lpNorm<Eigen::Infinity>())) {
      sol.status = LpStatus::infeasible;
      sol.iterations = s.iterations;
      return sol;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      if (s.basis[i] < s.first_artificial) continue;
      Eigen::Index q = -1;
      for (Eigen::Index j = 0; j < s.first_artificial; ++j)
        if (std::fabs(s.t(i, j)) > 1e-7 && (q < 0 || std::fabs(s.t(i, j)) > std::fabs(s.t(i, q)))) q = j;
      if (q >= 0) s.pivot(i, q);  // otherwise the row is redundant
    }
  }
  // Phase 2.
  s.cost = Eigen::VectorXd::Zero(s.ncol + 1);
  s.cost.head(n) = lp.c;
  for (Eigen::Index i = 0; i < m; ++i) {
    double cb = s.basis[i] < n ? lp.c(s.basis[i]) : 0.0;
    if (cb != 0) s.cost -= cb * s.t.row(i).transpose();
  }
  LpStatus st = s.run(s.first_artificial);
  sol.status = st;
  sol.iterations = s.iterations;
  sol.bland_pivots = s.bland;
  if (st != LpStatus::optimal) return sol;

  // Re-solve with the final basis on the original data.
  Eigen::MatrixXd bm(m, m);
  Eigen::VectorXd cb(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = s.basis[i];
    if (j < n) {
      for (Eigen::Index r = 0; r < m; ++r) bm(r, i) = flip[r] * lp.a(r, j);
    } else {
      bm.col(i).setZero();
      bm(logical[j - n].first, i) = logical[j - n].second;
    }
    cb(i) = s.basis[i] < n ? lp.c(s.basis[i]) : 0.0;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
  Eigen::VectorXd xb = lu.solve(b_std);
  Eigen::VectorXd ys = lu.transpose().solve(cb);
  if (!xb.allFinite() || !ys.allFinite()) {
    // fall back to the tableau: y_i = -(reduced cost of the identity column of row i)
    xb = s.t.col(s.ncol);
    for (Eigen::Index i = 0; i < m; ++i) ys(i) = -s.cost(identity_col[i]);
  }
  sol.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (s.basis[i] < n) sol.x(s.basis[i]) = std::max(0.0, xb(i));
  sol.y.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) sol.y(i) = flip[i] * ys(i);
  sol.objective = lp.c.dot(sol.x);
  return sol;
}

}  // namespace heis::embed
