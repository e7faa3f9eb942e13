#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <deque>

#include "heis/core/error.hpp"
#include "heis/embed/metric_space.hpp"
#include "heis/embed/negative_type.hpp"
#include "heis/sparsecut/relaxation.hpp"

namespace heis::sparsecut {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Constraint rows: [ d'x + s = 1, s in {0} | T x + s = 0, s >= 0 | −svec(V'K(x)V) + s = 0, s PSD ]
// where K(x) = −½ J Q(x) J and V is an orthonormal basis of the zero-sum vectors.
struct Problem {
  int n = 0, np = 0, m_tri = 0, m_psd = 0, dim = 0;
  SpMat a;
  Eigen::VectorXd b, c;
};

// Lower triangle, column by column, off-diagonal entries scaled by √2.
Eigen::VectorXd svec(const Eigen::MatrixXd& s) {
  const auto m = s.rows();
  Eigen::VectorXd v(m * (m + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = j; i < m; ++i) v(k++) = i == j ? s(i, j) : std::sqrt(2.0) * s(i, j);
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, Eigen::Index m) {
  Eigen::MatrixXd s(m, m);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = j; i < m; ++i) {
      s(i, j) = s(j, i) = i == j ? v(k) : v(k) / std::sqrt(2.0);
      ++k;
    }
  return s;
}

Eigen::MatrixXd zero_sum_basis(int n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(n, 1));
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

Problem build(const Instance& inst) {
  Problem p;
  const int n = p.n = inst.n;
  p.np = n * (n - 1) / 2;
  p.m_tri = n >= 3 ? n * (n - 1) * (n - 2) / 2 : 0;
  p.dim = n - 1;
  p.m_psd = p.dim * (p.dim + 1) / 2;
  const int rows = 1 + p.m_tri + p.m_psd;
  std::vector<std::pair<int, int>> pairs;
  Eigen::MatrixXi idx = Eigen::MatrixXi::Constant(n, n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      idx(i, j) = idx(j, i) = static_cast<int>(pairs.size());
      pairs.push_back({i, j});
    }
  const double cmax = std::max(inst.c.maxCoeff(), 1e-300), dmax = inst.d.maxCoeff();
  p.c.resize(p.np);
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < p.np; ++k) {
    auto [i, j] = pairs[k];
    p.c(k) = inst.c(i, j) / cmax;
    if (inst.d(i, j) != 0) t.push_back({0, k, inst.d(i, j) / dmax});
  }
  int r = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const int e[3] = {idx(i, j), idx(i, k), idx(j, k)};
        for (int f = 0; f < 3; ++f, ++r)
          for (int g = 0; g < 3; ++g) t.push_back({r, e[g], g == f ? 1.0 : -1.0});
      }
  const Eigen::MatrixXd v = zero_sum_basis(n);
  for (int k = 0; k < p.np; ++k) {
    auto [i, j] = pairs[k];
    // V'JQJV = V'QV for Q = e_i e_j' + e_j e_i'.
    Eigen::MatrixXd kk = -0.5 * (v.row(i).transpose() * v.row(j) + v.row(j).transpose() * v.row(i));
    Eigen::VectorXd col = svec(kk);
    for (Eigen::Index e = 0; e < col.size(); ++e)
      if (col(e) != 0) t.push_back({r + static_cast<int>(e), k, -col(e)});
  }
  p.a.resize(rows, p.np);
  p.a.setFromTriplets(t.begin(), t.end());
  p.b = Eigen::VectorXd::Zero(rows);
  p.b(0) = 1;
  return p;
}

void project(const Problem& p, Eigen::VectorXd& s) {
  s(0) = 0;
  for (int i = 1; i <= p.m_tri; ++i) s(i) = std::max(s(i), 0.0);
  if (p.dim == 0) return;
  const int off = 1 + p.m_tri;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(smat(s.segment(off, p.m_psd), p.dim));
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  s.segment(off, p.m_psd) = svec(es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose());
}

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

RelaxationResult gl_sdp(const Instance& inst, const SdpOptions& opts) {
  validate_instance(inst);
  const int n = inst.n;
  if (n > 16) fail(ErrorKind::validation, "SDP relaxation supports at most 16 points");
  if (!(opts.tol > 0) || !(opts.rho > 0) || !(opts.sigma > 0) || opts.iter_cap < 1 || opts.window < 1 ||
      !(opts.relaxation > 0 && opts.relaxation < 2))
    fail(ErrorKind::validation, "bad SDP options");
  const Problem p = build(inst);
  const SpMat at = p.a.transpose();
  const auto rows = p.a.rows();

  double rho = opts.rho;
  Eigen::VectorXd rvec(rows);
  Eigen::LLT<Eigen::MatrixXd> llt;
  auto factor = [&] {
    rvec.setConstant(rho);
    rvec(0) = 1e3 * rho;
    Eigen::MatrixXd m = Eigen::MatrixXd(at * rvec.asDiagonal() * p.a);
    m.diagonal().array() += opts.sigma;
    llt.compute(m);
    if (llt.info() != Eigen::Success) fail(ErrorKind::solver, "SDP linear system factorization failed");
  };
  factor();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(p.np), s = Eigen::VectorXd::Zero(rows), y = Eigen::VectorXd::Zero(rows);
  const double alpha = opts.relaxation;
  std::deque<double> history;  // objective at each check
  const int64_t check_every = 25;
  double r_prim = 0, r_dual = 0;
  bool converged = false;
  int64_t it = 0;
  while (it < opts.iter_cap) {
    ++it;
    Eigen::VectorXd rhs = opts.sigma * x - p.c + at * (rvec.cwiseProduct(p.b - s) + y);
    Eigen::VectorXd xt = llt.solve(rhs);
    Eigen::VectorXd st = p.b - p.a * xt;
    x = alpha * xt + (1 - alpha) * x;
    Eigen::VectorXd sr = alpha * st + (1 - alpha) * s;
    Eigen::VectorXd sn = sr + y.cwiseQuotient(rvec);
    project(p, sn);
    y += rvec.cwiseProduct(sr - sn);
    s = std::move(sn);
    if (it % check_every) continue;

    Eigen::VectorXd ax = p.a * x, aty = at * y;
    r_prim = inf_norm(ax + s - p.b);
    r_dual = inf_norm(p.c - aty);
    const double prim_scale = std::max({inf_norm(ax), inf_norm(s), 1.0});
    const double dual_scale = std::max({inf_norm(p.c), inf_norm(aty), 1e-300});
    const double obj = p.c.dot(x);
    history.push_back(obj);
    const auto window_checks = static_cast<size_t>((opts.window + check_every - 1) / check_every);
    if (history.size() > window_checks + 1) history.pop_front();
    const bool stationary = history.size() == window_checks + 1 &&
                            std::fabs(history.back() - history.front()) <= opts.stationarity * std::max(std::fabs(obj), 1e-12);
    if (r_prim <= opts.tol * prim_scale && r_dual <= opts.tol * dual_scale && stationary) {
      converged = true;
      break;
    }
    if (it % (4 * check_every) == 0) {
      const double ratio = std::sqrt((r_prim / prim_scale) / std::max(r_dual / dual_scale, 1e-300));
      if (ratio > 5 || ratio < 0.2) {
        rho = std::clamp(rho * ratio, 1e-6, 1e6);
        factor();
      }
    }
  }

  // Round to an exactly feasible point: clip the Gram matrix, rebuild q from it,
  // lift every distance by the worst triangle violation (adds a PSD multiple of J),
  // then renormalize.
  const double dmax = inst.d.maxCoeff();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0, k = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) q(i, j) = q(j, i) = x(k) / dmax;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(embed::double_centered(q));
  Eigen::MatrixXd g = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() * es.eigenvectors().transpose();
  auto distances = [&](const Eigen::MatrixXd& gram) {
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) = i == j ? 0.0 : gram(i, i) + gram(j, j) - 2 * gram(i, j);
    return out;
  };
  q = distances(g);
  const double lift = embed::max_triangle_violation(q);
  if (lift > 0) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    g += 0.5 * lift * j;
    q = distances(g);
  }
  const double norm = pair_sum(inst.d, q);
  if (!(norm > 0)) fail(ErrorKind::solver, "SDP iterate collapsed to zero demand");
  g /= norm;
  q = distances(g);

  RelaxationResult r;
  r.kind = RelaxationKind::sdp;
  r.gram = g;
  r.metric = q;
  r.value = pair_sum(inst.c, q);
  r.iterations = it;
  r.converged = converged;
  r.residuals.min_eigenvalue = embed::is_negative_type(q).min_eigenvalue;
  r.residuals.max_triangle_violation = embed::max_triangle_violation(q);
  r.residuals.normalization_error = std::fabs(pair_sum(inst.d, q) - 1);
  r.residuals.primal = r_prim;
  r.residuals.dual = r_dual;
  return r;
}

}  // namespace heis::sparsecut
