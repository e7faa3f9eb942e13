#include "heis/embed/negative_type.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "heis/core/error.hpp"

namespace heis::embed {

Eigen::MatrixXd double_centered(const Eigen::MatrixXd& d) {
  const auto n = d.rows();
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd g = -0.5 * j * d * j;
  return 0.5 * (g + g.transpose());
}

NegTypeCertificate is_negative_type(const Eigen::MatrixXd& d, double rel_tol) {
  if (d.rows() != d.cols() || d.rows() < 1) fail(ErrorKind::validation, "distance matrix must be square");
  if (!(rel_tol >= 0)) fail(ErrorKind::validation, "tolerance must be nonnegative");
  const auto n = d.rows();
  Eigen::MatrixXd g = double_centered(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  NegTypeCertificate c;
  c.min_eigenvalue = es.eigenvalues()(0);
  c.tolerance = rel_tol * std::max(g.trace(), 0.0) / static_cast<double>(n);
  c.yes = c.min_eigenvalue >= -c.tolerance;
  if (!c.yes) {
    Eigen::VectorXd v = es.eigenvectors().col(0);
    v.array() -= v.mean();
    c.witness.assign(v.data(), v.data() + n);
  }
  return c;
}

NegTypeCertificate is_negative_type(const MetricSpace& m, double rel_tol) {
  return is_negative_type(m.d, rel_tol);
}

Eigen::MatrixXd squared_euclidean_embedding(const Eigen::MatrixXd& d) {
  // G = P' L D L' P with pivoting; X = P' L sqrt(D) has X X' = G.
  Eigen::LDLT<Eigen::MatrixXd> ldlt(double_centered(d));
  Eigen::MatrixXd l = ldlt.matrixL();
  Eigen::VectorXd root = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd x = l * root.asDiagonal();
  return ldlt.transpositionsP().transpose() * x;
}

double quadratic_form(const Eigen::MatrixXd& d, const std::vector<double>& b) {
  if (static_cast<Eigen::Index>(b.size()) != d.rows()) fail(ErrorKind::validation, "size mismatch");
  Eigen::Map<const Eigen::VectorXd> v(b.data(), d.rows());
  return v.dot(d * v);
}

}  // namespace heis::embed
