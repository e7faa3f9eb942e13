#pragma once

#include <Eigen/Dense>
#include <vector>

#include "heis/embed/metric_space.hpp"

namespace heis::embed {

struct NegTypeCertificate {
  bool yes = false;
  double min_eigenvalue = 0;
  double tolerance = 0;          // eigenvalues >= -tolerance pass
  std::vector<double> witness;   // zero-sum b with Σ b_i b_j d(i,j) > 0 when !yes
};

/// −½ J D J as a matrix, J the centering projector.
Eigen::MatrixXd double_centered(const Eigen::MatrixXd& d);

/// PSD test of −½ J D J with tolerance rel_tol * trace / n.
NegTypeCertificate is_negative_type(const MetricSpace& m, double rel_tol = 1e-8);
NegTypeCertificate is_negative_type(const Eigen::MatrixXd& d, double rel_tol = 1e-8);

/// Points x_i (rows) with |x_i - x_j|^2 = d(i,j), from a pivoted Cholesky
/// (LDL') factorization of −½ J D J with negative pivots clipped.
Eigen::MatrixXd squared_euclidean_embedding(const Eigen::MatrixXd& d);

/// Σ_ij b_i b_j d(i,j)
double quadratic_form(const Eigen::MatrixXd& d, const std::vector<double>& b);

}  // namespace heis::embed
