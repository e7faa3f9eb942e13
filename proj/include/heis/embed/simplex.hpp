#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace heis::embed {

enum class RowSense { le, ge, eq };

/// minimize c'x subject to A x (sense) b, x >= 0.
struct LinearProgram {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<RowSense> sense;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd x;
  /// Row duals: c - A'y >= 0 at optimum, y >= 0 on ge rows, y <= 0 on le rows.
  Eigen::VectorXd y;
  double objective = 0;
  int64_t iterations = 0;
  int64_t bland_pivots = 0;
};

struct SimplexOptions {
  int64_t max_iterations = 1000000;
  double tolerance = 1e-9;
  /// Consecutive degenerate pivots before switching from Dantzig to Bland pricing.
  int64_t degenerate_limit = 50;
};

/// Two-phase dense tableau simplex. The final basis is re-solved with an LU
/// factorization of the original columns to clean up x and y.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

}  // namespace heis::embed
