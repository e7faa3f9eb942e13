#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "heis/embed/metric_space.hpp"
#include "heis/embed/simplex.hpp"
#include "heis/sparsecut/instance.hpp"

namespace heis::sparsecut {

struct DualityReport {
  double d_star = 0;        // c1 distortion of the source metric
  Instance instance;        // c = d_star · beta, d = alpha
  double opt = 0;           // exhaustive minimum cut ratio
  uint64_t opt_mask = 0;
  double source_value = 0;  // Σ c q for the source metric normalized to Σ d q = 1
  double gap_lower = 0;     // opt / source_value
  double source_min_eigenvalue = 0;
  double source_triangle_violation = 0;
  bool source_feasible = false;
  bool pass = false;        // gap_lower >= d_star − 1e−3 and source feasible
};

/// Turns the dual of the c1 cut LP into a sparsest cut instance whose
/// integrality gap is at least the distortion of m.
DualityReport duality_harness(const embed::MetricSpace& m, const embed::SimplexOptions& opts = {});

std::string duality_json(const DualityReport& r);

/// |x_i − x_j|^2 for the rows of `points`.
embed::MetricSpace squared_euclidean_metric(const Eigen::MatrixXd& points);

/// Jittered bipyramid over an equilateral triangle, plus n − 5 extra points:
/// a squared-Euclidean metric (so of negative type) that violates the
/// pentagonal inequality, hence has c1 > 1. n in [5, 12].
embed::MetricSpace bipyramid_metric(int n, uint64_t seed);

}  // namespace heis::sparsecut
