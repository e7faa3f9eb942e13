#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "heis/embed/metric_space.hpp"
#include "heis/embed/simplex.hpp"

namespace heis::embed {

struct Cut {
  uint32_t mask = 0;  // subset S; the last point is never in S
  double weight = 0;
};

struct CutMeasure {
  int n = 0;
  std::vector<Cut> cuts;
};

inline constexpr int kMaxCutPoints = 16;

/// Σ_S λ_S δ_S(i, j) for all pairs.
Eigen::MatrixXd cut_distances(const CutMeasure& cm);

/// Point i -> (λ_S 1_S(i))_S, one coordinate per cut.
Eigen::MatrixXd embedding_from_cuts(const CutMeasure& cm);

struct DistortionResult {
  double distortion = 0;
  CutMeasure certificate;
  /// Pair duals, indexed like pair_index: alpha on d <= Σλδ, beta on Σλδ <= t d.
  Eigen::MatrixXd alpha, beta;
  LpStatus status = LpStatus::optimal;
  int64_t iterations = 0;
};

/// Exact L1 distortion by the cut-cone LP over all 2^{n-1} - 1 cuts:
/// minimize t subject to d <= Σ λ_S δ_S <= t d, λ >= 0.
DistortionResult c1_distortion(const MetricSpace& m, const SimplexOptions& opts = {});

struct ReplayReport {
  bool pass = false;
  double lower_violation = 0;  // max (d - Σλδ) / d
  double upper_violation = 0;  // max (Σλδ - D d) / d
};

/// Independent check of d <= Σλδ <= D d within tol (relative to d).
ReplayReport replay_certificate(const MetricSpace& m, const CutMeasure& cm, double distortion,
                                double tol = 1e-7);

/// [{"mask": .., "weight": ..}, ...]
std::string cut_measure_json(const CutMeasure& cm);

}  // namespace heis::embed
