#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heis/cayley/ball.hpp"

namespace heis::embed {

/// Finite metric space given by its distance matrix.
struct MetricSpace {
  Eigen::MatrixXd d;
  std::vector<std::string> labels;  // empty or one per point

  int size() const { return static_cast<int>(d.rows()); }
  double operator()(int i, int j) const { return d(i, j); }
};

/// Checks exact symmetry, zero diagonal, finite nonnegative entries and the
/// triangle inequality within 1e-9 times the largest distance.
void validate_metric(const MetricSpace& m);
MetricSpace make_metric(Eigen::MatrixXd d, std::vector<std::string> labels = {});

/// Largest d(i,k) + d(k,j) violation d(i,j) - d(i,k) - d(k,j), or 0.
double max_triangle_violation(const Eigen::MatrixXd& d);

/// Distances |p_i - p_j|.
MetricSpace path_metric(const std::vector<double>& positions);
/// Shortest-path metric of an unweighted connected graph.
MetricSpace graph_metric(int n, const std::vector<std::pair<int, int>>& edges);
/// Complete bipartite graph K_{a,b}.
MetricSpace complete_bipartite(int a, int b);

MetricSpace subspace(const MetricSpace& m, const std::vector<int>& indices);
/// Point i of the result is point perm[i] of m.
MetricSpace permuted(const MetricSpace& m, const std::vector<int>& perm);

struct FarthestPoint {
  int m = 0;
  uint64_t seed = 1;
};

/// Word metric on B_r. Distances use left invariance,
/// d(g, h) = |g^{-1} h| with g^{-1} h in B_{2r}, read from one ball build.
/// Points are in packed-key order; a subsample keeps that order.
MetricSpace ball_metric(int k, int r, std::optional<FarthestPoint> subsample = std::nullopt,
                        const cayley::BallOptions& opts = {});

/// Greedy farthest-point selection started at a seeded random point;
/// distance ties go to the lower index. Returned indices are sorted.
std::vector<int> farthest_point_indices(const MetricSpace& m, int count, uint64_t seed);

/// d -> d^{1-ε}, 0 < ε < 1.
MetricSpace snowflake(const MetricSpace& m, double eps);

/// First line n, then the upper triangle row by row.
std::string metric_to_text(const MetricSpace& m);
MetricSpace parse_metric(const std::string& text);

}  // namespace heis::embed
