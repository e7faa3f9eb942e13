#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heis/core/element.hpp"
#include "heis/core/element_table.hpp"

namespace heis::cayley {

struct BallOptions {
  size_t mem_cap_bytes = size_t{4} << 30;
};

/// Upper bound on |B_r|: lattice points of the l1 ball of radius r in Z^{2k}
/// times the admissible w range |w| <= floor(r^2/4).
double ball_size_bound(int k, int r);

/// Bytes the BFS would need for a ball of radius r, from ball_size_bound.
double ball_memory_estimate(int k, int r);

/// Closed word-metric ball around the identity with exact distances.
class Ball {
 public:
  int rank() const { return table_.rank(); }
  int radius() const { return radius_; }
  size_t size() const { return table_.size(); }

  bool contains(const DiscreteElement& g) const { return table_.contains(g); }
  /// Word distance to the identity, or -1 if g is outside the ball.
  int distance(const DiscreteElement& g) const;
  int distance_at(size_t index) const { return dist_[index]; }

  const ElementTable& table() const { return table_; }
  /// Indices in packed-key order.
  const std::vector<size_t>& sorted() const { return sorted_; }
  std::vector<DiscreteElement> members() const;
  /// sphere_sizes()[d] = number of elements at distance exactly d.
  const std::vector<uint64_t>& sphere_sizes() const { return spheres_; }

  /// One "element distance" line per member, in packed-key order.
  std::string dump() const;

 private:
  friend Ball build_ball(int k, int r, const BallOptions& opts);
  explicit Ball(int k, size_t expected, size_t cap) : table_(k, expected, cap) {}

  int radius_ = 0;
  ElementTable table_;
  std::vector<uint8_t> dist_;
  std::vector<size_t> sorted_;
  std::vector<uint64_t> spheres_;
};

Ball build_ball(int k, int r, const BallOptions& opts = {});

/// Exact word distances up to a fixed reach. For reach > 8 a ball of radius
/// ceil(reach/2) is built once and queries meet in the middle.
class WordMetric {
 public:
  WordMetric(int k, int reach, const BallOptions& opts = {});

  int reach() const { return reach_; }
  /// d_W(1, g) if it is at most reach, otherwise nullopt.
  std::optional<int> distance(const DiscreteElement& g) const;
  const Ball& ball() const { return ball_; }

 private:
  int reach_;
  Ball ball_;
};

std::optional<int> word_distance(const DiscreteElement& g, int r_max,
                                 const BallOptions& opts = {});

std::optional<int> z_power_distance(int k, int64_t t, int r_max, const BallOptions& opts = {});

struct GrowthRow {
  int r = 0;
  uint64_t count = 0;
  /// count / r^{2k+2}; absent for r = 0
  std::optional<double> normalized;
};

std::vector<GrowthRow> growth_table(int k, int r_max, const BallOptions& opts = {});
std::string growth_csv(const std::vector<GrowthRow>& rows);

}  // namespace heis::cayley
