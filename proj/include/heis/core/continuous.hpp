#pragma once

#include <array>
#include <span>

#include "heis/core/element.hpp"

namespace heis {

/// Point of the continuous group H^{2k+1} in exponential coordinates (x, y, z).
class ContinuousPoint {
 public:
  ContinuousPoint() = default;
  explicit ContinuousPoint(int k);
  ContinuousPoint(std::span<const double> x, std::span<const double> y, double z);

  static ContinuousPoint from_coords(int k, std::span<const double> coords);
  /// X_i^s, Y_i^s and Z^s (0-based i).
  static ContinuousPoint along_x(int k, int i, double s);
  static ContinuousPoint along_y(int k, int i, double s);
  static ContinuousPoint along_z(int k, double s);

  int rank() const { return k_; }
  double x(int i) const { return c_[i]; }
  double y(int i) const { return c_[k_ + i]; }
  double z() const { return c_[2 * k_]; }
  double coord(int j) const { return c_[j]; }
  double& coord(int j) { return c_[j]; }
  std::span<const double> coords() const {
    return {c_.data(), static_cast<size_t>(coord_count(k_))};
  }

  friend bool operator==(const ContinuousPoint&, const ContinuousPoint&) = default;

 private:
  int k_ = 0;
  std::array<double, kMaxCoords> c_{};
};

/// (x, y, w) with w the top-right matrix entry.
struct MatrixCoords {
  int k = 0;
  std::array<double, kMaxCoords> c{};
  double x(int i) const { return c[i]; }
  double y(int i) const { return c[k + i]; }
  double w() const { return c[2 * k]; }
};

/// ω(u,v) = Σ x_i(u) y_i(v) − y_i(u) x_i(v)
double omega(const ContinuousPoint& u, const ContinuousPoint& v);

ContinuousPoint mul(const ContinuousPoint& u, const ContinuousPoint& v);
ContinuousPoint inverse(const ContinuousPoint& u);

inline ContinuousPoint operator*(const ContinuousPoint& u, const ContinuousPoint& v) {
  return mul(u, v);
}

MatrixCoords to_matrix_coords(const ContinuousPoint& p);
ContinuousPoint to_exponential(const MatrixCoords& m);

ContinuousPoint to_continuous(const DiscreteElement& g);
/// Fails unless p is a lattice point.
DiscreteElement to_lattice(const ContinuousPoint& p);

/// s_t(x, y, z) = (tx, ty, t^2 z)
ContinuousPoint scale(double t, const ContinuousPoint& p);

/// N(p) = Σ|x_i| + Σ|y_i| + 4 sqrt|z|
double quasi_norm(const ContinuousPoint& p);

}  // namespace heis
