#include "heis/core/continuous.hpp"

#include <cmath>

#include "heis/core/error.hpp"

namespace heis {

namespace {

void check_finite(const ContinuousPoint& p) {
  for (double v : p.coords())
    if (!std::isfinite(v)) fail(ErrorKind::validation, "non-finite coordinate");
}

void check_same(const ContinuousPoint& u, const ContinuousPoint& v) {
  if (u.rank() != v.rank()) fail(ErrorKind::validation, "dimension mismatch");
}

}  // namespace

ContinuousPoint::ContinuousPoint(int k) : k_(k) {
  if (k < 1 || k > kMaxRank) fail(ErrorKind::validation, "rank k out of range");
}

ContinuousPoint::ContinuousPoint(std::span<const double> x, std::span<const double> y,
                                 double z)
    : ContinuousPoint(static_cast<int>(x.size())) {
  if (y.size() != x.size()) fail(ErrorKind::validation, "x and y must have equal length");
  for (int i = 0; i < k_; ++i) {
    c_[i] = x[i];
    c_[k_ + i] = y[i];
  }
  c_[2 * k_] = z;
}

ContinuousPoint ContinuousPoint::from_coords(int k, std::span<const double> coords) {
  ContinuousPoint p(k);
  if (coords.size() != static_cast<size_t>(coord_count(k)))
    fail(ErrorKind::validation, "coordinate vector has wrong length");
  for (int j = 0; j < coord_count(k); ++j) p.c_[j] = coords[j];
  return p;
}

ContinuousPoint ContinuousPoint::along_x(int k, int i, double s) {
  ContinuousPoint p(k);
  p.c_[i] = s;
  return p;
}

ContinuousPoint ContinuousPoint::along_y(int k, int i, double s) {
  ContinuousPoint p(k);
  p.c_[k + i] = s;
  return p;
}

ContinuousPoint ContinuousPoint::along_z(int k, double s) {
  ContinuousPoint p(k);
  p.c_[2 * k] = s;
  return p;
}

double omega(const ContinuousPoint& u, const ContinuousPoint& v) {
  check_same(u, v);
  double s = 0;
  for (int i = 0; i < u.rank(); ++i) s += u.x(i) * v.y(i) - u.y(i) * v.x(i);
  return s;
}

ContinuousPoint mul(const ContinuousPoint& u, const ContinuousPoint& v) {
  check_same(u, v);
  check_finite(u);
  check_finite(v);
  const int k = u.rank();
  ContinuousPoint r(k);
  for (int j = 0; j < 2 * k; ++j) r.coord(j) = u.coord(j) + v.coord(j);
  r.coord(2 * k) = u.z() + v.z() + 0.5 * omega(u, v);
  return r;
}

ContinuousPoint inverse(const ContinuousPoint& u) {
  ContinuousPoint r(u.rank());
  for (int j = 0; j < coord_count(u.rank()); ++j) r.coord(j) = -u.coord(j);
  return r;
}

MatrixCoords to_matrix_coords(const ContinuousPoint& p) {
  MatrixCoords m;
  m.k = p.rank();
  double xy = 0;
  for (int i = 0; i < p.rank(); ++i) {
    m.c[i] = p.x(i);
    m.c[p.rank() + i] = p.y(i);
    xy += p.x(i) * p.y(i);
  }
  m.c[2 * p.rank()] = p.z() + 0.5 * xy;
  return m;
}

ContinuousPoint to_exponential(const MatrixCoords& m) {
  ContinuousPoint p(m.k);
  double xy = 0;
  for (int i = 0; i < m.k; ++i) {
    p.coord(i) = m.x(i);
    p.coord(m.k + i) = m.y(i);
    xy += m.x(i) * m.y(i);
  }
  p.coord(2 * m.k) = m.w() - 0.5 * xy;
  return p;
}

ContinuousPoint to_continuous(const DiscreteElement& g) {
  MatrixCoords m;
  m.k = g.rank();
  for (int j = 0; j < coord_count(g.rank()); ++j) m.c[j] = static_cast<double>(g.coord(j));
  return to_exponential(m);
}

DiscreteElement to_lattice(const ContinuousPoint& p) {
  MatrixCoords m = to_matrix_coords(p);
  std::array<int64_t, kMaxCoords> c{};
  for (int j = 0; j < coord_count(p.rank()); ++j) {
    double v = m.c[j];
    if (!std::isfinite(v) || v != std::nearbyint(v) || std::fabs(v) > 9.0e15)
      fail(ErrorKind::validation, "point is not a lattice point");
    c[j] = static_cast<int64_t>(v);
  }
  return DiscreteElement::from_coords(p.rank(), {c.data(), static_cast<size_t>(coord_count(p.rank()))});
}

ContinuousPoint scale(double t, const ContinuousPoint& p) {
  if (!(t > 0) || !std::isfinite(t)) fail(ErrorKind::validation, "scale factor must be positive");
  ContinuousPoint r(p.rank());
  for (int j = 0; j < 2 * p.rank(); ++j) r.coord(j) = t * p.coord(j);
  r.coord(2 * p.rank()) = t * t * p.z();
  return r;
}

double quasi_norm(const ContinuousPoint& p) {
  double s = 0;
  for (int j = 0; j < 2 * p.rank(); ++j) s += std::fabs(p.coord(j));
  return s + 4.0 * std::sqrt(std::fabs(p.z()));
}

}  // namespace heis
