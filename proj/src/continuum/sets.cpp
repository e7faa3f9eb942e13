#include "heis/continuum/sets.hpp"

#include <cmath>

#include "heis/core/error.hpp"

namespace heis::continuum {

bool in_box(const BoxSpec& b, const ContinuousPoint& p) {
  for (int j = 0; j < 2 * b.k; ++j)
    if (std::fabs(p.coord(j)) > b.r) return false;
  return std::fabs(p.z()) <= b.r * b.r;
}

Indicator box_indicator(const BoxSpec& b) {
  if (!(b.r > 0)) fail(ErrorKind::validation, "box radius must be positive");
  return [b](const ContinuousPoint& p) { return in_box(b, p); };
}

QuasiBall centered_ball(int k, double radius) {
  if (!(radius > 0)) fail(ErrorKind::validation, "ball radius must be positive");
  return {ContinuousPoint(k), radius};
}

bool in_ball(const QuasiBall& b, const ContinuousPoint& p) {
  return quasi_norm(mul(inverse(b.center), p)) <= b.radius;
}

Indicator ball_indicator(const QuasiBall& b) {
  return [b](const ContinuousPoint& p) { return in_ball(b, p); };
}

double quasi_ball_volume(int k, double radius) {
  double fact = 1;
  for (int i = 2; i <= 2 * k + 2; ++i) fact *= i;
  return std::ldexp(std::pow(radius, 2 * k + 2), 2 * k) / (4 * fact);
}

ContinuousPoint sample_ball(const QuasiBall& b, Rng& rng) {
  const int k = b.center.rank();
  const int d = 2 * k;
  ContinuousPoint u(k);
  for (;;) {
    // uniform in the unit l1 ball of R^d via normalized exponential spacings
    double e[2 * kMaxRank + 1];
    double total = 0;
    for (int j = 0; j <= d; ++j) total += (e[j] = rng.exponential());
    double l1 = 0;
    for (int j = 0; j < d; ++j) {
      double v = e[j] / total;
      l1 += v;
      u.coord(j) = rng.uniform() < 0.5 ? -v : v;
    }
    double z = rng.uniform(-1.0 / 16, 1.0 / 16);
    if (l1 + 4 * std::sqrt(std::fabs(z)) <= 1.0) {
      u.coord(d) = z;
      break;
    }
  }
  return mul(b.center, scale(b.radius, u));
}

namespace {

Indicator x1_band(double lo, double hi, bool inside) {
  return [=](const ContinuousPoint& p) {
    double a = std::fabs(p.x(0));
    return (a >= lo && a <= hi) == inside;
  };
}

}  // namespace

Indicator preset(const std::string& name, int k) {
  if (k < 1 || k > kMaxRank) fail(ErrorKind::validation, "rank k out of range");
  if (name == "everything") return [](const ContinuousPoint&) { return true; };
  if (name == "empty") return [](const ContinuousPoint&) { return false; };
  if (name == "halfspace") return [](const ContinuousPoint& p) { return p.x(0) > 0; };
  if (name == "slab") return [](const ContinuousPoint& p) { return std::fabs(p.x(0)) < 1.5; };
  if (name == "slab-complement")
    return [](const ContinuousPoint& p) { return std::fabs(p.x(0)) > 0.5; };
  if (name == "two-slab") return x1_band(0.5, 1.5, true);
  if (name == "box") return box_indicator({k, 1.0});
  if (name == "ball") return ball_indicator(centered_ball(k, 1.0));
  fail(ErrorKind::validation, "unknown set preset: '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"everything", "empty", "halfspace", "slab", "slab-complement", "two-slab", "box", "ball"};
}

Indicator scaled_indicator(Indicator e, double t) {
  if (!(t > 0)) fail(ErrorKind::validation, "scale factor must be positive");
  return [e = std::move(e), t](const ContinuousPoint& p) { return e(scale(1.0 / t, p)); };
}

Indicator complement(Indicator e) {
  return [e = std::move(e)](const ContinuousPoint& p) { return !e(p); };
}

}  // namespace heis::continuum
