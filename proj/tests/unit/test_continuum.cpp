#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heis/continuum/lines.hpp"
#include "heis/core/error.hpp"
#include "heis/continuum/profile.hpp"
#include "heis/continuum/voxelize.hpp"
#include "heis/perimeter/perimeter.hpp"

using namespace heis;
using namespace heis::continuum;

namespace {

// Oracle for the box profile: volume of C_r minus its overlap with C_r Z^τ,
// both z-intervals of length 2r^2 over the same base.
double box_oracle(int k, double r, double s) {
  double tau = std::pow(4.0, s);
  double overlap = std::max(0.0, 2 * r * r - tau);
  double base = std::pow(2 * r, 2 * k);
  return base * 2 * (2 * r * r - overlap) / std::pow(2.0, s);
}

HorizontalLine x1_line(int k, ContinuousPoint base) {
  HorizontalLine l{base, std::vector<double>(2 * k, 0.0)};
  l.direction[0] = 1;
  return l;
}

}  // namespace

TEST(BoxProfile, MatchesOracle) {
  for (int k : {1, 2, 3})
    for (double r : {0.5, 1.0, 3.0})
      for (double s = -4; s <= 4; s += 0.37)
        EXPECT_NEAR(box_vertical_profile({k, r}, s), box_oracle(k, r, s),
                    1e-12 * box_oracle(k, r, s));
  EXPECT_DOUBLE_EQ(box_vertical_profile({2, 1}, 0), 32);
}

TEST(BoxProfile, SlopesAroundKnee) {
  BoxSpec b{2, 1.5};
  const double knee = std::log2(b.r * std::sqrt(2.0));
  const double d = 1e-3;
  auto slope = [&](double s) {
    return std::log2(box_vertical_profile(b, s + d) / box_vertical_profile(b, s - d)) / (2 * d);
  };
  EXPECT_NEAR(slope(knee - 1), 1, 1e-9);
  EXPECT_NEAR(slope(knee + 1), -1, 1e-9);
  EXPECT_NEAR(box_vertical_profile(b, -30) / std::exp2(-30 + 1), std::pow(2 * b.r, 4), 1e-6);
}

TEST(BoxProfile, L2Norm) {
  // knee at s = 1/2 for r = 1 and s = 3/2 for r = 2, both on the grid
  auto grid = s_grid(-6, 9, 0.25);
  for (double r : {1.0, 2.0}) {
    Profile p = box_profile({2, r}, grid);
    EXPECT_NEAR(profile_l2_norm(p), box_l2_norm({2, r}), 1e-12 * box_l2_norm({2, r}));
  }
  EXPECT_DOUBLE_EQ(box_l2_norm({2, 2}) / box_l2_norm({2, 1}), 32);
  Profile zero{{{0, 0, 0}, {1, 0, 0}}, ProfileKind::exact, 1};
  EXPECT_EQ(profile_l2_norm(zero), 0);
  Profile bad{{{0, 1, 0}, {1, 0.5, 0}, {3, 0.2, 0}}, ProfileKind::exact, 1};
  EXPECT_THROW(profile_l2_norm(bad), Error);
}

TEST(McProfile, TrivialSets) {
  QuasiBall u = centered_ball(2, 4);
  auto grid = s_grid(-2, 1, 0.5);
  McOptions o{4000, 3, 1};
  for (const char* name : {"empty", "everything", "halfspace"}) {
    Profile p = mc_vertical_profile(preset(name, 2), u, grid, o);
    for (const auto& x : p.samples) EXPECT_EQ(x.value, 0) << name;
  }
  EXPECT_THROW(mc_vertical_profile(preset("box", 2), u, grid, {999, 1, 1}), Error);
}

TEST(McProfile, BoxWithinThreeSigma) {
  QuasiBall u{ContinuousPoint::along_z(2, 2), 11};
  // both sides of the knee at s = 1/2
  auto grid = s_grid(-1, 1, 0.25);
  ASSERT_EQ(grid.size(), 9u);
  Profile p = mc_vertical_profile(box_indicator({2, 1}), u, grid, {100000, 17, 1});
  for (const auto& x : p.samples) {
    double exact = box_vertical_profile({2, 1}, x.s);
    EXPECT_GT(x.stderr_, 0);
    EXPECT_LE(std::fabs(x.value - exact), 3 * x.stderr_) << "s=" << x.s;
  }
}

TEST(McProfile, ComplementAndWorkers) {
  QuasiBall u = centered_ball(2, 5);
  auto grid = s_grid(-1, 1, 0.5);
  Indicator e = preset("ball", 2);
  Profile a = mc_vertical_profile(e, u, grid, {20000, 5, 1});
  Profile b = mc_vertical_profile(complement(e), u, grid, {20000, 5, 4});
  Profile c = mc_vertical_profile(e, u, grid, {20000, 5, 3});
  for (size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a.samples[i].value, b.samples[i].value);
    EXPECT_EQ(a.samples[i].value, c.samples[i].value);
  }
}

TEST(QuasiBallTest, VolumeMatchesSampling) {
  // fraction of the bounding box [-1,1]^4 x [-1/16,1/16] inside the unit ball
  Rng rng(11);
  const int n = 400000;
  int in = 0;
  for (int i = 0; i < n; ++i) {
    ContinuousPoint p(2);
    for (int j = 0; j < 4; ++j) p.coord(j) = rng.uniform(-1, 1);
    p.coord(4) = rng.uniform(-1.0 / 16, 1.0 / 16);
    in += quasi_norm(p) <= 1;
  }
  double box = 16.0 / 8;
  double est = box * in / n;
  double se = box * std::sqrt((double(in) / n) * (1 - double(in) / n) / n);
  EXPECT_NEAR(est, quasi_ball_volume(2, 1), 4 * se);
  EXPECT_DOUBLE_EQ(quasi_ball_volume(2, 2), 64 * quasi_ball_volume(2, 1));

  QuasiBall b{ContinuousPoint::along_x(2, 0, 3), 2};
  Rng r2(4);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(in_ball(b, sample_ball(b, r2)));
}

TEST(ScalingIdentity, Box) {
  for (double rho : {-3.0, -0.4, 0.0, 0.5, 1.7, 4.0}) {
    EXPECT_LE(scaling_identity_check({2, 1.3}, 2, rho).residual, 1e-12);
    EXPECT_EQ(scaling_identity_check({2, 1.3}, 1, rho).residual, 0);
  }
}

TEST(ScalingIdentity, MonteCarlo) {
  QuasiBall u = centered_ball(2, 4);
  auto h = scaling_identity_check(preset("halfspace", 2), u, 2, 0.3, {5000, 2, 1});
  EXPECT_EQ(h.residual, 0);
  auto b = scaling_identity_check(preset("ball", 2), u, 2, 0.3, {20000, 2, 1});
  EXPECT_LE(b.residual, 3 * b.stderr_ + 1e-12);
}

TEST(Voxelize, EverythingAndDeterminism) {
  auto region = cube_region(1, 2);
  auto all = voxelize(preset("everything", 1), 1, region, {9, 1, 1});
  EXPECT_EQ(all.size(), region.count());
  auto a = voxelize(preset("ball", 1), 0.25, region, {9, 7, 1});
  auto b = voxelize(preset("ball", 1), 0.25, region, {9, 7, 4});
  EXPECT_EQ(a.members(), b.members());
  EXPECT_THROW(voxelize(preset("ball", 1), 1, region, {7, 1, 1}), Error);
}

TEST(Voxelize, HalfspaceCells) {
  auto region = cube_region(2, 2);
  auto v = voxelize(preset("halfspace", 2), 1, region, {33, 5, 1});
  // cell h C_0 spans x_1 in [x_1(h) - 1/2, x_1(h) + 1/2]
  int boundary_in = 0;
  for (const auto& g : v.members()) {
    EXPECT_GE(g.x(0), 0);
    boundary_in += g.x(0) == 0;
  }
  uint64_t full = 0;
  auto all = voxelize(preset("everything", 2), 1, region, {9, 1, 1});
  for (const auto& g : all.members()) full += g.x(0) >= 1;
  EXPECT_EQ(v.size() - boundary_in, full);
  EXPECT_GT(boundary_in, 0);
  EXPECT_LT(boundary_in, 625);
}

TEST(Voxelize, HalfspaceErrorScalesWithRho) {
  // Fixed region |x|,|y| <= 1, |w| <= 1 of the group. Oracle: the fraction
  // of cell h C_0 inside {x_1 > 0} is clamp(x_1(h) + 1/2, 0, 1).
  std::vector<double> per_rho;
  for (double rho : {0.5, 0.25}) {
    int64_t a = static_cast<int64_t>(1 / rho), c = static_cast<int64_t>(1 / (rho * rho));
    LatticeRegion region{2, {-a, -a, -a, -a, -c}, {a, a, a, a, c}};
    auto v = voxelize(preset("halfspace", 2), rho, region, {33, 2, 1});
    const double cell = std::pow(rho, 6);
    double err = 0;
    const int64_t others = (2 * a + 1) * (2 * a + 1) * (2 * a + 1) * (2 * c + 1);
    for (int64_t x = -a; x <= a; ++x) {
      double frac = std::clamp(static_cast<double>(x) + 0.5, 0.0, 1.0);
      int64_t kept = 0;
      for (const auto& g : v.members()) kept += g.x(0) == x;
      err += cell * (static_cast<double>(kept) * (1 - frac) + static_cast<double>(others - kept) * frac);
    }
    per_rho.push_back(err / rho);
  }
  // err / rho tends to a constant; the ratio is ((2 + rho)^3 (2 + rho^2)) at
  // rho = 1/4 over rho = 1/2
  EXPECT_NEAR(per_rho[1] / per_rho[0], (std::pow(2.25, 3) * 2.0625) / (std::pow(2.5, 3) * 2.25), 1e-12);
}

TEST(Voxelize, BallPerimeterStableAcrossSeeds) {
  const double rho = 0.25;
  LatticeRegion region{1, {-14, -14, -52}, {14, 14, 52}};
  Indicator ball = ball_indicator(centered_ball(1, 3));
  auto a = voxelize(ball, rho, region, {9, 1, 1});
  auto b = voxelize(ball, rho, region, {9, 2, 1});
  double pa = static_cast<double>(perimeter::horizontal_perimeter(a));
  double pb = static_cast<double>(perimeter::horizontal_perimeter(b));
  EXPECT_GT(pa, 0);
  EXPECT_LE(std::fabs(pa - pb), 0.05 * pa);
}

TEST(Lines, SamplingProperties) {
  QuasiBall b = centered_ball(2, 3);
  auto l1 = sample_horizontal_lines(b, 50, 9);
  auto l2 = sample_horizontal_lines(b, 50, 9);
  for (size_t i = 0; i < l1.size(); ++i) {
    double n2 = 0;
    for (double v : l1[i].direction) n2 += v * v;
    EXPECT_NEAR(n2, 1, 1e-14);
    EXPECT_EQ(l1[i].direction.size(), 4u);
    EXPECT_EQ(l1[i].basepoint, l2[i].basepoint);
    EXPECT_EQ(l1[i].direction, l2[i].direction);
    EXPECT_TRUE(in_ball(b, l1[i].basepoint));
    // p^{-1} γ(τ) = τ v is horizontal
    auto q = mul(inverse(l1[i].basepoint), line_point(l1[i], 0.7));
    EXPECT_NEAR(q.z(), 0, 1e-12);
    EXPECT_NEAR(q.x(0), 0.7 * l1[i].direction[0], 1e-12);
  }
  auto c = x1_line(2, ContinuousPoint(2));
  auto g = line_point(c, 2.5);
  EXPECT_EQ(g, ContinuousPoint::along_x(2, 0, 2.5));
}

TEST(Lines, Intervals) {
  auto l = x1_line(2, ContinuousPoint(2));
  const double h = 1.0 / 512;
  auto all = line_intervals(preset("everything", 2), l, -2, 2, h);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].lo, -2);
  EXPECT_EQ(all[0].hi, 2);
  auto two = line_intervals(preset("two-slab", 2), l, -2, 2, h);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(two[0].lo, -1.5, h);
  EXPECT_NEAR(two[0].hi, -0.5, h);
  EXPECT_NEAR(two[1].lo, 0.5, h);
  EXPECT_NEAR(two[1].hi, 1.5, h);
  auto slab = line_intervals(preset("slab", 2), l, -3, 3, h);
  ASSERT_EQ(slab.size(), 1u);
  EXPECT_EQ(dyadic_class(slab[0].length()), 2);
  EXPECT_EQ(dyadic_class(slab[0].length() + h), 2);

  for (const auto& line : sample_horizontal_lines(centered_ball(2, 2), 40, 3))
    EXPECT_LE(line_intervals(preset("halfspace", 2), line, -4, 4, h).size(), 1u);
  EXPECT_THROW(line_intervals(preset("slab", 2), l, 1, 1, h), Error);
}

TEST(Nonmonotonicity, SingleLineOracle) {
  // trace of {|x_1| > 1/2} on [-2, 2]: best fit covers the gap, error 1
  QuasiBall u = centered_ball(2, 2);
  auto l = x1_line(2, ContinuousPoint(2));
  double h = u.radius / 512;
  EXPECT_NEAR(line_nonmonotonicity(preset("slab-complement", 2), u, l, h), 1.0, 2 * h);
  EXPECT_EQ(line_nonmonotonicity(preset("halfspace", 2), u, l, h), 0);
}

TEST(Nonmonotonicity, HalfspaceAndSlabs) {
  QuasiBall u = centered_ball(2, 4);
  NmOptions o{2000, 0, 5, 1};
  auto half = nonmonotonicity(preset("halfspace", 2), u, o);
  EXPECT_EQ(half.nm, 0);
  EXPECT_LE(half.nm, 3 * half.stderr_);
  auto comp = nonmonotonicity(preset("slab-complement", 2), u, o);
  EXPECT_GT(comp.nm, 5 * comp.stderr_);
  auto two = nonmonotonicity(preset("two-slab", 2), u, o);
  EXPECT_GT(two.nm, 5 * two.stderr_);
  auto two4 = nonmonotonicity(preset("two-slab", 2), u, {2000, 0, 5, 4});
  EXPECT_EQ(two.nm, two4.nm);
  EXPECT_EQ(nm_report_json(two), nm_report_json(two4));
  EXPECT_THROW(nonmonotonicity(preset("halfspace", 2), u, {99, 0, 5, 1}), Error);
}

TEST(Nonmonotonicity, ScaleInvariance) {
  QuasiBall u = centered_ball(2, 2);
  auto a = nonmonotonicity(preset("two-slab", 2), u, {1000, 0, 8, 1});
  auto b = nonmonotonicity(scaled_indicator(preset("two-slab", 2), 3), centered_ball(2, 6), {1000, 0, 8, 1});
  EXPECT_LE(std::fabs(a.nm - b.nm), 3 * std::hypot(a.stderr_, b.stderr_));
}

TEST(Nonmonotonicity, FarPerturbation) {
  QuasiBall u = centered_ball(2, 2);
  Indicator e = preset("two-slab", 2);
  Indicator far = [e](const ContinuousPoint& p) { return e(p) || std::fabs(p.x(1) - 40) < 1; };
  auto a = nonmonotonicity(e, u, {500, 0, 4, 1});
  auto b = nonmonotonicity(far, u, {500, 0, 4, 1});
  EXPECT_EQ(a.nm, b.nm);
}

TEST(IntervalHistogram, Partition) {
  QuasiBall u = centered_ball(2, 2);
  auto all = nonmonotonicity(preset("everything", 2), u, {500, 0, 6, 1});
  double total = 0;
  for (const auto& b : all.histogram) {
    EXPECT_EQ(b.endpoints, 0);
    total += b.count;
  }
  EXPECT_EQ(total, 500);
  auto two = nonmonotonicity(preset("two-slab", 2), u, {500, 0, 6, 1});
  total = 0;
  for (const auto& b : two.histogram) total += b.count;
  EXPECT_EQ(total, two.interval_count);
  EXPECT_EQ(interval_histogram(preset("two-slab", 2), u, {500, 0, 6, 1}).size(), two.histogram.size());
}
