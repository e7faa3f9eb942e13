#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <limits>

#include "heis/core/error.hpp"
#include "heis/core/rng.hpp"
#include "heis/embed/cut_lp.hpp"
#include "heis/embed/negative_type.hpp"
#include "heis/sparsecut/duality.hpp"
#include "heis/sparsecut/relaxation.hpp"

using namespace heis;
using namespace heis::sparsecut;

namespace {

// Every subset, both orientations, ordered pairs on both sides.
double brute_opt(const Instance& inst) {
  double best = std::numeric_limits<double>::infinity();
  for (uint64_t a = 1; a + 1 < (uint64_t{1} << inst.n); ++a) {
    double cap = 0, dem = 0;
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.n; ++j)
        if (((a >> i) & 1) && !((a >> j) & 1)) {
          cap += 2 * inst.c(i, j);
          dem += 2 * inst.d(i, j);
        }
    if (dem > 0) best = std::min(best, cap / dem);
  }
  return best;
}

Instance unit_instance(int n) {
  Eigen::MatrixXd one = Eigen::MatrixXd::Ones(n, n);
  one.diagonal().setZero();
  return make_instance(one, one);
}

Instance from_c1_dual(const embed::MetricSpace& m, double& d_star) {
  auto r = embed::c1_distortion(m);
  d_star = r.distortion;
  return make_instance(d_star * r.beta, r.alpha);
}

}  // namespace

TEST(InstanceTest, ValidationAndText) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Ones(3, 3), d = Eigen::MatrixXd::Zero(3, 3);
  EXPECT_THROW(make_instance(c, d), Error);
  d(0, 1) = 1;
  EXPECT_THROW(make_instance(c, d), Error);  // asymmetric
  d(1, 0) = 1;
  auto inst = make_instance(c, d);
  EXPECT_EQ(inst.c(0, 0), 0);
  auto r = random_instance(5, 3);
  auto back = parse_instance(instance_to_text(r));
  EXPECT_EQ(back.c, r.c);
  EXPECT_EQ(back.d, r.d);
  EXPECT_EQ(instance_to_text(unit_instance(3)), "3\n1 1\n1\n1 1\n1\n");
  EXPECT_THROW(parse_instance("3\n1 1\n1\n1 1\n"), Error);
  EXPECT_THROW(parse_instance("2\n1\n1\n7\n"), Error);
  EXPECT_THROW(parse_instance("2\n-1\n1\n"), Error);
}

TEST(Opt, SmallCases) {
  auto two = opt_bruteforce(unit_instance(2));
  EXPECT_EQ(two.value, 1);
  EXPECT_EQ(two.mask, 1u);
  // Unit triangle: every cut separates two pairs of capacity 1 and demand 1.
  EXPECT_EQ(opt_bruteforce(unit_instance(3)).value, 1);
  // Uniform K_n: a cut of size s pays s(n − s)/s(n − s).
  EXPECT_EQ(opt_bruteforce(unit_instance(7)).value, 1);
}

TEST(Opt, MatchesEnumerationOracle) {
  for (int n = 2; n <= 10; ++n)
    for (uint64_t seed = 0; seed < 10; ++seed) {
      auto inst = random_instance(n, 100 * n + seed);
      auto r = opt_bruteforce(inst);
      EXPECT_NEAR(r.value, brute_opt(inst), 1e-12 * r.value);
      EXPECT_NEAR(replay_value(inst, r), r.value, 1e-15 * r.value);
      EXPECT_EQ(r.mask >> (n - 1), 0u);
    }
}

TEST(Opt, ScalingIsExact) {
  auto inst = random_instance(8, 5);
  auto base = opt_bruteforce(inst).value;
  auto scaled = opt_bruteforce(make_instance(4.0 * inst.c, 0.125 * inst.d)).value;
  EXPECT_EQ(scaled, 32.0 * base);
}

TEST(Opt, SparseDemands) {
  // Demand on a single pair: OPT is the min cut between them.
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4), d = Eigen::MatrixXd::Zero(4, 4);
  auto edge = [&](int i, int j, double w) { c(i, j) = c(j, i) = w; };
  edge(0, 1, 3);
  edge(1, 3, 1);
  edge(0, 2, 2);
  edge(2, 3, 5);
  d(0, 3) = d(3, 0) = 1;
  auto inst = make_instance(c, d);
  EXPECT_EQ(opt_bruteforce(inst).value, 3);  // {1,2} edges 1 + 2
  EXPECT_EQ(brute_opt(inst), 3);
  EXPECT_NEAR(lp_relaxation(inst).value, 3, 1e-9);
}

TEST(Lp, EqualsOptUpToFourPoints) {
  // Every metric on four points is a nonnegative combination of cuts.
  for (int n = 2; n <= 4; ++n)
    for (uint64_t seed = 0; seed < 30; ++seed) {
      auto inst = random_instance(n, 7 * seed + n);
      auto lp = lp_relaxation(inst);
      EXPECT_NEAR(lp.value, brute_opt(inst), 1e-9);
    }
}

TEST(Lp, CertificateAndRelaxation) {
  for (int n : {5, 6, 8, 10}) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
      auto inst = random_instance(n, seed + 31 * n);
      auto lp = lp_relaxation(inst);
      EXPECT_LE(lp.value, brute_opt(inst) + 1e-6);
      EXPECT_LE(lp.residuals.max_triangle_violation, 1e-9);
      EXPECT_LE(lp.residuals.normalization_error, 1e-9);
      EXPECT_GE(lp.metric.minCoeff(), 0);
      EXPECT_NEAR(replay_value(inst, lp), lp.value, 1e-9);
    }
  }
}

TEST(Lp, LazyFacetsAgreeWithEager) {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    auto inst = random_instance(9, seed);
    LpOptions lazy;
    lazy.eager_facets = 0;
    EXPECT_NEAR(lp_relaxation(inst, lazy).value, lp_relaxation(inst).value, 1e-9);
  }
}

TEST(Lp, StrictGapOnBipartiteDual) {
  // The c1 dual of K_{2,3} prices the graph metric at 1 but every cut at >= 4/3.
  double d_star = 0;
  auto inst = from_c1_dual(embed::complete_bipartite(2, 3), d_star);
  EXPECT_NEAR(d_star, 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(brute_opt(inst), d_star, 1e-7);
  EXPECT_LE(lp_relaxation(inst).value, 1 + 1e-9);
}

TEST(Sdp, CutMetricsAreFeasible) {
  // 0/1 Gram vectors: G = v v' with v the indicator of A.
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(12));
    uint64_t mask = 1 + rng.below((uint64_t{1} << (n - 1)) - 1);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1;
    Eigen::MatrixXd g = v * v.transpose();
    Eigen::MatrixXd q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q(i, j) = g(i, i) + g(j, j) - 2 * g(i, j);
    EXPECT_EQ(q, cut_metric(n, mask));
    EXPECT_GT(embed::is_negative_type(q).min_eigenvalue, -1e-12);
    EXPECT_LE(embed::max_triangle_violation(q), 0);
  }
}

TEST(Sdp, TwoPointsEqualsOpt) {
  auto inst = random_instance(2, 4);
  auto s = gl_sdp(inst);
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.value, opt_bruteforce(inst).value, 1e-9);
}

TEST(Sdp, SandwichAndResiduals) {
  for (int n : {3, 4, 5, 6, 8}) {
    for (uint64_t seed = 0; seed < 6; ++seed) {
      auto inst = random_instance(n, 1000 + 10 * n + seed);
      auto s = gl_sdp(inst);
      auto lp = lp_relaxation(inst);
      const double opt = brute_opt(inst);
      EXPECT_TRUE(s.converged);
      EXPECT_LE(lp.value, s.value + 1e-4);
      EXPECT_LE(s.value, opt + 1e-4);
      if (n <= 4) {
        EXPECT_NEAR(lp.value, s.value, 1e-3);
      }
      EXPECT_GE(s.residuals.min_eigenvalue, -1e-8);
      EXPECT_LE(s.residuals.max_triangle_violation, 1e-6);
      EXPECT_LE(s.residuals.normalization_error, 1e-8);
      EXPECT_NEAR(replay_value(inst, s), s.value, 1e-9 * s.value);
    }
  }
}

TEST(Sdp, BelowOptOnDualityInstance) {
  auto m = bipyramid_metric(5, 2);
  double d_star = 0;
  auto inst = from_c1_dual(m, d_star);
  auto s = gl_sdp(inst);
  auto lp = lp_relaxation(inst);
  // The source metric is feasible with value 1; every cut pays d_star > 1.
  EXPECT_TRUE(s.converged);
  EXPECT_LE(s.value, 1 + 1e-6);
  EXPECT_LE(lp.value, s.value + 1e-6);
  EXPECT_GE(brute_opt(inst) / s.value, d_star - 1e-3);
}

TEST(Sdp, IterationCapIsReported) {
  auto inst = random_instance(6, 2);
  SdpOptions o;
  o.iter_cap = 10;
  auto s = gl_sdp(inst, o);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.iterations, 10);
  // Still an exactly feasible point.
  EXPECT_GE(s.residuals.min_eigenvalue, -1e-8);
  EXPECT_LE(s.residuals.max_triangle_violation, 1e-9);
  EXPECT_GE(s.value, lp_relaxation(inst).value - 1e-9);
}

TEST(Relaxations, PermutationEquivariance) {
  auto inst = random_instance(7, 77);
  std::vector<int> perm{3, 6, 0, 5, 1, 2, 4};
  auto pi = permuted(inst, perm);
  auto o1 = opt_bruteforce(inst), o2 = opt_bruteforce(pi);
  EXPECT_NEAR(o1.value, o2.value, 1e-9);
  // The optimal cut of the relabeled instance, pulled back, is optimal here.
  uint64_t back = 0;
  for (int i = 0; i < 7; ++i)
    if ((o2.mask >> i) & 1) back |= uint64_t{1} << perm[i];
  EXPECT_NEAR(cut_capacity(inst, back) / cut_demand(inst, back), o1.value, 1e-12);
  EXPECT_NEAR(lp_relaxation(inst).value, lp_relaxation(pi).value, 1e-9);
  EXPECT_NEAR(gl_sdp(inst).value, gl_sdp(pi).value, 1e-6);
}

TEST(Relaxations, Homogeneity) {
  auto inst = random_instance(6, 12);
  auto scaled = make_instance(3.0 * inst.c, 0.5 * inst.d);
  EXPECT_NEAR(opt_bruteforce(scaled).value, 6 * opt_bruteforce(inst).value, 1e-12);
  EXPECT_NEAR(lp_relaxation(scaled).value, 6 * lp_relaxation(inst).value, 1e-9);
  EXPECT_NEAR(gl_sdp(scaled).value, 6 * gl_sdp(inst).value, 1e-5);
}

TEST(Relaxations, GapAndJson) {
  auto g2 = integrality_gap(random_instance(2, 1));
  EXPECT_NEAR(g2.gap, 1, 1e-9);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    auto g = integrality_gap(random_instance(6, seed));
    EXPECT_GE(g.gap, 1 - 1e-6);
    EXPECT_LE(g.lower, g.upper + 1e-9);
  }
  auto inst = random_instance(4, 8);
  auto j = nlohmann::json::parse(result_json(gl_sdp(inst)));
  EXPECT_EQ(j["kind"], "SDP");
  EXPECT_EQ(j["certificate"]["gram"].size(), 4u);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_EQ(nlohmann::json::parse(result_json(opt_bruteforce(inst)))["certificate"]["mask"],
            opt_bruteforce(inst).mask);
}

TEST(Duality, LineMetric) {
  auto r = duality_harness(embed::path_metric({0, 1, 2.5, 4}));
  EXPECT_NEAR(r.d_star, 1, 1e-9);
  EXPECT_NEAR(r.gap_lower, 1, 1e-7);
  EXPECT_TRUE(r.pass);
}

TEST(Duality, BipyramidMetrics) {
  for (int n : {5, 6}) {
    for (uint64_t seed = 0; seed < 3; ++seed) {
      auto m = bipyramid_metric(n, seed);
      // Pentagonal inequality violated on the first five points.
      const double b[5] = {1, 1, 1, -1, -1};
      double pent = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) pent += b[i] * b[j] * m.d(i, j);
      EXPECT_GT(pent, 0);
      auto r = duality_harness(m);
      EXPECT_GT(r.d_star, 1 + 1e-6);
      EXPECT_TRUE(r.pass);
      // Exhaustive replay of every cut against the emitted instance.
      EXPECT_GE(brute_opt(r.instance), r.d_star - 1e-3);
      EXPECT_NEAR(brute_opt(r.instance), r.opt, 1e-9 * r.opt);
      EXPECT_NEAR(r.source_value, 1, 1e-7);
      // Reloading the emitted instance reproduces the gap.
      auto back = parse_instance(instance_to_text(r.instance));
      EXPECT_NEAR(opt_bruteforce(back).value, r.opt, 1e-12 * r.opt);
    }
  }
}

TEST(Duality, RejectsNonNegativeType) {
  EXPECT_THROW(duality_harness(embed::complete_bipartite(2, 3)), Error);
  EXPECT_THROW(bipyramid_metric(4, 0), Error);
}

TEST(Duality, SquaredEuclidean) {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 0, 0, 1;
  auto m = squared_euclidean_metric(pts);
  EXPECT_EQ(m.d(1, 2), 2);
  EXPECT_EQ(m.d(0, 1), 1);
}
