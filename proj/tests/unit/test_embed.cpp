#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <queue>

#include "heis/core.hpp"
#include "heis/embed/cut_lp.hpp"
#include "heis/embed/metric_space.hpp"
#include "heis/embed/negative_type.hpp"
#include "heis/embed/simplex.hpp"

using namespace heis;
using namespace heis::embed;

namespace {

// Optimality proof by weak duality: x primal feasible, y dual feasible, equal objectives.
void expect_certified(const LinearProgram& lp, const LpSolution& s, double tol = 1e-9) {
  ASSERT_EQ(s.status, LpStatus::optimal);
  Eigen::VectorXd ax = lp.a * s.x;
  for (Eigen::Index i = 0; i < lp.b.size(); ++i) {
    double scale = std::max(1.0, std::fabs(lp.b(i)));
    if (lp.sense[i] == RowSense::le) {
      EXPECT_LE(ax(i), lp.b(i) + tol * scale);
      EXPECT_LE(s.y(i), tol);
    } else if (lp.sense[i] == RowSense::ge) {
      EXPECT_GE(ax(i), lp.b(i) - tol * scale);
      EXPECT_GE(s.y(i), -tol);
    } else {
      EXPECT_NEAR(ax(i), lp.b(i), tol * scale);
    }
  }
  EXPECT_GE(s.x.minCoeff(), 0);
  Eigen::VectorXd red = lp.c - lp.a.transpose() * s.y;
  EXPECT_GE(red.minCoeff(), -tol);
  EXPECT_NEAR(lp.c.dot(s.x), lp.b.dot(s.y), tol * std::max(1.0, std::fabs(lp.c.dot(s.x))));
}

Eigen::MatrixXd random_metric(Rng& rng, int n) {
  // shortest paths over random positive weights always give a metric
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) d(i, j) = d(j, i) = i == j ? 0 : rng.uniform(0.2, 2.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& pts) {
  const auto n = pts.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (pts.row(i) - pts.row(j)).squaredNorm();
  return d;
}

}  // namespace

TEST(Simplex, TextbookProblem) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
  LinearProgram lp;
  lp.a.resize(3, 2);
  lp.a << 1, 0, 0, 2, 3, 2;
  lp.b = Eigen::Vector3d(4, 12, 18);
  lp.c = Eigen::Vector2d(-3, -5);
  lp.sense = {RowSense::le, RowSense::le, RowSense::le};
  auto s = solve_lp(lp);
  expect_certified(lp, s);
  EXPECT_NEAR(s.objective, -36, 1e-12);
  EXPECT_NEAR(s.x(0), 2, 1e-12);
  EXPECT_NEAR(s.x(1), 6, 1e-12);
}

TEST(Simplex, MixedSensesAndNegativeRhs) {
  // min x + 2y + 3z s.t. x + y + z = 1, x - y >= -0.5, z >= 0.2, -x <= -0.1
  LinearProgram lp;
  lp.a.resize(4, 3);
  lp.a << 1, 1, 1, 1, -1, 0, 0, 0, 1, -1, 0, 0;
  lp.b = Eigen::Vector4d(1, -0.5, 0.2, -0.1);
  lp.c = Eigen::Vector3d(1, 2, 3);
  lp.sense = {RowSense::eq, RowSense::ge, RowSense::ge, RowSense::le};
  auto s = solve_lp(lp);
  expect_certified(lp, s);
  EXPECT_NEAR(s.objective, 0.8 + 0.6, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LinearProgram lp;
  lp.a.resize(2, 1);
  lp.a << 1, 1;
  lp.b = Eigen::Vector2d(1, 2);
  lp.c = Eigen::VectorXd::Ones(1);
  lp.sense = {RowSense::le, RowSense::ge};
  EXPECT_EQ(solve_lp(lp).status, LpStatus::infeasible);
  lp.sense = {RowSense::ge, RowSense::ge};
  lp.c(0) = -1;
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
}

TEST(Simplex, KleeMintyAndRandom) {
  for (int n : {3, 6}) {
    LinearProgram lp;
    lp.a = Eigen::MatrixXd::Zero(n, n);
    lp.b.resize(n);
    lp.c.resize(n);
    lp.sense.assign(n, RowSense::le);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) lp.a(i, j) = std::pow(2.0, i - j + 1);
      lp.a(i, i) = 1;
      lp.b(i) = std::pow(5.0, i + 1);
      lp.c(i) = -std::pow(2.0, n - 1 - i);
    }
    auto s = solve_lp(lp);
    expect_certified(lp, s, 1e-8);
    EXPECT_NEAR(s.objective, -std::pow(5.0, n), 1e-6);
  }
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 3 + static_cast<int>(rng.below(6)), n = 2 + static_cast<int>(rng.below(8));
    LinearProgram lp;
    lp.a.resize(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) lp.a(i, j) = rng.uniform(-1, 2);
    lp.b.resize(m);
    lp.sense.resize(m);
    // feasible by construction at x0, bounded by a box row
    Eigen::VectorXd x0 = Eigen::VectorXd::NullaryExpr(n, [&] { return rng.uniform(0, 1); });
    for (int i = 0; i < m; ++i) {
      int kind = static_cast<int>(rng.below(3));
      double v = lp.a.row(i).dot(x0);
      lp.sense[i] = kind == 0 ? RowSense::le : kind == 1 ? RowSense::ge : RowSense::eq;
      lp.b(i) = kind == 0 ? v + rng.uniform(0, 1) : kind == 1 ? v - rng.uniform(0, 1) : v;
    }
    lp.a.conservativeResize(m + 1, n);
    lp.a.row(m).setOnes();
    lp.b.conservativeResize(m + 1);
    lp.b(m) = x0.sum() + 5;
    lp.sense.push_back(RowSense::le);
    lp.c = Eigen::VectorXd::NullaryExpr(n, [&] { return rng.uniform(-1, 1); });
    expect_certified(lp, solve_lp(lp), 1e-8);
  }
}

TEST(MetricSpaceTest, ValidationAndText) {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 3, 1, 0, 1, 3, 1, 0;
  EXPECT_THROW(make_metric(d), Error);
  d(0, 2) = d(2, 0) = 2;
  auto m = make_metric(d);
  EXPECT_EQ(metric_to_text(m), "3\n1 2\n1\n");
  EXPECT_EQ(parse_metric(metric_to_text(m)).d, d);
  EXPECT_THROW(parse_metric("3\n1 2\n"), Error);
  d(0, 1) = 1.5;
  EXPECT_THROW(make_metric(d), Error);
}

TEST(MetricSpaceTest, BallMetricMatchesBfsOracle) {
  // Oracle: BFS from every ball point over the Cayley graph on B_{2r} using
  // plain matrix products and an ordered map.
  const int k = 2, r = 1;
  auto m = ball_metric(k, r);
  ASSERT_EQ(m.size(), 9);
  auto gens = generators(k).elements;
  std::vector<DiscreteElement> pts;
  for (const auto& s : m.labels) pts.push_back(parse_element(s));
  for (int i = 0; i < m.size(); ++i) {
    std::map<DiscreteElement, int> dist{{pts[i], 0}};
    std::queue<DiscreteElement> q;
    q.push(pts[i]);
    while (!q.empty()) {
      auto g = q.front();
      q.pop();
      if (dist[g] == 2 * r) continue;
      for (const auto& s : gens) {
        auto h = mul(g, s);
        if (dist.emplace(h, dist[g] + 1).second) q.push(h);
      }
    }
    for (int j = 0; j < m.size(); ++j) EXPECT_EQ(m.d(i, j), dist.at(pts[j]));
  }
  auto a = gen_a(k, 0);
  int ia = -1, iai = -1;
  for (int i = 0; i < m.size(); ++i) {
    if (pts[i] == a) ia = i;
    if (pts[i] == inverse(a)) iai = i;
  }
  EXPECT_EQ(m.d(ia, iai), 2);
  auto same = ball_metric(k, r, FarthestPoint{9, 4});
  EXPECT_EQ(same.d, m.d);
  auto sub = ball_metric(2, 2, FarthestPoint{10, 4});
  EXPECT_EQ(sub.size(), 10);
  EXPECT_EQ(sub.d, ball_metric(2, 2, FarthestPoint{10, 4}).d);
  validate_metric(sub);
}

TEST(NegativeType, Examples) {
  CutMeasure cut{4, {{0b0101, 1.0}}};
  EXPECT_TRUE(is_negative_type(cut_distances(cut)).yes);
  EXPECT_TRUE(is_negative_type(path_metric({0, 1, 3, 7, 7.5})).yes);
  Rng rng(3);
  Eigen::MatrixXd pts = Eigen::MatrixXd::NullaryExpr(6, 3, [&] { return rng.normal(); });
  auto c = is_negative_type(squared_distances(pts));
  EXPECT_TRUE(c.yes);
  EXPECT_GE(c.min_eigenvalue, -c.tolerance);

  // K_{2,3}: b = (3, 3, -2, -2, -2) gives Σ b_i b_j d(i,j) = 12 > 0
  auto k23 = complete_bipartite(2, 3);
  EXPECT_DOUBLE_EQ(quadratic_form(k23.d, {3, 3, -2, -2, -2}), 12);
  auto no = is_negative_type(k23);
  EXPECT_FALSE(no.yes);
  double sum = 0;
  for (double v : no.witness) sum += v;
  EXPECT_NEAR(sum, 0, 1e-12);
  EXPECT_GT(quadratic_form(k23.d, no.witness), no.tolerance);
}

TEST(NegativeType, EmbeddingReproducesDistances) {
  Rng rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng.below(8));
    Eigen::MatrixXd pts = Eigen::MatrixXd::NullaryExpr(n, 4, [&] { return rng.normal(); });
    Eigen::MatrixXd d = squared_distances(pts);
    ASSERT_TRUE(is_negative_type(d).yes);
    Eigen::MatrixXd x = squared_euclidean_embedding(d);
    EXPECT_LE((squared_distances(x) - d).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(CutLp, PathAndSmallMetrics) {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> pos;
    const int n = 2 + static_cast<int>(rng.below(7));
    for (int i = 0; i < n; ++i) pos.push_back(rng.uniform(0, 10));
    auto m = path_metric(pos);
    auto r = c1_distortion(m);
    EXPECT_NEAR(r.distortion, 1, 1e-7);
    EXPECT_TRUE(replay_certificate(m, r.certificate, r.distortion).pass);
  }
  for (int n : {3, 4})
    for (int rep = 0; rep < 30; ++rep) {
      auto m = make_metric(random_metric(rng, n));
      auto r = c1_distortion(m);
      EXPECT_NEAR(r.distortion, 1, 1e-7);
      EXPECT_TRUE(replay_certificate(m, r.certificate, r.distortion).pass);
    }
}

TEST(CutLp, K23AndDuals) {
  auto m = complete_bipartite(2, 3);
  auto r = c1_distortion(m);
  EXPECT_NEAR(r.distortion, 4.0 / 3.0, 1e-9);
  EXPECT_TRUE(replay_certificate(m, r.certificate, r.distortion).pass);
  // strong duality: Σ α d = D*, Σ β d = 1, and every cut pays β at least α
  double ad = 0, bd = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      ad += r.alpha(i, j) * m.d(i, j);
      bd += r.beta(i, j) * m.d(i, j);
    }
  EXPECT_NEAR(ad, r.distortion, 1e-9);
  EXPECT_NEAR(bd, 1, 1e-9);
  for (uint32_t s = 1; s < 16; ++s) {
    double a = 0, b = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (((s >> i) & 1u) != ((s >> j) & 1u)) {
          a += r.alpha(i, j);
          b += r.beta(i, j);
        }
    EXPECT_GE(b, a - 1e-9);
  }
}

TEST(CutLp, SubspaceMonotoneAndEmbedding) {
  auto m = ball_metric(2, 1);
  auto whole = c1_distortion(m);
  EXPECT_GE(whole.distortion, 1 - 1e-9);
  auto part = c1_distortion(subspace(m, {0, 2, 3, 5, 8}));
  EXPECT_LE(part.distortion, whole.distortion + 1e-7);

  Eigen::MatrixXd x = embedding_from_cuts(whole.certificate);
  Eigen::MatrixXd e = cut_distances(whole.certificate);
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) EXPECT_NEAR((x.row(i) - x.row(j)).lpNorm<1>(), e(i, j), 1e-12);
  CutMeasure single{3, {{0b001, 1.0}}};
  Eigen::MatrixXd xs = embedding_from_cuts(single);
  EXPECT_EQ(xs(0, 0), 1);
  EXPECT_EQ(xs(1, 0), 0);
  EXPECT_EQ(cut_distances(CutMeasure{3, {}}), Eigen::MatrixXd::Zero(3, 3));
  EXPECT_EQ(cut_measure_json(single), R"([{"mask":1,"weight":1.0}])");
}

TEST(Snowflake, Properties) {
  auto m = ball_metric(2, 1);
  // |d^{1-ε} - d| <= ε d |ln d| (1 + o(1)); for d = 2 this is about 1.4e-6
  const double eps = 1e-6;
  auto s0 = snowflake(m, eps);
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      double d = m.d(i, j);
      EXPECT_LE(std::fabs(s0.d(i, j) - d), d > 0 ? 1.01 * eps * d * std::fabs(std::log(d)) + 1e-15 : 0);
    }
  auto two = path_metric({0, 3});
  EXPECT_DOUBLE_EQ(snowflake(two, 0.5).d(0, 1), std::sqrt(3.0));
  EXPECT_THROW(snowflake(two, 1.0), Error);
  EXPECT_THROW(snowflake(two, 0.0), Error);
  auto sub = ball_metric(2, 2, FarthestPoint{8, 2});
  double prev = 1e9;
  for (double eps : {0.1, 0.3, 0.5}) {
    double c = c1_distortion(snowflake(sub, eps)).distortion;
    EXPECT_LE(c, prev + 1e-7);
    prev = c;
  }
}
