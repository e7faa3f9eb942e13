#include "heis/embed/metric_space.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "heis/core/error.hpp"
#include "heis/core/rng.hpp"

namespace heis::embed {

double max_triangle_violation(const Eigen::MatrixXd& d) {
  const auto n = d.rows();
  double worst = 0;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) worst = std::max(worst, d(i, j) - d(i, k) - d(k, j));
  return worst;
}

void validate_metric(const MetricSpace& m) {
  const auto& d = m.d;
  if (d.rows() != d.cols()) fail(ErrorKind::validation, "distance matrix must be square");
  if (d.rows() < 1) fail(ErrorKind::validation, "metric space must have at least one point");
  if (!m.labels.empty() && static_cast<Eigen::Index>(m.labels.size()) != d.rows())
    fail(ErrorKind::validation, "label count does not match the number of points");
  double top = 0;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0) fail(ErrorKind::validation, "distance matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) < 0)
        fail(ErrorKind::validation, "distances must be finite and nonnegative");
      if (d(i, j) != d(j, i)) fail(ErrorKind::validation, "distance matrix must be symmetric");
      top = std::max(top, d(i, j));
    }
  }
  double v = max_triangle_violation(d);
  if (v > 1e-9 * std::max(top, 1.0))
    fail(ErrorKind::validation, fmt::format("triangle inequality violated by {}", v));
}

MetricSpace make_metric(Eigen::MatrixXd d, std::vector<std::string> labels) {
  MetricSpace m{std::move(d), std::move(labels)};
  validate_metric(m);
  return m;
}

MetricSpace path_metric(const std::vector<double>& positions) {
  const auto n = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = std::fabs(positions[i] - positions[j]);
  return make_metric(std::move(d));
}

MetricSpace graph_metric(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) fail(ErrorKind::validation, "graph needs at least one vertex");
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) fail(ErrorKind::validation, "bad edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, -1);
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    d(s, s) = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (d(s, v) < 0) {
          d(s, v) = d(s, u) + 1;
          q.push(v);
        }
    }
  }
  if ((d.array() < 0).any()) fail(ErrorKind::validation, "graph is not connected");
  return make_metric(std::move(d));
}

MetricSpace complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.push_back({i, a + j});
  return graph_metric(a + b, e);
}

MetricSpace subspace(const MetricSpace& m, const std::vector<int>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  MetricSpace out;
  out.d.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (idx[i] < 0 || idx[i] >= m.size()) fail(ErrorKind::validation, "subspace index out of range");
    for (Eigen::Index j = 0; j < n; ++j) out.d(i, j) = m.d(idx[i], idx[j]);
    if (!m.labels.empty()) out.labels.push_back(m.labels[idx[i]]);
  }
  return out;
}

MetricSpace permuted(const MetricSpace& m, const std::vector<int>& perm) {
  std::vector<int> seen(perm.size(), 0);
  if (static_cast<int>(perm.size()) != m.size()) fail(ErrorKind::validation, "permutation size mismatch");
  for (int p : perm)
    if (p < 0 || p >= m.size() || seen[p]++) fail(ErrorKind::validation, "not a permutation");
  return subspace(m, perm);
}

std::vector<int> farthest_point_indices(const MetricSpace& m, int count, uint64_t seed) {
  const int n = m.size();
  if (count < 1 || count > n) fail(ErrorKind::validation, "subsample size must be in [1, n]");
  Rng rng(seed);
  std::vector<int> chosen{static_cast<int>(rng.below(static_cast<uint64_t>(n)))};
  std::vector<double> near(n);
  for (int i = 0; i < n; ++i) near[i] = m.d(chosen[0], i);
  while (static_cast<int>(chosen.size()) < count) {
    int best = -1;
    for (int i = 0; i < n; ++i)
      if (near[i] > 0 && (best < 0 || near[i] > near[best])) best = i;
    if (best < 0) break;
    chosen.push_back(best);
    for (int i = 0; i < n; ++i) near[i] = std::min(near[i], m.d(best, i));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

MetricSpace ball_metric(int k, int r, std::optional<FarthestPoint> subsample,
                        const cayley::BallOptions& opts) {
  if (r < 0) fail(ErrorKind::validation, "radius must be nonnegative");
  auto outer = cayley::build_ball(k, 2 * r, opts);
  std::vector<DiscreteElement> pts;
  for (size_t i : outer.sorted())
    if (outer.distance_at(i) <= r) pts.push_back(outer.table().element(i));
  const auto n = static_cast<Eigen::Index>(pts.size());
  if (n > 20000) fail(ErrorKind::resource, "ball too large for a dense distance matrix");
  MetricSpace m;
  m.d.resize(n, n);
  std::vector<DiscreteElement> inv;
  for (const auto& g : pts) inv.push_back(inverse(g));
  for (Eigen::Index i = 0; i < n; ++i) {
    m.d(i, i) = 0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      int dist = outer.distance(mul(inv[i], pts[j]));
      if (dist < 0) fail(ErrorKind::solver, "ball distance missing from B_2r");
      m.d(i, j) = m.d(j, i) = dist;
    }
  }
  for (const auto& g : pts) m.labels.push_back(to_string(g));
  validate_metric(m);
  if (!subsample) return m;
  return subspace(m, farthest_point_indices(m, subsample->m, subsample->seed));
}

MetricSpace snowflake(const MetricSpace& m, double eps) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::validation, "epsilon must lie in (0, 1)");
  MetricSpace out = m;
  out.d = m.d.array().pow(1 - eps).matrix();
  validate_metric(out);
  return out;
}

std::string metric_to_text(const MetricSpace& m) {
  std::string out = fmt::format("{}\n", m.size());
  for (int i = 0; i < m.size(); ++i) {
    std::string row;
    for (int j = i + 1; j < m.size(); ++j) row += (j > i + 1 ? " " : "") + fmt::format("{}", m.d(i, j));
    if (!row.empty()) out += row + "\n";
  }
  return out;
}

MetricSpace parse_metric(const std::string& text) {
  std::istringstream in(text);
  long long n = 0;
  if (!(in >> n) || n < 1 || n > 100000) fail(ErrorKind::validation, "metric file: bad point count");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = i + 1; j < n; ++j) {
      double v;
      if (!(in >> v)) fail(ErrorKind::validation, "metric file: too few distances");
      d(i, j) = d(j, i) = v;
    }
  std::string extra;
  if (in >> extra) fail(ErrorKind::validation, "metric file: trailing data");
  return make_metric(std::move(d));
}

}  // namespace heis::embed
