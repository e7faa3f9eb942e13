#include "heis/cayley/ball.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "heis/core/error.hpp"

namespace heis::cayley {

namespace {

double binom(int n, int m) {
  if (m < 0 || m > n) return 0;
  double r = 1;
  for (int i = 1; i <= m; ++i) r = r * (n - m + i) / i;
  return r;
}

void check_args(int k, int r) {
  if (k < 1 || k > kMaxRank) fail(ErrorKind::validation, "rank k out of range");
  if (r < 0) fail(ErrorKind::validation, "radius must be nonnegative");
  if (r > 255) fail(ErrorKind::validation, "radius above 255 is not supported");
}

}  // namespace

double ball_size_bound(int k, int r) {
  double l1 = 0;
  for (int i = 0; i <= std::min(2 * k, r); ++i) l1 += std::ldexp(binom(2 * k, i) * binom(r, i), i);
  return l1 * (2.0 * std::floor(r * r / 4.0) + 1.0);
}

double ball_memory_estimate(int k, int r) {
  // key words, two hash slots at load <= 1/2, distance byte, sorted index
  const double per = 4.0 * coord_count(k) + 2 * 4.0 + 1.0 + 8.0;
  return ball_size_bound(k, r) * per;
}

Ball build_ball(int k, int r, const BallOptions& opts) {
  check_args(k, r);
  double estimate = ball_memory_estimate(k, r);
  if (estimate > static_cast<double>(opts.mem_cap_bytes))
    fail(ErrorKind::resource,
         fmt::format("ball k={} r={} needs an estimated {:.0f} MiB, above the {} MiB cap", k, r,
                     estimate / (1 << 20), opts.mem_cap_bytes >> 20));
  size_t expected = static_cast<size_t>(std::min(ball_size_bound(k, r), 1e8));
  Ball ball(k, expected, opts.mem_cap_bytes);
  ball.radius_ = r;
  const int stride = coord_count(k);
  const int ngen = 4 * k;

  std::vector<int32_t> key(stride, 0);
  ball.table_.insert(key.data());
  ball.dist_.push_back(0);
  ball.spheres_.push_back(1);

  std::vector<size_t> frontier{0}, next;
  std::vector<int32_t> cur(stride), nb(stride);
  for (int d = 1; d <= r; ++d) {
    next.clear();
    for (size_t idx : frontier) {
      const int32_t* src = ball.table_.key(idx);
      std::copy(src, src + stride, cur.begin());
      for (int j = 0; j < ngen; ++j) {
        if (!generator_step(k, cur.data(), j, nb.data()))
          fail(ErrorKind::overflow, "ball coordinate outside 32-bit key range");
        auto [index, inserted] = ball.table_.insert(nb.data());
        if (inserted) {
          ball.dist_.push_back(static_cast<uint8_t>(d));
          next.push_back(index);
        }
      }
    }
    const ElementTable& t = ball.table_;
    std::sort(next.begin(), next.end(), [&](size_t a, size_t b) {
      return ElementTable::key_less(t.key(a), t.key(b), stride);
    });
    ball.spheres_.push_back(next.size());
    frontier.swap(next);
  }
  ball.sorted_ = ball.table_.sorted_indices();
  return ball;
}

int Ball::distance(const DiscreteElement& g) const {
  int64_t i = table_.find(g);
  return i == ElementTable::npos ? -1 : dist_[static_cast<size_t>(i)];
}

std::vector<DiscreteElement> Ball::members() const {
  std::vector<DiscreteElement> out;
  out.reserve(size());
  for (size_t i : sorted_) out.push_back(table_.element(i));
  return out;
}

std::string Ball::dump() const {
  std::string out;
  for (size_t i : sorted_) {
    out += to_string(table_.element(i));
    out += ' ';
    out += std::to_string(dist_[i]);
    out += '\n';
  }
  return out;
}

WordMetric::WordMetric(int k, int reach, const BallOptions& opts)
    : reach_(reach), ball_(build_ball(k, reach <= 8 ? reach : (reach + 1) / 2, opts)) {}

std::optional<int> WordMetric::distance(const DiscreteElement& g) const {
  if (g.rank() != ball_.rank()) fail(ErrorKind::validation, "dimension mismatch");
  if (reach_ <= 8) {
    int d = ball_.distance(g);
    if (d < 0) return std::nullopt;
    return d;
  }
  int d = ball_.distance(g);
  if (d >= 0) return d;
  // d(g) = min over h in B_R of d(h) + d(h^{-1} g), exact whenever d(g) <= 2R.
  const ElementTable& t = ball_.table();
  int best = std::numeric_limits<int>::max();
  for (size_t i = 0; i < t.size(); ++i) {
    int dh = ball_.distance_at(i);
    if (dh >= best) continue;
    DiscreteElement u = mul(inverse(t.element(i)), g);
    int du = ball_.distance(u);
    if (du >= 0) best = std::min(best, dh + du);
  }
  if (best > reach_) return std::nullopt;
  return best;
}

std::optional<int> word_distance(const DiscreteElement& g, int r_max, const BallOptions& opts) {
  if (r_max < 0) fail(ErrorKind::validation, "r_max must be nonnegative");
  return WordMetric(g.rank(), r_max, opts).distance(g);
}

std::optional<int> z_power_distance(int k, int64_t t, int r_max, const BallOptions& opts) {
  if (t < 0) fail(ErrorKind::validation, "t must be nonnegative");
  return word_distance(DiscreteElement::central(k, t), r_max, opts);
}

std::vector<GrowthRow> growth_table(int k, int r_max, const BallOptions& opts) {
  Ball b = build_ball(k, r_max, opts);
  std::vector<GrowthRow> rows;
  uint64_t total = 0;
  for (int r = 0; r <= r_max; ++r) {
    total += b.sphere_sizes()[r];
    GrowthRow row;
    row.r = r;
    row.count = total;
    if (r > 0) row.normalized = static_cast<double>(total) / std::pow(double(r), 2 * k + 2);
    rows.push_back(row);
  }
  return rows;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::string out = "r,count,normalized\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},", row.r, row.count);
    if (row.normalized) out += fmt::format("{}", *row.normalized);
    out += '\n';
  }
  return out;
}

}  // namespace heis::cayley
