#include "heis/perimeter/functional.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "heis/core/error.hpp"
#include "heis/perimeter/perimeter.hpp"

namespace heis::perimeter {

namespace {

double l1(std::span<const double> a) {
  double s = 0;
  for (double v : a) s += std::fabs(v);
  return s;
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (size_t j = 0; j < a.size(); ++j) s += std::fabs(a[j] - b[j]);
  return s;
}

// Per-column l1 mass of the vertical differences, V[t-1] for t = 1..t0.
std::vector<double> vertical_differences(const LatticeFunction& f, int64_t t0) {
  const FiniteSet& s = f.support();
  std::vector<double> v(static_cast<size_t>(t0), 0.0);
  size_t base = 0;
  for (const auto& col : s.columns()) {
    const size_t n = col.w.size();
    const int64_t span = col.span();
    double mass = 0;
    for (size_t i = 0; i < n; ++i) mass += l1(f.value(base + i));
    std::vector<int64_t> pos;
    if (span <= (int64_t{1} << 24)) {
      pos.assign(static_cast<size_t>(span + 1), -1);
      for (size_t i = 0; i < n; ++i) pos[col.w[i] - col.w.front()] = static_cast<int64_t>(i);
    }
    auto find = [&](int64_t w) -> int64_t {
      int64_t o = w - col.w.front();
      if (o < 0 || o > span) return -1;
      if (!pos.empty()) return pos[o];
      auto it = std::lower_bound(col.w.begin(), col.w.end(), w);
      return (it != col.w.end() && *it == w) ? it - col.w.begin() : -1;
    };
    for (int64_t t = 1; t <= t0; ++t) {
      if (t > span) {
        v[t - 1] += 2 * mass;
        continue;
      }
      double acc = 0;
      for (size_t i = 0; i < n; ++i) {
        auto fi = f.value(base + i);
        int64_t up = find(col.w[i] + t);
        acc += up >= 0 ? l1_diff(f.value(base + up), fi) : l1(fi);
        if (find(col.w[i] - t) < 0) acc += l1(fi);
      }
      v[t - 1] += acc;
    }
    base += n;
  }
  return v;
}

void check_integer(const LatticeFunction& f) {
  if (f.dim() != 1) fail(ErrorKind::validation, "coarea check needs a scalar function");
  for (size_t i = 0; i < f.support().size(); ++i) {
    double v = f.value(i)[0];
    if (v != std::nearbyint(v) || std::fabs(v) > 1e15)
      fail(ErrorKind::validation, "function values must be integers");
  }
}

}  // namespace

PoincareSides poincare_sides(const LatticeFunction& f) {
  const FiniteSet& s = f.support();
  const int k = s.rank();
  PoincareSides out;
  double rhs = 0;
  int32_t nb[kMaxCoords];
  for (size_t i = 0; i < s.size(); ++i) {
    auto fi = f.value(i);
    for (int j = 0; j < 4 * k; ++j) {
      int64_t n = generator_step(k, s.key(i), j, nb) ? s.index_of(nb) : -1;
      // outside the support the neighbour contributes |φ(h)| twice: once as
      // the pair (h, hσ) and once as (hσ, h) by symmetry of the generators
      rhs += n >= 0 ? l1_diff(f.value(static_cast<size_t>(n)), fi) : 2 * l1(fi);
    }
  }
  out.rhs = rhs;
  const int64_t t0 = s.max_column_span();
  auto v = vertical_differences(f, t0);
  double mass = 0;
  for (size_t i = 0; i < s.size(); ++i) mass += l1(f.value(i));
  out.lhs = spectrum_l2(v, 2 * mass, t0).value;
  return out;
}

int64_t poincare_rhs_exact(const LatticeFunction& f) {
  check_integer(f);
  const FiniteSet& s = f.support();
  const int k = s.rank();
  int64_t rhs = 0;
  int32_t nb[kMaxCoords];
  for (size_t i = 0; i < s.size(); ++i) {
    int64_t fi = static_cast<int64_t>(f.value(i)[0]);
    for (int j = 0; j < 4 * k; ++j) {
      int64_t n = generator_step(k, s.key(i), j, nb) ? s.index_of(nb) : -1;
      int64_t d = n >= 0 ? static_cast<int64_t>(f.value(static_cast<size_t>(n))[0]) - fi : 0;
      rhs = checked::add(rhs, n >= 0 ? std::llabs(d) : 2 * std::llabs(fi));
    }
  }
  return rhs;
}

CoareaReport coarea_check(const LatticeFunction& f) {
  check_integer(f);
  CoareaReport rep;
  rep.rhs = poincare_rhs_exact(f);
  rep.lhs = poincare_sides(f).lhs;
  int64_t lo = 0, hi = 0;
  for (size_t i = 0; i < f.support().size(); ++i) {
    int64_t v = static_cast<int64_t>(f.value(i)[0]);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const auto& pts = f.support().members();
  for (int64_t u = lo + 1; u <= hi; ++u) {
    // Ω_u = {φ < u}; for u > 0 it is the complement of the finite {φ >= u},
    // which has the same horizontal and vertical boundaries.
    std::vector<DiscreteElement> level;
    for (size_t i = 0; i < pts.size(); ++i) {
      int64_t v = static_cast<int64_t>(f.value(i)[0]);
      if (u <= 0 ? v < u : v >= u) level.push_back(pts[i]);
    }
    FiniteSet omega(f.rank(), level);
    rep.rhs_levels = checked::add(rep.rhs_levels, 2 * static_cast<int64_t>(horizontal_perimeter(omega)));
    rep.lhs_levels += vertical_perimeter(omega).value;
    ++rep.levels;
  }
  return rep;
}

LocalPoincare local_poincare(const LatticeFunction& f, int n, double alpha,
                             const cayley::BallOptions& opts) {
  if (n < 1) fail(ErrorKind::validation, "n must be at least 1");
  if (!(alpha >= 1)) fail(ErrorKind::validation, "alpha must be at least 1");
  const int k = f.rank();
  const int dim = f.dim();
  LocalPoincare out;
  out.outer_radius = static_cast<int>(std::ceil(alpha * n));
  const FiniteSet& s = f.support();

  auto inner = cayley::build_ball(k, n, opts);
  const int64_t tmax = int64_t{n} * n;
  std::vector<double> a(dim), b(dim);
  double lhs2 = 0;
  for (int64_t t = 1; t <= tmax; ++t) {
    double vt = 0;
    for (size_t i : inner.sorted()) {
      DiscreteElement h = inner.table().element(i);
      f.value_at(h, a.data());
      f.value_at(mul(h, DiscreteElement::central(k, t)), b.data());
      vt += l1_diff(a, b);
    }
    lhs2 += (vt / static_cast<double>(t)) * (vt / static_cast<double>(t));
  }
  out.lhs = std::sqrt(lhs2);

  // Only h in Ω or with a neighbour in Ω contribute to the rhs.
  ElementTable cand(k, s.size() * (4 * k + 1));
  int32_t nb[kMaxCoords];
  for (size_t i = 0; i < s.size(); ++i) {
    cand.insert(s.key(i));
    for (int j = 0; j < 4 * k; ++j)
      if (generator_step(k, s.key(i), j, nb)) cand.insert(nb);
  }
  // Grow the ball until every candidate is inside or the outer radius is hit.
  int radius = std::min(out.outer_radius, std::max(1, n));
  for (;;) {
    auto ball = cayley::build_ball(k, radius, opts);
    bool all_inside = true;
    for (size_t c = 0; c < cand.size() && all_inside; ++c) all_inside = ball.table().find(cand.key(c)) >= 0;
    if (all_inside || radius == out.outer_radius) {
      double rhs = 0;
      for (size_t c = 0; c < cand.size(); ++c) {
        if (ball.table().find(cand.key(c)) < 0) continue;
        DiscreteElement h = cand.element(c);
        f.value_at(h, a.data());
        for (int j = 0; j < 4 * k; ++j) {
          if (!generator_step(k, cand.key(c), j, nb)) fail(ErrorKind::overflow, "key range");
          f.value_at(ElementTable::decode(k, nb), b.data());
          rhs += l1_diff(a, b);
        }
      }
      out.rhs = rhs;
      return out;
    }
    radius = std::min(out.outer_radius, 2 * radius);
  }
}

std::vector<FiniteSet> coset_partition(int k, const std::vector<int>& subset, const FiniteSet& box) {
  if (subset.empty()) fail(ErrorKind::validation, "index set A must be nonempty");
  if (box.rank() != k) fail(ErrorKind::validation, "dimension mismatch");
  std::vector<bool> in_a(k, false);
  for (int i : subset) {
    if (i < 1 || i > k || in_a[i - 1]) fail(ErrorKind::validation, "invalid index set A");
    in_a[i - 1] = true;
  }
  std::map<std::vector<int64_t>, std::vector<DiscreteElement>> pieces;
  for (const auto& g : box.members()) {
    std::vector<int64_t> key;
    for (int j = 0; j < k; ++j)
      if (!in_a[j]) {
        key.push_back(g.x(j));
        key.push_back(g.y(j));
      }
    pieces[key].push_back(g);
  }
  std::vector<FiniteSet> out;
  out.reserve(pieces.size());
  for (auto& [key, pts] : pieces) out.emplace_back(k, pts);
  return out;
}

}  // namespace heis::perimeter
