#include "heis/perimeter/finite_set.hpp"

#include <algorithm>
#include <cmath>

#include "heis/core/error.hpp"

namespace heis::perimeter {

FiniteSet::FiniteSet(int k) : k_(k), table_(k) {}

FiniteSet::FiniteSet(int k, std::span<const DiscreteElement> elements)
    : k_(k), members_(elements.begin(), elements.end()), table_(k, elements.size()) {
  for (const auto& g : members_)
    if (g.rank() != k) fail(ErrorKind::validation, "dimension mismatch in set");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  const int stride = coord_count(k);
  for (const auto& g : members_) table_.insert(g);
  if (!members_.empty()) {
    lo_.assign(stride, INT64_MAX);
    hi_.assign(stride, INT64_MIN);
  }
  for (const auto& g : members_) {
    for (int j = 0; j < stride; ++j) {
      lo_[j] = std::min(lo_[j], g.coord(j));
      hi_[j] = std::max(hi_[j], g.coord(j));
    }
    auto c = g.coords();
    if (columns_.empty() || !std::equal(columns_.back().base.begin(), columns_.back().base.end(),
                                        c.begin())) {
      Column col;
      col.base.assign(c.begin(), c.begin() + 2 * k);
      columns_.push_back(std::move(col));
    }
    columns_.back().w.push_back(g.w());
  }
}

int64_t FiniteSet::max_column_span() const {
  int64_t s = 0;
  for (const auto& c : columns_) s = std::max(s, c.span());
  return s;
}

FiniteSet embed_rank(const FiniteSet& s, int k2) {
  const int k = s.rank();
  if (k2 < k) fail(ErrorKind::validation, "target rank must not be smaller");
  std::vector<DiscreteElement> out;
  out.reserve(s.size());
  std::vector<int64_t> x(k2), y(k2);
  for (const auto& g : s.members()) {
    std::fill(x.begin(), x.end(), 0);
    std::fill(y.begin(), y.end(), 0);
    for (int i = 0; i < k; ++i) {
      x[i] = g.x(i);
      y[i] = g.y(i);
    }
    out.emplace_back(x, y, g.w());
  }
  return FiniteSet(k2, out);
}

namespace {

std::vector<DiscreteElement> points_of(const std::vector<LatticeFunction::Entry>& entries) {
  std::vector<DiscreteElement> pts;
  pts.reserve(entries.size());
  for (const auto& e : entries) pts.push_back(e.point);
  return pts;
}

}  // namespace

LatticeFunction::LatticeFunction(int k, int dim, std::vector<Entry> entries)
    : dim_(dim), support_(k, points_of(entries)) {
  if (dim < 1) fail(ErrorKind::validation, "function dimension must be positive");
  if (support_.size() != entries.size())
    fail(ErrorKind::validation, "duplicate point in function entries");
  values_.assign(support_.size() * dim, 0.0);
  for (const auto& e : entries) {
    if (static_cast<int>(e.value.size()) != dim)
      fail(ErrorKind::validation, "dimension mismatch across support");
    size_t i = static_cast<size_t>(support_.index_of(e.point));
    for (int j = 0; j < dim; ++j) {
      if (!std::isfinite(e.value[j])) fail(ErrorKind::validation, "non-finite function value");
      values_[i * dim + j] = e.value[j];
    }
  }
}

LatticeFunction LatticeFunction::indicator(const FiniteSet& s) {
  std::vector<Entry> entries;
  entries.reserve(s.size());
  for (const auto& g : s.members()) entries.push_back({g, {1.0}});
  return LatticeFunction(s.rank(), 1, std::move(entries));
}

LatticeFunction LatticeFunction::scalar(int k, std::span<const DiscreteElement> points,
                                        std::span<const double> values) {
  if (points.size() != values.size()) fail(ErrorKind::validation, "points/values size mismatch");
  std::vector<Entry> entries;
  entries.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) entries.push_back({points[i], {values[i]}});
  return LatticeFunction(k, 1, std::move(entries));
}

void LatticeFunction::value_at(const DiscreteElement& g, double* out) const {
  int64_t i = support_.index_of(g);
  for (int j = 0; j < dim_; ++j) out[j] = i < 0 ? 0.0 : values_[i * dim_ + j];
}

LatticeFunction LatticeFunction::component(int j) const {
  if (j < 0 || j >= dim_) fail(ErrorKind::validation, "component out of range");
  std::vector<Entry> entries;
  for (size_t i = 0; i < support_.size(); ++i)
    entries.push_back({support_.members()[i], {values_[i * dim_ + j]}});
  return LatticeFunction(rank(), 1, std::move(entries));
}

LatticeFunction LatticeFunction::scaled(double factor) const {
  std::vector<Entry> entries;
  for (size_t i = 0; i < support_.size(); ++i) {
    std::vector<double> v(value(i).begin(), value(i).end());
    for (auto& x : v) x *= factor;
    entries.push_back({support_.members()[i], std::move(v)});
  }
  return LatticeFunction(rank(), dim_, std::move(entries));
}

}  // namespace heis::perimeter
