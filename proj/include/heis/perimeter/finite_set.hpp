#pragma once

#include <span>
#include <vector>

#include "heis/core/element.hpp"
#include "heis/core/element_table.hpp"

namespace heis::perimeter {

/// One fiber of the projection (x, y, w) -> (x, y).
struct Column {
  std::vector<int64_t> base;  // x_1..x_k, y_1..y_k
  std::vector<int64_t> w;     // sorted, distinct
  int64_t span() const { return w.empty() ? 0 : w.back() - w.front(); }
};

/// Finite subset of H_Z^{2k+1}. Members are kept in packed-key order, which
/// also groups them into columns with increasing w.
class FiniteSet {
 public:
  explicit FiniteSet(int k);
  /// Duplicates are removed.
  FiniteSet(int k, std::span<const DiscreteElement> elements);

  int rank() const { return k_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(const DiscreteElement& g) const { return table_.contains(g); }
  /// Position in members(), or -1.
  int64_t index_of(const DiscreteElement& g) const { return table_.find(g); }
  int64_t index_of(const int32_t* key) const { return table_.find(key); }
  const int32_t* key(size_t index) const { return table_.key(index); }

  const std::vector<DiscreteElement>& members() const { return members_; }
  const std::vector<Column>& columns() const { return columns_; }

  /// Max over columns of (max w - min w); 0 for the empty set.
  int64_t max_column_span() const;
  /// Per-coordinate bounds (empty vectors for the empty set).
  const std::vector<int64_t>& lower() const { return lo_; }
  const std::vector<int64_t>& upper() const { return hi_; }

 private:
  int k_;
  std::vector<DiscreteElement> members_;
  std::vector<Column> columns_;
  ElementTable table_;
  std::vector<int64_t> lo_, hi_;
};

/// Same points with zero coordinates appended up to rank k2 >= rank.
FiniteSet embed_rank(const FiniteSet& s, int k2);

/// Finitely supported function H_Z^{2k+1} -> R^dim; zero off the support.
class LatticeFunction {
 public:
  struct Entry {
    DiscreteElement point;
    std::vector<double> value;
  };

  LatticeFunction(int k, int dim, std::vector<Entry> entries);

  static LatticeFunction indicator(const FiniteSet& s);
  static LatticeFunction scalar(int k, std::span<const DiscreteElement> points,
                                std::span<const double> values);

  int rank() const { return support_.rank(); }
  int dim() const { return dim_; }
  const FiniteSet& support() const { return support_; }
  std::span<const double> value(size_t index) const {
    return {values_.data() + index * dim_, static_cast<size_t>(dim_)};
  }
  /// Value at g (zero vector off the support) written to out[0..dim).
  void value_at(const DiscreteElement& g, double* out) const;
  /// Component-wise restriction to coordinate j.
  LatticeFunction component(int j) const;
  LatticeFunction scaled(double factor) const;

 private:
  int dim_;
  FiniteSet support_;
  std::vector<double> values_;
};

}  // namespace heis::perimeter
