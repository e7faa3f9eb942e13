#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "heis/core/element.hpp"

namespace heis {

/// Open-addressing set of elements stored as packed 32-bit coordinate words.
///
/// Elements get dense indices in insertion order. Keys are compared as signed
/// words, which orders them exactly like packed_key().
class ElementTable {
 public:
  static constexpr int64_t npos = -1;

  explicit ElementTable(int k, size_t expected = 0,
                        size_t mem_cap_bytes = std::numeric_limits<size_t>::max());

  int rank() const { return k_; }
  int stride() const { return stride_; }
  size_t size() const { return count_; }

  std::pair<size_t, bool> insert(const int32_t* key);
  std::pair<size_t, bool> insert(const DiscreteElement& g);
  int64_t find(const int32_t* key) const;
  int64_t find(const DiscreteElement& g) const;
  bool contains(const DiscreteElement& g) const { return find(g) != npos; }

  const int32_t* key(size_t index) const { return keys_.data() + index * stride_; }
  DiscreteElement element(size_t index) const { return decode(k_, key(index)); }

  /// Indices sorted by key.
  std::vector<size_t> sorted_indices() const;

  size_t memory_bytes() const;

  /// Throws overflow if a coordinate does not fit in 32 bits.
  static void encode(const DiscreteElement& g, int32_t* out);
  static DiscreteElement decode(int k, const int32_t* key);
  static bool key_less(const int32_t* a, const int32_t* b, int stride);

 private:
  uint64_t hash(const int32_t* key) const;
  void rehash(size_t capacity);

  int k_;
  int stride_;
  size_t count_ = 0;
  size_t mask_ = 0;
  size_t mem_cap_;
  std::vector<int32_t> keys_;
  std::vector<uint32_t> slots_;  // index + 1, 0 = empty
};

/// Right multiplication of a packed key by generator j in GeneratorSet order
/// (a_i, b_i, a_i^{-1}, b_i^{-1} for i = j / 4). Returns false if a coordinate
/// leaves the 32-bit range.
bool generator_step(int k, const int32_t* from, int j, int32_t* to);

/// Right multiplication by c^t on a packed key.
bool central_step(int k, const int32_t* from, int64_t t, int32_t* to);

}  // namespace heis
