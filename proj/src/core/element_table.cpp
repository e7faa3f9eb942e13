#include "heis/core/element_table.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

#include "heis/core/error.hpp"

namespace heis {

ElementTable::ElementTable(int k, size_t expected, size_t mem_cap_bytes)
    : k_(k), stride_(coord_count(k)), mem_cap_(mem_cap_bytes) {
  if (k < 1 || k > kMaxRank) fail(ErrorKind::validation, "rank k out of range");
  size_t cap = 16;
  while (cap < 2 * expected) cap <<= 1;
  rehash(cap);
  keys_.reserve(std::min<size_t>(expected, size_t{1} << 26) * stride_);
}

uint64_t ElementTable::hash(const int32_t* key) const {
  uint64_t h = 0x9E3779B97F4A7C15ull;
  for (int j = 0; j < stride_; ++j) {
    h ^= static_cast<uint32_t>(key[j]);
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 31;
  }
  h ^= h >> 29;
  h *= 0x94D049BB133111EBull;
  h ^= h >> 32;
  return h;
}

void ElementTable::rehash(size_t capacity) {
  size_t projected = capacity * sizeof(uint32_t) + keys_.capacity() * sizeof(int32_t);
  if (projected > mem_cap_)
    fail(ErrorKind::resource, "element table would exceed memory cap (" +
                                  std::to_string(mem_cap_ >> 20) + " MiB)");
  slots_.assign(capacity, 0);
  mask_ = capacity - 1;
  for (size_t i = 0; i < count_; ++i) {
    size_t s = hash(key(i)) & mask_;
    while (slots_[s]) s = (s + 1) & mask_;
    slots_[s] = static_cast<uint32_t>(i + 1);
  }
}

int64_t ElementTable::find(const int32_t* k) const {
  size_t s = hash(k) & mask_;
  const size_t bytes = stride_ * sizeof(int32_t);
  while (uint32_t v = slots_[s]) {
    if (std::memcmp(key(v - 1), k, bytes) == 0) return v - 1;
    s = (s + 1) & mask_;
  }
  return npos;
}

std::pair<size_t, bool> ElementTable::insert(const int32_t* k) {
  size_t s = hash(k) & mask_;
  const size_t bytes = stride_ * sizeof(int32_t);
  while (uint32_t v = slots_[s]) {
    if (std::memcmp(key(v - 1), k, bytes) == 0) return {v - 1, false};
    s = (s + 1) & mask_;
  }
  if (count_ >= std::numeric_limits<uint32_t>::max() - 1)
    fail(ErrorKind::resource, "element table index space exhausted");
  if (keys_.size() + stride_ > keys_.capacity()) {
    size_t want = std::max<size_t>(keys_.capacity() * 2, 64 * stride_);
    if (want * sizeof(int32_t) + slots_.size() * sizeof(uint32_t) > mem_cap_)
      fail(ErrorKind::resource, "element table would exceed memory cap (" +
                                    std::to_string(mem_cap_ >> 20) + " MiB)");
    keys_.reserve(want);
  }
  keys_.insert(keys_.end(), k, k + stride_);
  size_t index = count_++;
  slots_[s] = static_cast<uint32_t>(index + 1);
  if (2 * count_ > slots_.size()) rehash(slots_.size() * 2);
  return {index, true};
}

std::pair<size_t, bool> ElementTable::insert(const DiscreteElement& g) {
  if (g.rank() != k_) fail(ErrorKind::validation, "dimension mismatch");
  int32_t buf[kMaxCoords];
  encode(g, buf);
  return insert(buf);
}

int64_t ElementTable::find(const DiscreteElement& g) const {
  if (g.rank() != k_) fail(ErrorKind::validation, "dimension mismatch");
  int32_t buf[kMaxCoords];
  for (int j = 0; j < stride_; ++j) {
    int64_t v = g.coord(j);
    if (v < std::numeric_limits<int32_t>::min() || v > std::numeric_limits<int32_t>::max())
      return npos;
    buf[j] = static_cast<int32_t>(v);
  }
  return find(buf);
}

bool ElementTable::key_less(const int32_t* a, const int32_t* b, int stride) {
  for (int j = 0; j < stride; ++j)
    if (a[j] != b[j]) return a[j] < b[j];
  return false;
}

std::vector<size_t> ElementTable::sorted_indices() const {
  std::vector<size_t> idx(count_);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return key_less(key(a), key(b), stride_); });
  return idx;
}

size_t ElementTable::memory_bytes() const {
  return slots_.capacity() * sizeof(uint32_t) + keys_.capacity() * sizeof(int32_t);
}

void ElementTable::encode(const DiscreteElement& g, int32_t* out) {
  for (int j = 0; j < coord_count(g.rank()); ++j) {
    int64_t v = g.coord(j);
    if (v < std::numeric_limits<int32_t>::min() || v > std::numeric_limits<int32_t>::max())
      fail(ErrorKind::overflow, "coordinate outside 32-bit key range: " + std::to_string(v));
    out[j] = static_cast<int32_t>(v);
  }
}

DiscreteElement ElementTable::decode(int k, const int32_t* key) {
  int64_t c[kMaxCoords];
  for (int j = 0; j < coord_count(k); ++j) c[j] = key[j];
  return DiscreteElement::from_coords(k, {c, static_cast<size_t>(coord_count(k))});
}

namespace {

bool fits(int64_t v) {
  return v >= std::numeric_limits<int32_t>::min() && v <= std::numeric_limits<int32_t>::max();
}

}  // namespace

bool generator_step(int k, const int32_t* from, int j, int32_t* to) {
  const int stride = coord_count(k);
  std::copy(from, from + stride, to);
  const int i = j / 4;
  const int64_t sign = (j % 4 < 2) ? 1 : -1;
  if (j % 2 == 0) {
    int64_t x = int64_t{from[i]} + sign;
    if (!fits(x)) return false;
    to[i] = static_cast<int32_t>(x);
    return true;
  }
  int64_t y = int64_t{from[k + i]} + sign;
  int64_t w = int64_t{from[2 * k]} + sign * from[i];
  if (!fits(y) || !fits(w)) return false;
  to[k + i] = static_cast<int32_t>(y);
  to[2 * k] = static_cast<int32_t>(w);
  return true;
}

bool central_step(int k, const int32_t* from, int64_t t, int32_t* to) {
  const int stride = coord_count(k);
  std::copy(from, from + stride, to);
  int64_t w = int64_t{from[2 * k]} + t;
  if (!fits(w)) return false;
  to[2 * k] = static_cast<int32_t>(w);
  return true;
}

}  // namespace heis
