#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heis {

/// Largest supported rank k. Elements live in fixed inline storage.
inline constexpr int kMaxRank = 8;
inline constexpr int kMaxCoords = 2 * kMaxRank + 1;

inline int coord_count(int k) { return 2 * k + 1; }

/// Element of the integer Heisenberg group H_Z^{2k+1} in matrix coordinates.
///
/// Coordinates are stored as x_1..x_k, y_1..y_k, w where w is the top-right
/// matrix entry. All arithmetic is exact and overflow-checked.
class DiscreteElement {
 public:
  DiscreteElement() = default;
  explicit DiscreteElement(int k);
  DiscreteElement(std::span<const int64_t> x, std::span<const int64_t> y,
                  int64_t w);

  static DiscreteElement identity(int k) { return DiscreteElement(k); }
  static DiscreteElement central(int k, int64_t t);
  static DiscreteElement from_coords(int k, std::span<const int64_t> coords);

  int rank() const { return k_; }
  int64_t x(int i) const { return c_[i]; }
  int64_t y(int i) const { return c_[k_ + i]; }
  int64_t w() const { return c_[2 * k_]; }
  int64_t coord(int j) const { return c_[j]; }
  std::span<const int64_t> coords() const {
    return {c_.data(), static_cast<size_t>(coord_count(k_))};
  }
  bool is_identity() const;

  friend bool operator==(const DiscreteElement&, const DiscreteElement&) = default;
  friend auto operator<=>(const DiscreteElement&, const DiscreteElement&) = default;

 private:
  int k_ = 0;
  std::array<int64_t, kMaxCoords> c_{};
};

DiscreteElement mul(const DiscreteElement& a, const DiscreteElement& b);
DiscreteElement inverse(const DiscreteElement& a);
DiscreteElement commutator(const DiscreteElement& a, const DiscreteElement& b);
DiscreteElement power(const DiscreteElement& a, int64_t n);

inline DiscreteElement operator*(const DiscreteElement& a, const DiscreteElement& b) {
  return mul(a, b);
}

/// a_i and b_i, 0-based index i.
DiscreteElement gen_a(int k, int i);
DiscreteElement gen_b(int k, int i);

struct GeneratorSet {
  int k = 0;
  /// Order: a_1, b_1, a_1^{-1}, b_1^{-1}, a_2, ...
  std::vector<DiscreteElement> elements;
};

GeneratorSet generators(int k);

/// "k;x1,...,xk;y1,...,yk;w"
std::string to_string(const DiscreteElement& g);
DiscreteElement parse_element(std::string_view text);

/// Fixed-width byte key: each coordinate as a big-endian 32-bit word with the
/// sign bit flipped, so bytewise order equals lexicographic coordinate order.
std::string packed_key(const DiscreteElement& g);
DiscreteElement unpack_key(int k, std::string_view key);

namespace checked {
int64_t add(int64_t a, int64_t b);
int64_t sub(int64_t a, int64_t b);
int64_t mul(int64_t a, int64_t b);
int64_t neg(int64_t a);
}  // namespace checked

}  // namespace heis
