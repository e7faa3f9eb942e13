#include "heis/core/element.hpp"

#include <charconv>
#include <limits>

#include "heis/core/error.hpp"

namespace heis {

namespace checked {

int64_t add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::overflow, "integer overflow in addition");
  return r;
}

int64_t sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::overflow, "integer overflow in subtraction");
  return r;
}

int64_t mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::overflow, "integer overflow in multiplication");
  return r;
}

int64_t neg(int64_t a) { return sub(0, a); }

}  // namespace checked

namespace {

void check_rank(int k) {
  if (k < 1 || k > kMaxRank)
    fail(ErrorKind::validation, "rank k must be in [1," + std::to_string(kMaxRank) + "], got " +
                                    std::to_string(k));
}

void check_same(const DiscreteElement& a, const DiscreteElement& b) {
  if (a.rank() != b.rank())
    fail(ErrorKind::validation, "dimension mismatch: k=" + std::to_string(a.rank()) +
                                    " vs k=" + std::to_string(b.rank()));
}

}  // namespace

DiscreteElement::DiscreteElement(int k) : k_(k) { check_rank(k); }

DiscreteElement::DiscreteElement(std::span<const int64_t> x, std::span<const int64_t> y,
                                 int64_t w)
    : k_(static_cast<int>(x.size())) {
  check_rank(k_);
  if (y.size() != x.size()) fail(ErrorKind::validation, "x and y must have equal length");
  for (int i = 0; i < k_; ++i) {
    c_[i] = x[i];
    c_[k_ + i] = y[i];
  }
  c_[2 * k_] = w;
}

DiscreteElement DiscreteElement::central(int k, int64_t t) {
  DiscreteElement g(k);
  g.c_[2 * k] = t;
  return g;
}

DiscreteElement DiscreteElement::from_coords(int k, std::span<const int64_t> coords) {
  DiscreteElement g(k);
  if (coords.size() != static_cast<size_t>(coord_count(k)))
    fail(ErrorKind::validation, "coordinate vector has wrong length");
  for (int j = 0; j < coord_count(k); ++j) g.c_[j] = coords[j];
  return g;
}

bool DiscreteElement::is_identity() const {
  for (int j = 0; j < coord_count(k_); ++j)
    if (c_[j] != 0) return false;
  return true;
}

DiscreteElement mul(const DiscreteElement& a, const DiscreteElement& b) {
  check_same(a, b);
  const int k = a.rank();
  std::array<int64_t, kMaxCoords> c{};
  int64_t w = checked::add(a.w(), b.w());
  for (int i = 0; i < k; ++i) {
    c[i] = checked::add(a.x(i), b.x(i));
    c[k + i] = checked::add(a.y(i), b.y(i));
    w = checked::add(w, checked::mul(a.x(i), b.y(i)));
  }
  c[2 * k] = w;
  return DiscreteElement::from_coords(k, {c.data(), static_cast<size_t>(coord_count(k))});
}

DiscreteElement inverse(const DiscreteElement& a) {
  const int k = a.rank();
  std::array<int64_t, kMaxCoords> c{};
  int64_t w = checked::neg(a.w());
  for (int i = 0; i < k; ++i) {
    c[i] = checked::neg(a.x(i));
    c[k + i] = checked::neg(a.y(i));
    w = checked::add(w, checked::mul(a.x(i), a.y(i)));
  }
  c[2 * k] = w;
  return DiscreteElement::from_coords(k, {c.data(), static_cast<size_t>(coord_count(k))});
}

DiscreteElement commutator(const DiscreteElement& a, const DiscreteElement& b) {
  return mul(mul(a, b), mul(inverse(a), inverse(b)));
}

DiscreteElement power(const DiscreteElement& a, int64_t n) {
  DiscreteElement base = n < 0 ? inverse(a) : a;
  uint64_t e = n < 0 ? 0 - static_cast<uint64_t>(n) : static_cast<uint64_t>(n);
  DiscreteElement acc = DiscreteElement::identity(a.rank());
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

DiscreteElement gen_a(int k, int i) {
  std::array<int64_t, kMaxCoords> c{};
  c[i] = 1;
  return DiscreteElement::from_coords(k, {c.data(), static_cast<size_t>(coord_count(k))});
}

DiscreteElement gen_b(int k, int i) {
  std::array<int64_t, kMaxCoords> c{};
  c[k + i] = 1;
  return DiscreteElement::from_coords(k, {c.data(), static_cast<size_t>(coord_count(k))});
}

GeneratorSet generators(int k) {
  check_rank(k);
  GeneratorSet s;
  s.k = k;
  for (int i = 0; i < k; ++i) {
    DiscreteElement a = gen_a(k, i), b = gen_b(k, i);
    s.elements.push_back(a);
    s.elements.push_back(b);
    s.elements.push_back(inverse(a));
    s.elements.push_back(inverse(b));
  }
  return s;
}

std::string to_string(const DiscreteElement& g) {
  const int k = g.rank();
  std::string out = std::to_string(k) + ";";
  for (int i = 0; i < k; ++i) out += (i ? "," : "") + std::to_string(g.x(i));
  out += ";";
  for (int i = 0; i < k; ++i) out += (i ? "," : "") + std::to_string(g.y(i));
  out += ";" + std::to_string(g.w());
  return out;
}

namespace {

int64_t parse_int(std::string_view s, std::string_view whole) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    fail(ErrorKind::validation, "malformed element: '" + std::string(whole) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (;;) {
    size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

DiscreteElement parse_element(std::string_view text) {
  auto groups = split(text, ';');
  if (groups.size() != 4) fail(ErrorKind::validation, "malformed element: '" + std::string(text) + "'");
  int k = static_cast<int>(parse_int(groups[0], text));
  check_rank(k);
  auto xs = split(groups[1], ',');
  auto ys = split(groups[2], ',');
  if (xs.size() != static_cast<size_t>(k) || ys.size() != static_cast<size_t>(k))
    fail(ErrorKind::validation, "element coordinate count does not match k: '" + std::string(text) + "'");
  std::array<int64_t, kMaxCoords> c{};
  for (int i = 0; i < k; ++i) {
    c[i] = parse_int(xs[i], text);
    c[k + i] = parse_int(ys[i], text);
  }
  c[2 * k] = parse_int(groups[3], text);
  return DiscreteElement::from_coords(k, {c.data(), static_cast<size_t>(coord_count(k))});
}

std::string packed_key(const DiscreteElement& g) {
  std::string key;
  key.reserve(4 * coord_count(g.rank()));
  for (int64_t v : g.coords()) {
    if (v < std::numeric_limits<int32_t>::min() || v > std::numeric_limits<int32_t>::max())
      fail(ErrorKind::overflow, "coordinate outside 32-bit key range: " + std::to_string(v));
    uint32_t u = static_cast<uint32_t>(static_cast<int32_t>(v)) ^ 0x80000000u;
    for (int s = 24; s >= 0; s -= 8) key.push_back(static_cast<char>((u >> s) & 0xff));
  }
  return key;
}

DiscreteElement unpack_key(int k, std::string_view key) {
  if (key.size() != static_cast<size_t>(4 * coord_count(k)))
    fail(ErrorKind::validation, "packed key has wrong length");
  std::array<int64_t, kMaxCoords> c{};
  for (int j = 0; j < coord_count(k); ++j) {
    uint32_t u = 0;
    for (int b = 0; b < 4; ++b) u = (u << 8) | static_cast<unsigned char>(key[4 * j + b]);
    c[j] = static_cast<int32_t>(u ^ 0x80000000u);
  }
  return DiscreteElement::from_coords(k, {c.data(), static_cast<size_t>(coord_count(k))});
}

}  // namespace heis
