#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "heis/perimeter/finite_set.hpp"

namespace heis::perimeter {

/// Textual set spec: box(a,b,h) | ball(r) | column(H) | random_blob(size,seed)
///   box(a,b,h)       x_i in [0,a), y_i in [0,b), w in [0,h)
///   ball(r)          word-metric ball around the identity
///   column(H)        {c^j : 0 <= j < H}
///   random_blob(n,s) seeded cellular cluster of n points (see README)
struct SetSpec {
  enum class Kind { box, ball, column, random_blob };
  Kind kind = Kind::column;
  int64_t a = 1, b = 1, h = 1;
  int radius = 0;
  uint64_t size = 1;
  uint64_t seed = 0;

  std::string text() const;
};

SetSpec parse_set_spec(std::string_view text);
FiniteSet generate_set(int k, const SetSpec& spec);

/// Acceptance probability for a frontier candidate in random_blob.
inline constexpr double kBlobAcceptance = 0.7;

/// Points of the support where φ < u (first component).
FiniteSet sublevel_set(const LatticeFunction& f, double u);

/// 200 specs: singleton, columns H in {1,10,100,1000}, balls r = 1..3,
/// 92 boxes and 100 seeded blobs of 50..5000 points.
std::vector<SetSpec> default_corpus(uint64_t seed);

}  // namespace heis::perimeter
