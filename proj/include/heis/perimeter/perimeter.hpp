#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heis/perimeter/finite_set.hpp"

namespace heis::perimeter {

/// ψ1(n + 1) = Σ_{t > n} 1/t^2 with an error bound from two evaluations.
struct ZetaTail {
  double value = 0;
  double error = 0;
};
ZetaTail inverse_square_tail(int64_t n);

/// Number of ordered pairs (h, hσ) with h in Ω, hσ outside.
uint64_t horizontal_perimeter(const FiniteSet& s);

/// |∂_v^t Ω| = #{h : 1_Ω(h) != 1_Ω(h c^t)}, counted per column.
uint64_t vertical_t_boundary(const FiniteSet& s, int64_t t);

/// Same quantity by hash lookups over Ω ∪ Ω c^{-t}; an independent route.
uint64_t membership_difference_count(const FiniteSet& s, int64_t t);

struct VerticalSpectrum {
  std::vector<uint64_t> head;  // head[t-1] = |∂_v^t Ω| for t = 1..t0
  uint64_t set_size = 0;
  int64_t t0 = 0;
  double tail = 0;        // Σ_{t > t0} (2|Ω|)^2 / t^2
  double tail_error = 0;
};

VerticalSpectrum vertical_spectrum(const FiniteSet& s);

struct PerimeterValue {
  double value = 0;
  double error = 0;
};

/// sqrt(Σ_{t<=t0} head[t-1]^2 / t^2 + far^2 ψ1(t0 + 1)) where `far` is the
/// constant value of the sequence for t > t0.
PerimeterValue spectrum_l2(std::span<const double> head, double far, int64_t t0);

/// sqrt(Σ_t |∂_v^t Ω|^2 / t^2)
PerimeterValue vertical_perimeter(const FiniteSet& s);
PerimeterValue vertical_perimeter(const VerticalSpectrum& spec);

/// |∂_v Ω| / |∂_h Ω|; the empty set is an error.
double isoperimetric_ratio(const FiniteSet& s);

/// "t,count" rows followed by "tail,<value>".
std::string spectrum_csv(const VerticalSpectrum& spec);

/// Exploratory ℓq spectrum norm (Σ_t |∂_v^t Ω|^q / t^{1+q/2})^{1/q}, q > 2.
double lq_spectrum_norm(const VerticalSpectrum& spec, double q);

}  // namespace heis::perimeter
