#pragma once

#include <cstdint>
#include <vector>

#include "heis/cayley/ball.hpp"
#include "heis/perimeter/finite_set.hpp"

namespace heis::perimeter {

struct PoincareSides {
  double lhs = 0;
  double rhs = 0;
};

/// lhs = sqrt(Σ_{t>=1} (Σ_h ||φ(h c^t) − φ(h)||_1)^2 / t^2)
/// rhs = Σ_h Σ_σ ||φ(hσ) − φ(h)||_1
/// Vector-valued functions use the l1 norm of the difference; scalar
/// functions are the dim = 1 case.
PoincareSides poincare_sides(const LatticeFunction& f);

/// Same sums with integer arithmetic for the rhs; requires integer values.
int64_t poincare_rhs_exact(const LatticeFunction& f);

struct CoareaReport {
  int64_t rhs = 0;         // rhs(φ)
  int64_t rhs_levels = 0;  // Σ_u rhs(1_{Ω_u})
  double lhs = 0;          // lhs(φ)
  double lhs_levels = 0;   // Σ_u lhs(1_{Ω_u})
  int levels = 0;          // number of u with Ω_u a nontrivial cut
  bool rhs_equal() const { return rhs == rhs_levels; }
  double lhs_slack() const { return lhs_levels - lhs; }
};

/// Level sets Ω_u = {φ < u}, u ∈ Z. Requires a scalar integer-valued φ.
CoareaReport coarea_check(const LatticeFunction& f);

struct LocalPoincare {
  double lhs = 0;  // over h in B_n, 1 <= t <= n^2
  double rhs = 0;  // over h in B_{ceil(alpha n)}
  int outer_radius = 0;
};

LocalPoincare local_poincare(const LatticeFunction& f, int n, double alpha = 21.0,
                             const cayley::BallOptions& opts = {});

/// Left cosets of the subgroup generated by {a_i, b_i : i in A} (1-based
/// indices). Two elements share a coset iff their x_j, y_j agree for all
/// j outside A; c lies in the subgroup so w is unconstrained.
std::vector<FiniteSet> coset_partition(int k, const std::vector<int>& subset, const FiniteSet& box);

}  // namespace heis::perimeter
