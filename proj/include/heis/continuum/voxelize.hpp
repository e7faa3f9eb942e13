#pragma once

#include <cstdint>
#include <vector>

#include "heis/continuum/sets.hpp"
#include "heis/perimeter/finite_set.hpp"

namespace heis::continuum {

/// Lattice points h with lo[j] <= coord_j(h) <= hi[j] in matrix coordinates.
struct LatticeRegion {
  int k = 2;
  std::vector<int64_t> lo, hi;
  uint64_t count() const;
};

LatticeRegion cube_region(int k, int64_t half_width);

struct VoxelOptions {
  int samples_per_cell = 33;
  uint64_t seed = 1;
  int workers = 1;
};

/// Lattice points h whose cell s_ρ(h C_0) is mostly inside E, where
/// C_0 = [-1/2, 1/2]^{2k+1} in exponential coordinates. Exact sample-count
/// ties exclude the cell. Cell i of the region draws from stream i.
perimeter::FiniteSet voxelize(const Indicator& e, double rho, const LatticeRegion& region,
                              const VoxelOptions& opts);

}  // namespace heis::continuum
