#include "heis/continuum/voxelize.hpp"

#include "heis/core/error.hpp"
#include "heis/core/parallel.hpp"

namespace heis::continuum {

uint64_t LatticeRegion::count() const {
  uint64_t n = 1;
  for (size_t j = 0; j < lo.size(); ++j) {
    uint64_t w = static_cast<uint64_t>(hi[j] - lo[j] + 1);
    if (w != 0 && n > UINT64_MAX / w) fail(ErrorKind::overflow, "region too large");
    n *= w;
  }
  return n;
}

LatticeRegion cube_region(int k, int64_t half_width) {
  if (half_width < 0) fail(ErrorKind::validation, "half width must be nonnegative");
  LatticeRegion r;
  r.k = k;
  r.lo.assign(coord_count(k), -half_width);
  r.hi.assign(coord_count(k), half_width);
  return r;
}

perimeter::FiniteSet voxelize(const Indicator& e, double rho, const LatticeRegion& region,
                              const VoxelOptions& opts) {
  if (!(rho > 0)) fail(ErrorKind::validation, "rho must be positive");
  if (opts.samples_per_cell < 8) fail(ErrorKind::validation, "samples_per_cell must be at least 8");
  const int k = region.k;
  const int nc = coord_count(k);
  if (static_cast<int>(region.lo.size()) != nc || static_cast<int>(region.hi.size()) != nc)
    fail(ErrorKind::validation, "region dimension mismatch");
  for (int j = 0; j < nc; ++j)
    if (region.hi[j] < region.lo[j]) fail(ErrorKind::validation, "empty region");
  const uint64_t cells = region.count();
  if (cells > (uint64_t{1} << 28)) fail(ErrorKind::resource, "region has too many cells");

  std::vector<char> keep(cells, 0);
  constexpr uint64_t kBlock = 1024;
  const size_t blocks = static_cast<size_t>((cells + kBlock - 1) / kBlock);
  parallel_tasks(blocks, opts.workers, [&](size_t b) {
    int64_t c[kMaxCoords];
    for (uint64_t i = b * kBlock; i < std::min(cells, (b + 1) * kBlock); ++i) {
      uint64_t rest = i;
      for (int j = nc - 1; j >= 0; --j) {
        uint64_t w = static_cast<uint64_t>(region.hi[j] - region.lo[j] + 1);
        c[j] = region.lo[j] + static_cast<int64_t>(rest % w);
        rest /= w;
      }
      DiscreteElement h = DiscreteElement::from_coords(k, {c, static_cast<size_t>(nc)});
      ContinuousPoint hp = to_continuous(h);
      Rng rng = Rng::stream(opts.seed, i);
      int in = 0;
      ContinuousPoint q(k);
      for (int s = 0; s < opts.samples_per_cell; ++s) {
        for (int j = 0; j < nc; ++j) q.coord(j) = rng.uniform() - 0.5;
        if (e(scale(rho, mul(hp, q)))) ++in;
      }
      keep[i] = 2 * in > opts.samples_per_cell;
    }
  });

  std::vector<DiscreteElement> pts;
  int64_t c[kMaxCoords];
  for (uint64_t i = 0; i < cells; ++i) {
    if (!keep[i]) continue;
    uint64_t rest = i;
    for (int j = nc - 1; j >= 0; --j) {
      uint64_t w = static_cast<uint64_t>(region.hi[j] - region.lo[j] + 1);
      c[j] = region.lo[j] + static_cast<int64_t>(rest % w);
      rest /= w;
    }
    pts.push_back(DiscreteElement::from_coords(k, {c, static_cast<size_t>(nc)}));
  }
  return perimeter::FiniteSet(k, pts);
}

}  // namespace heis::continuum
