#include "heis/continuum/profile.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "heis/core/error.hpp"
#include "heis/core/parallel.hpp"

namespace heis::continuum {

namespace {

constexpr uint64_t kBlock = 4096;

double pow_int(double b, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// ∫ of v^2 between two samples under geometric interpolation.
double segment(double a2, double b2, double ds) {
  if (a2 <= 0 || b2 <= 0) return 0.5 * (a2 + b2) * ds;
  if (std::fabs(a2 - b2) <= 1e-14 * std::max(a2, b2)) return 0.5 * (a2 + b2) * ds;
  return (b2 - a2) * ds / std::log(b2 / a2);
}

double tail(double inner2, double outer2, double ds) {
  if (outer2 == 0) return 0;
  if (!(inner2 > outer2))
    fail(ErrorKind::validation, "profile tail does not decay; extend the s-grid");
  return outer2 * ds / std::log(inner2 / outer2);
}

}  // namespace

std::vector<double> s_grid(double s0, double s1, double ds) {
  if (!(ds > 0) || !(s1 >= s0) || !std::isfinite(s0) || !std::isfinite(s1))
    fail(ErrorKind::validation, "invalid s-grid");
  std::vector<double> g;
  const auto n = static_cast<int64_t>(std::floor((s1 - s0) / ds + 1e-9));
  for (int64_t i = 0; i <= n; ++i) g.push_back(s0 + static_cast<double>(i) * ds);
  return g;
}

double box_vertical_profile(const BoxSpec& b, double s) {
  if (!(b.r > 0)) fail(ErrorKind::validation, "box radius must be positive");
  const double base = pow_int(2 * b.r, 2 * b.k);
  return base * 2 * std::min(std::exp2(2 * s), 2 * b.r * b.r) / std::exp2(s);
}

Profile box_profile(const BoxSpec& b, const std::vector<double>& grid) {
  Profile p;
  p.kind = ProfileKind::exact;
  p.spacing = grid.size() > 1 ? grid[1] - grid[0] : 0;
  for (double s : grid) p.samples.push_back({s, box_vertical_profile(b, s), 0});
  return p;
}

double box_l2_norm(const BoxSpec& b) {
  if (!(b.r > 0)) fail(ErrorKind::validation, "box radius must be positive");
  return pow_int(2 * b.r, 2 * b.k) * 4 * b.r / std::sqrt(2 * std::numbers::ln2);
}

double profile_l2_norm(const Profile& p) {
  const auto& v = p.samples;
  if (v.empty()) return 0;
  bool all_zero = true;
  for (const auto& x : v) {
    if (!(x.value >= 0) || !std::isfinite(x.value))
      fail(ErrorKind::validation, "profile values must be finite and nonnegative");
    all_zero = all_zero && x.value == 0;
  }
  if (all_zero) return 0;
  if (v.size() < 2) fail(ErrorKind::validation, "profile needs at least two samples");
  const double ds = p.spacing;
  if (!(ds > 0)) fail(ErrorKind::validation, "profile spacing must be positive");
  for (size_t i = 1; i < v.size(); ++i)
    if (std::fabs(v[i].s - v[i - 1].s - ds) > 1e-9 * std::max(1.0, ds))
      fail(ErrorKind::validation, "profile grid is not uniform");
  double total = 0;
  for (size_t i = 1; i < v.size(); ++i) total += segment(v[i - 1].value * v[i - 1].value,
                                                         v[i].value * v[i].value, ds);
  const size_t n = v.size();
  total += tail(v[1].value * v[1].value, v[0].value * v[0].value, ds);
  total += tail(v[n - 2].value * v[n - 2].value, v[n - 1].value * v[n - 1].value, ds);
  return std::sqrt(total);
}

Profile mc_vertical_profile(const Indicator& e, const QuasiBall& u, const std::vector<double>& grid,
                            const McOptions& opts) {
  if (opts.n_samples < 1000) fail(ErrorKind::validation, "n_samples must be at least 1000");
  if (!(u.radius > 0) || !std::isfinite(u.radius)) fail(ErrorKind::validation, "degenerate ball U");
  if (grid.empty()) fail(ErrorKind::validation, "empty s-grid");
  const int k = u.center.rank();
  const size_t m = grid.size();
  std::vector<ContinuousPoint> shifts;
  for (double s : grid) shifts.push_back(ContinuousPoint::along_z(k, -std::exp2(2 * s)));

  const uint64_t n = opts.n_samples;
  const size_t blocks = static_cast<size_t>((n + kBlock - 1) / kBlock);
  std::vector<uint64_t> hits(blocks * m, 0);
  parallel_tasks(blocks, opts.workers, [&](size_t b) {
    Rng rng = Rng::stream(opts.seed, b);
    const uint64_t count = std::min<uint64_t>(kBlock, n - b * kBlock);
    uint64_t* h = hits.data() + b * m;
    for (uint64_t i = 0; i < count; ++i) {
      ContinuousPoint p = sample_ball(u, rng);
      const bool in = e(p);
      for (size_t j = 0; j < m; ++j)
        if (e(mul(p, shifts[j])) != in) ++h[j];
    }
  });

  const double vol = quasi_ball_volume(k, u.radius);
  const double nd = static_cast<double>(n);
  Profile out;
  out.kind = ProfileKind::monte_carlo;
  out.spacing = m > 1 ? grid[1] - grid[0] : 0;
  for (size_t j = 0; j < m; ++j) {
    uint64_t c = 0;
    for (size_t b = 0; b < blocks; ++b) c += hits[b * m + j];
    const double ph = static_cast<double>(c) / nd;
    const double scale_s = vol / std::exp2(grid[j]);
    out.samples.push_back({grid[j], scale_s * ph, scale_s * std::sqrt(ph * (1 - ph) / nd)});
  }
  return out;
}

ScalingResidual scaling_identity_check(const BoxSpec& b, double t, double rho) {
  if (!(t > 0)) fail(ErrorKind::validation, "t must be positive");
  ScalingResidual r;
  r.lhs = box_vertical_profile({b.k, t * b.r}, rho);
  r.rhs = std::pow(t, 2 * b.k + 1) * box_vertical_profile(b, rho - std::log2(t));
  r.residual = std::fabs(r.lhs - r.rhs) / std::max(std::fabs(r.lhs), 1.0);
  return r;
}

ScalingResidual scaling_identity_check(const Indicator& e, const QuasiBall& u, double t, double rho,
                                       const McOptions& opts) {
  if (!(t > 0)) fail(ErrorKind::validation, "t must be positive");
  QuasiBall ut{scale(t, u.center), t * u.radius};
  auto lhs = mc_vertical_profile(scaled_indicator(e, t), ut, {rho}, opts).samples[0];
  auto rhs = mc_vertical_profile(e, u, {rho - std::log2(t)}, opts).samples[0];
  const double f = std::pow(t, 2 * u.center.rank() + 1);
  ScalingResidual r;
  r.lhs = lhs.value;
  r.rhs = f * rhs.value;
  r.residual = std::fabs(r.lhs - r.rhs) / std::max(std::fabs(r.lhs), 1.0);
  r.stderr_ = std::hypot(lhs.stderr_, f * rhs.stderr_) / std::max(std::fabs(r.lhs), 1.0);
  return r;
}

std::string profile_csv(const Profile& p) {
  std::string out = "s,value,stderr\n";
  for (const auto& x : p.samples) out += fmt::format("{},{},{}\n", x.s, x.value, x.stderr_);
  return out;
}

}  // namespace heis::continuum
