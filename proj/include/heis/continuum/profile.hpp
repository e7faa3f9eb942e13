#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heis/continuum/sets.hpp"

namespace heis::continuum {

enum class ProfileKind { exact, monte_carlo };

struct ProfileSample {
  double s = 0;
  double value = 0;
  double stderr_ = 0;
};

struct Profile {
  std::vector<ProfileSample> samples;
  ProfileKind kind = ProfileKind::exact;
  double spacing = 0;  // declared s-grid step
};

/// Uniform grid s0, s0 + ds, ..., s1 (s1 included when it lies on the grid).
std::vector<double> s_grid(double s0, double s1, double ds);

/// (2r)^{2k} * 2 min(4^s, 2r^2) / 2^s
double box_vertical_profile(const BoxSpec& b, double s);
Profile box_profile(const BoxSpec& b, const std::vector<double>& grid);
/// Closed-form L2(ds) norm of the box profile, (2r)^{2k} 4r / sqrt(2 ln 2).
double box_l2_norm(const BoxSpec& b);

/// L2(ds) norm of a sampled profile. Between samples v^2 is interpolated
/// geometrically (exact for piecewise exponential profiles such as the box
/// with its knee on the grid); each tail is the exponential extrapolation of
/// the last two samples and must decay.
double profile_l2_norm(const Profile& p);

struct McOptions {
  uint64_t n_samples = 100000;
  uint64_t seed = 1;
  int workers = 1;
};

/// Estimates vol(U ∩ (E △ E Z^{4^s})) / 2^s for every s of the grid from one
/// set of uniform samples of U. Results do not depend on the worker count.
Profile mc_vertical_profile(const Indicator& e, const QuasiBall& u,
                            const std::vector<double>& grid, const McOptions& opts);

struct ScalingResidual {
  double lhs = 0;       // v(s_t A)(ρ)
  double rhs = 0;       // t^{2k+1} v(A)(ρ - log2 t)
  double residual = 0;  // |lhs - rhs| / max(|lhs|, 1)
  double stderr_ = 0;   // combined MC error, 0 for boxes
};

ScalingResidual scaling_identity_check(const BoxSpec& b, double t, double rho);
/// Monte Carlo form on U and s_t(U) with paired samples.
ScalingResidual scaling_identity_check(const Indicator& e, const QuasiBall& u, double t,
                                       double rho, const McOptions& opts);

/// "s,value,stderr"
std::string profile_csv(const Profile& p);

}  // namespace heis::continuum
