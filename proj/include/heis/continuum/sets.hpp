#pragma once

#include <functional>
#include <string>
#include <vector>

#include "heis/core/continuous.hpp"
#include "heis/core/rng.hpp"

namespace heis::continuum {

/// Membership predicate in exponential coordinates.
using Indicator = std::function<bool(const ContinuousPoint&)>;

/// Box C_r = [-r,r]^{2k} x [-r^2, r^2] in exponential coordinates.
struct BoxSpec {
  int k = 2;
  double r = 1;
};

bool in_box(const BoxSpec& b, const ContinuousPoint& p);
Indicator box_indicator(const BoxSpec& b);

/// Quasi-norm ball {p : N(center^{-1} p) <= radius}, the declared stand-in
/// for the Carnot-Caratheodory ball.
struct QuasiBall {
  ContinuousPoint center;
  double radius = 1;
};

QuasiBall centered_ball(int k, double radius);
bool in_ball(const QuasiBall& b, const ContinuousPoint& p);
Indicator ball_indicator(const QuasiBall& b);

/// Haar (Lebesgue) volume 2^{2k} R^{2k+2} / (4 (2k+2)!).
double quasi_ball_volume(int k, double radius);

/// Uniform point of the ball: a unit-ball sample by rejection from
/// (l1 ball) x (z interval), mapped by scaling and left translation.
ContinuousPoint sample_ball(const QuasiBall& b, Rng& rng);

/// Named test sets:
///   everything, empty
///   halfspace        x_1 > 0
///   slab             |x_1| < 1.5
///   slab-complement  |x_1| > 0.5
///   two-slab         0.5 <= |x_1| <= 1.5
///   box              C_1
///   ball             quasi-norm ball of radius 1
Indicator preset(const std::string& name, int k);
std::vector<std::string> preset_names();

/// Indicator of s_t(E).
Indicator scaled_indicator(Indicator e, double t);
/// Indicator of the complement.
Indicator complement(Indicator e);

}  // namespace heis::continuum
