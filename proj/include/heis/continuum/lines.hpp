#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heis/continuum/sets.hpp"

namespace heis::continuum {

struct HorizontalLine {
  ContinuousPoint basepoint;
  std::vector<double> direction;  // unit vector in R^{2k}
};

/// γ(τ) = basepoint · (τ v), v the horizontal direction.
ContinuousPoint line_point(const HorizontalLine& l, double tau);

/// Line i has a uniform basepoint of the ball and a uniform unit direction,
/// both drawn from stream i of the seed.
std::vector<HorizontalLine> sample_horizontal_lines(const QuasiBall& b, size_t n, uint64_t seed);

struct Interval {
  double lo = 0, hi = 0;
  double length() const { return hi - lo; }
};

/// Maximal runs of in-E samples of γ on the grid tau0, tau0 + h, ... <= tau1.
/// A run from sample a to sample b is reported as [τ_a, τ_b].
std::vector<Interval> line_intervals(const Indicator& e, const HorizontalLine& l, double tau0,
                                     double tau1, double h);

/// j with 2^{j-1} <= length < 2^j.
int dyadic_class(double length);

struct NmOptions {
  size_t n_lines = 10000;
  double resolution = 0;  // 0 selects radius / 512
  uint64_t seed = 1;
  int workers = 1;
};

struct HistogramBin {
  int j = 0;
  double count = 0;      // intervals, borderline ones split half-half
  double endpoints = 0;  // endpoints strictly inside the clip
};

struct NmReport {
  QuasiBall ball;
  size_t n_lines = 0;
  double resolution = 0;
  double nm = 0;
  double stderr_ = 0;
  std::vector<HistogramBin> histogram;
  double interval_count = 0;
};

/// Per-line best-interval L1 error on L ∩ U, computed by a maximum-subarray
/// scan of the signed trace (+1 in E, -1 outside E, 0 outside U).
double line_nonmonotonicity(const Indicator& e, const QuasiBall& u, const HorizontalLine& l, double h);

/// Mean per-line error divided by the radius: the line space carries total
/// mass r^{2k+1} and the functional divides by r^{2k+2}. Values are estimates
/// under the uniform basepoint x uniform direction density.
NmReport nonmonotonicity(const Indicator& e, const QuasiBall& u, const NmOptions& opts);

/// Dyadic length classes j (2^{j-1} <= length < 2^j) of the maximal intervals
/// of E along the traces, clipped to the hull of L ∩ U (endpoints on the
/// hull boundary are not counted). Same sampling as nonmonotonicity.
std::vector<HistogramBin> interval_histogram(const Indicator& e, const QuasiBall& u,
                                             const NmOptions& opts);

/// {ball, n_lines, resolution, nm, stderr, histogram:[{j,count}]}
std::string nm_report_json(const NmReport& r);

}  // namespace heis::continuum
