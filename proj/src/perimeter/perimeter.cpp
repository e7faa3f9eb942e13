#include "heis/perimeter/perimeter.hpp"

#include <fmt/format.h>

#include <bit>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "heis/core/error.hpp"

namespace heis::perimeter {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0, c = 0;
  void add(double v) {
    double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

// overlap[t-1] += #{w in S : w + t in S} for t = 1..span.
void add_column_overlaps(const Column& col, std::vector<uint64_t>& overlap) {
  const auto& w = col.w;
  const int64_t span = col.span();
  if (span == 0) return;
  const double n = static_cast<double>(w.size());
  const double pair_cost = n * n / 2;
  const double words = static_cast<double>(span / 64 + 1);
  const double bitset_cost = static_cast<double>(span) * words;
  if (span > (int64_t{1} << 16) || pair_cost <= bitset_cost) {
    for (size_t i = 0; i < w.size(); ++i)
      for (size_t j = i + 1; j < w.size(); ++j) overlap[w[j] - w[i] - 1] += 1;
    return;
  }
  const size_t nw = static_cast<size_t>(span / 64 + 1);
  std::vector<uint64_t> bits(nw + 1, 0);
  for (int64_t v : w) {
    int64_t o = v - w.front();
    bits[o / 64] |= uint64_t{1} << (o % 64);
  }
  for (int64_t t = 1; t <= span; ++t) {
    const size_t ws = static_cast<size_t>(t / 64);
    const int bs = static_cast<int>(t % 64);
    uint64_t count = 0;
    for (size_t i = 0; i + ws < nw; ++i) {
      uint64_t shifted = bits[i + ws] >> bs;
      if (bs) shifted |= bits[i + ws + 1] << (64 - bs);
      count += static_cast<uint64_t>(std::popcount(bits[i] & shifted));
    }
    overlap[t - 1] += count;
  }
}

uint64_t column_overlap(const Column& col, int64_t t) {
  const auto& w = col.w;
  uint64_t count = 0;
  size_t j = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    while (j < w.size() && w[j] < w[i] + t) ++j;
    if (j < w.size() && w[j] == w[i] + t) ++count;
  }
  return count;
}

}  // namespace

ZetaTail inverse_square_tail(int64_t n) {
  if (n < 0) fail(ErrorKind::validation, "tail index must be nonnegative");
  CompensatedSum partial;
  for (int64_t t = n; t >= 1; --t) {
    double td = static_cast<double>(t);
    partial.add(1.0 / (td * td));
  }
  constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  ZetaTail out;
  out.value = zeta2 - partial.value();
  double check = boost::math::trigamma(static_cast<double>(n) + 1.0);
  out.error = std::fabs(out.value - check) + 4 * std::numeric_limits<double>::epsilon() * zeta2;
  return out;
}

uint64_t horizontal_perimeter(const FiniteSet& s) {
  const int k = s.rank();
  uint64_t count = 0;
  int32_t nb[kMaxCoords];
  for (size_t i = 0; i < s.size(); ++i) {
    for (int j = 0; j < 4 * k; ++j) {
      if (!generator_step(k, s.key(i), j, nb) || s.index_of(nb) < 0) ++count;
    }
  }
  return count;
}

uint64_t vertical_t_boundary(const FiniteSet& s, int64_t t) {
  if (t < 1) fail(ErrorKind::validation, "t must be at least 1");
  uint64_t count = 0;
  for (const auto& col : s.columns()) count += 2 * (col.w.size() - column_overlap(col, t));
  return count;
}

uint64_t membership_difference_count(const FiniteSet& s, int64_t t) {
  if (t < 1) fail(ErrorKind::validation, "t must be at least 1");
  const int k = s.rank();
  uint64_t count = 0;
  int32_t nb[kMaxCoords];
  for (size_t i = 0; i < s.size(); ++i) {
    // h in Ω with h c^t outside, and h = g c^{-t} outside Ω with g in Ω
    if (!central_step(k, s.key(i), t, nb) || s.index_of(nb) < 0) ++count;
    if (!central_step(k, s.key(i), -t, nb) || s.index_of(nb) < 0) ++count;
  }
  return count;
}

VerticalSpectrum vertical_spectrum(const FiniteSet& s) {
  VerticalSpectrum spec;
  spec.set_size = s.size();
  spec.t0 = s.max_column_span();
  std::vector<uint64_t> overlap(static_cast<size_t>(spec.t0), 0);
  for (const auto& col : s.columns()) add_column_overlaps(col, overlap);
  spec.head.resize(overlap.size());
  for (size_t t = 0; t < overlap.size(); ++t) spec.head[t] = 2 * (spec.set_size - overlap[t]);
  ZetaTail z = inverse_square_tail(spec.t0);
  const double two_n = 2.0 * static_cast<double>(spec.set_size);
  spec.tail = two_n * two_n * z.value;
  spec.tail_error = two_n * two_n * z.error;
  return spec;
}

PerimeterValue spectrum_l2(std::span<const double> head, double far, int64_t t0) {
  if (static_cast<int64_t>(head.size()) != t0)
    fail(ErrorKind::validation, "spectrum head length must equal t0");
  CompensatedSum sum;
  for (size_t i = head.size(); i-- > 0;) {
    double h = head[i] / static_cast<double>(i + 1);
    sum.add(h * h);
  }
  ZetaTail z = inverse_square_tail(t0);
  sum.add(far * far * z.value);
  PerimeterValue out;
  double total = sum.value();
  out.value = std::sqrt(total);
  if (out.value > 0) {
    double err = far * far * z.error + 8 * std::numeric_limits<double>::epsilon() * total;
    out.error = err / (2 * out.value);
  }
  return out;
}

PerimeterValue vertical_perimeter(const VerticalSpectrum& spec) {
  std::vector<double> head(spec.head.begin(), spec.head.end());
  return spectrum_l2(head, 2.0 * static_cast<double>(spec.set_size), spec.t0);
}

PerimeterValue vertical_perimeter(const FiniteSet& s) {
  return vertical_perimeter(vertical_spectrum(s));
}

double isoperimetric_ratio(const FiniteSet& s) {
  if (s.empty()) fail(ErrorKind::validation, "isoperimetric ratio of the empty set is undefined");
  return vertical_perimeter(s).value / static_cast<double>(horizontal_perimeter(s));
}

std::string spectrum_csv(const VerticalSpectrum& spec) {
  std::string out = "t,count\n";
  for (size_t i = 0; i < spec.head.size(); ++i) out += fmt::format("{},{}\n", i + 1, spec.head[i]);
  out += fmt::format("tail,{}\n", spec.tail);
  return out;
}

double lq_spectrum_norm(const VerticalSpectrum& spec, double q) {
  if (!(q > 2)) fail(ErrorKind::validation, "q must exceed 2");
  const double e = 1.0 + q / 2.0;
  CompensatedSum sum, partial;
  for (size_t i = spec.head.size(); i-- > 0;) {
    double t = static_cast<double>(i + 1);
    sum.add(std::pow(static_cast<double>(spec.head[i]), q) / std::pow(t, e));
    partial.add(std::pow(t, -e));
  }
  double tail_zeta = boost::math::zeta(e) - partial.value();
  sum.add(std::pow(2.0 * static_cast<double>(spec.set_size), q) * tail_zeta);
  return std::pow(sum.value(), 1.0 / q);
}

}  // namespace heis::perimeter
