#include "heis/continuum/lines.hpp"

#include <cmath>
#include <map>
#include <json.hpp>

#include "heis/core/error.hpp"
#include "heis/core/parallel.hpp"

namespace heis::continuum {

namespace {

// γ(τ) = p + τ (v, ½ω(p, v)) since the product with a horizontal point is affine in τ.
struct Trace {
  ContinuousPoint p, d;
  Trace(const HorizontalLine& l) : p(l.basepoint), d(l.basepoint.rank()) {
    const int k = p.rank();
    double w = 0;
    for (int i = 0; i < k; ++i) {
      d.coord(i) = l.direction[i];
      d.coord(k + i) = l.direction[k + i];
      w += p.x(i) * l.direction[k + i] - p.y(i) * l.direction[i];
    }
    d.coord(2 * k) = 0.5 * w;
  }
  ContinuousPoint at(double tau) const {
    ContinuousPoint q(p.rank());
    for (int j = 0; j < coord_count(p.rank()); ++j) q.coord(j) = p.coord(j) + tau * d.coord(j);
    return q;
  }
};

HorizontalLine draw_line(const QuasiBall& b, uint64_t seed, uint64_t i) {
  Rng rng = Rng::stream(seed, i);
  HorizontalLine l;
  l.basepoint = sample_ball(b, rng);
  const int d = 2 * b.center.rank();
  l.direction.resize(d);
  double n2 = 0;
  do {
    n2 = 0;
    for (auto& v : l.direction) {
      v = rng.normal();
      n2 += v * v;
    }
  } while (n2 < 1e-24);
  const double inv = 1 / std::sqrt(n2);
  for (auto& v : l.direction) v *= inv;
  return l;
}

struct LineResult {
  double nm = 0;
  std::vector<std::pair<int, double>> counts;     // class, weight
  std::vector<std::pair<int, double>> endpoints;  // class, endpoint count
};

LineResult scan_line(const Indicator& e, const QuasiBall& u, const HorizontalLine& l, double h) {
  const Trace tr(l);
  const double tau0 = -2 * u.radius;
  const auto m = static_cast<size_t>(std::floor(4 * u.radius / h)) + 1;
  std::vector<char> in_u(m), in_e(m, 0);
  // Intervals are taken inside the hull of L ∩ U; quasi-ball chords need not
  // be connected.
  size_t first = m, last = 0;
  for (size_t i = 0; i < m; ++i) {
    in_u[i] = in_ball(u, tr.at(tau0 + static_cast<double>(i) * h));
    if (in_u[i]) {
      first = std::min(first, i);
      last = i;
    }
  }
  for (size_t i = first; i <= last && i < m; ++i) in_e[i] = e(tr.at(tau0 + static_cast<double>(i) * h));
  LineResult out;
  // best interval: maximize Σ_I (+1 in E, -1 in U \ E); empty interval allowed
  double best = 0, cur = 0;
  size_t ne = 0;
  for (size_t i = 0; i < m; ++i) {
    if (!in_u[i]) continue;
    ne += in_e[i];
    cur = std::max(0.0, cur + (in_e[i] ? 1.0 : -1.0));
    best = std::max(best, cur);
  }
  out.nm = (static_cast<double>(ne) - best) * h;

  for (size_t i = 0; i < m;) {
    if (!in_e[i]) {
      ++i;
      continue;
    }
    size_t a = i;
    while (i < m && in_e[i]) ++i;
    size_t b = i - 1;
    const double len = static_cast<double>(b - a + 1) * h;
    int jl = len > h ? dyadic_class(len - h) : dyadic_class(len);
    int jh = dyadic_class(len + h);
    int ends = (a > first) + (b < last);
    if (jl == jh) {
      out.counts.push_back({jl, 1.0});
      out.endpoints.push_back({jl, ends});
    } else {
      out.counts.push_back({jl, 0.5});
      out.counts.push_back({jh, 0.5});
      out.endpoints.push_back({jl, 0.5 * ends});
      out.endpoints.push_back({jh, 0.5 * ends});
    }
  }
  return out;
}

NmReport run_lines(const Indicator& e, const QuasiBall& u, const NmOptions& opts) {
  if (opts.n_lines < 100) fail(ErrorKind::validation, "n_lines must be at least 100");
  if (!(u.radius > 0) || !std::isfinite(u.radius)) fail(ErrorKind::validation, "degenerate ball");
  const double h = opts.resolution > 0 ? opts.resolution : u.radius / 512;
  if (4 * u.radius / h > 1e8) fail(ErrorKind::resource, "resolution too fine");
  const size_t n = opts.n_lines;
  std::vector<double> nm(n);
  constexpr size_t kBlock = 64;
  const size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::map<int, std::pair<double, double>>> hist(blocks);
  parallel_tasks(blocks, opts.workers, [&](size_t b) {
    for (size_t i = b * kBlock; i < std::min(n, (b + 1) * kBlock); ++i) {
      LineResult r = scan_line(e, u, draw_line(u, opts.seed, i), h);
      nm[i] = r.nm;
      for (auto [j, c] : r.counts) hist[b][j].first += c;
      for (auto [j, c] : r.endpoints) hist[b][j].second += c;
    }
  });
  NmReport rep;
  rep.ball = u;
  rep.n_lines = n;
  rep.resolution = h;
  const double nd = static_cast<double>(n);
  const double mean = pairwise_sum(nm) / nd;
  std::vector<double> dev(n);
  for (size_t i = 0; i < n; ++i) dev[i] = (nm[i] - mean) * (nm[i] - mean);
  const double var = pairwise_sum(dev) / (nd - 1);
  rep.nm = mean / u.radius;
  rep.stderr_ = std::sqrt(var / nd) / u.radius;
  std::map<int, std::pair<double, double>> total;
  for (const auto& hb : hist)
    for (const auto& [j, c] : hb) {
      total[j].first += c.first;
      total[j].second += c.second;
    }
  for (const auto& [j, c] : total) {
    rep.histogram.push_back({j, c.first, c.second});
    rep.interval_count += c.first;
  }
  return rep;
}

}  // namespace

int dyadic_class(double len) {
  if (!(len > 0)) fail(ErrorKind::validation, "length must be positive");
  return static_cast<int>(std::floor(std::log2(len))) + 1;
}

ContinuousPoint line_point(const HorizontalLine& l, double tau) {
  const int k = l.basepoint.rank();
  ContinuousPoint v(k);
  for (int j = 0; j < 2 * k; ++j) v.coord(j) = tau * l.direction[j];
  return mul(l.basepoint, v);
}

std::vector<HorizontalLine> sample_horizontal_lines(const QuasiBall& b, size_t n, uint64_t seed) {
  if (n < 1) fail(ErrorKind::validation, "n must be at least 1");
  std::vector<HorizontalLine> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(draw_line(b, seed, i));
  return out;
}

std::vector<Interval> line_intervals(const Indicator& e, const HorizontalLine& l, double tau0,
                                     double tau1, double h) {
  if (!(h > 0)) fail(ErrorKind::validation, "resolution must be positive");
  if (!(tau1 > tau0) || !std::isfinite(tau0) || !std::isfinite(tau1))
    fail(ErrorKind::validation, "degenerate clip");
  const Trace tr(l);
  const auto m = static_cast<size_t>(std::floor((tau1 - tau0) / h)) + 1;
  std::vector<Interval> out;
  bool open = false;
  for (size_t i = 0; i < m; ++i) {
    const double tau = tau0 + static_cast<double>(i) * h;
    const bool in = e(tr.at(tau));
    if (in && !open) out.push_back({tau, tau});
    if (in) out.back().hi = tau;
    open = in;
  }
  return out;
}

double line_nonmonotonicity(const Indicator& e, const QuasiBall& u, const HorizontalLine& l, double h) {
  if (!(h > 0)) fail(ErrorKind::validation, "resolution must be positive");
  return scan_line(e, u, l, h).nm;
}

NmReport nonmonotonicity(const Indicator& e, const QuasiBall& u, const NmOptions& opts) {
  return run_lines(e, u, opts);
}

std::vector<HistogramBin> interval_histogram(const Indicator& e, const QuasiBall& u,
                                             const NmOptions& opts) {
  return run_lines(e, u, opts).histogram;
}

std::string nm_report_json(const NmReport& r) {
  nlohmann::ordered_json j;
  std::vector<double> center(r.ball.center.coords().begin(), r.ball.center.coords().end());
  j["ball"] = {{"center", center}, {"radius", r.ball.radius}};
  j["n_lines"] = r.n_lines;
  j["resolution"] = r.resolution;
  j["nm"] = r.nm;
  j["stderr"] = r.stderr_;
  auto& hist = j["histogram"] = nlohmann::ordered_json::array();
  for (const auto& b : r.histogram) hist.push_back({{"j", b.j}, {"count", b.count}, {"endpoints", b.endpoints}});
  return j.dump(2) + "\n";
}

}  // namespace heis::continuum
