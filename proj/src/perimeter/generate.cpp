#include "heis/perimeter/generate.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <deque>

#include "heis/cayley/ball.hpp"
#include "heis/core/error.hpp"
#include "heis/core/rng.hpp"

namespace heis::perimeter {

std::string SetSpec::text() const {
  switch (kind) {
    case Kind::box: return fmt::format("box({},{},{})", a, b, h);
    case Kind::ball: return fmt::format("ball({})", radius);
    case Kind::column: return fmt::format("column({})", h);
    case Kind::random_blob: return fmt::format("random_blob({},{})", size, seed);
  }
  return {};
}

namespace {

std::vector<int64_t> parse_args(std::string_view text, std::string_view body) {
  std::vector<int64_t> out;
  size_t start = 0;
  while (start <= body.size()) {
    size_t end = body.find(',', start);
    if (end == std::string_view::npos) end = body.size();
    std::string_view tok = body.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
      fail(ErrorKind::validation, "invalid set spec: '" + std::string(text) + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

}  // namespace

SetSpec parse_set_spec(std::string_view text) {
  size_t open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    fail(ErrorKind::validation, "invalid set spec: '" + std::string(text) + "'");
  std::string_view name = text.substr(0, open);
  auto args = parse_args(text, text.substr(open + 1, text.size() - open - 2));
  SetSpec s;
  auto need = [&](size_t n) {
    if (args.size() != n)
      fail(ErrorKind::validation, "wrong argument count in set spec: '" + std::string(text) + "'");
  };
  if (name == "box") {
    need(3);
    s.kind = SetSpec::Kind::box;
    s.a = args[0];
    s.b = args[1];
    s.h = args[2];
    if (s.a < 1 || s.b < 1 || s.h < 1) fail(ErrorKind::validation, "box sides must be positive");
  } else if (name == "ball") {
    need(1);
    s.kind = SetSpec::Kind::ball;
    if (args[0] < 0 || args[0] > 64) fail(ErrorKind::validation, "ball radius out of range");
    s.radius = static_cast<int>(args[0]);
  } else if (name == "column") {
    need(1);
    s.kind = SetSpec::Kind::column;
    s.h = args[0];
    if (s.h < 1) fail(ErrorKind::validation, "column height must be positive");
  } else if (name == "random_blob") {
    need(2);
    s.kind = SetSpec::Kind::random_blob;
    if (args[0] < 1 || args[1] < 0) fail(ErrorKind::validation, "invalid blob parameters");
    s.size = static_cast<uint64_t>(args[0]);
    s.seed = static_cast<uint64_t>(args[1]);
  } else {
    fail(ErrorKind::validation, "unknown set kind: '" + std::string(name) + "'");
  }
  return s;
}

namespace {

FiniteSet make_box(int k, int64_t a, int64_t b, int64_t h) {
  double total = std::pow(double(a), k) * std::pow(double(b), k) * double(h);
  if (total > 5e7) fail(ErrorKind::resource, "box too large");
  std::vector<DiscreteElement> pts;
  std::vector<int64_t> c(coord_count(k), 0);
  // odometer over x in [0,a)^k, y in [0,b)^k, w in [0,h)
  for (;;) {
    pts.push_back(DiscreteElement::from_coords(k, c));
    int j = coord_count(k) - 1;
    for (; j >= 0; --j) {
      int64_t lim = j < k ? a : (j < 2 * k ? b : h);
      if (++c[j] < lim) break;
      c[j] = 0;
    }
    if (j < 0) break;
  }
  return FiniteSet(k, pts);
}

FiniteSet make_blob(int k, uint64_t size, uint64_t seed) {
  if (size > 10'000'000) fail(ErrorKind::resource, "blob too large");
  Rng rng(seed);
  ElementTable table(k, size);
  const int stride = coord_count(k);
  std::vector<int32_t> origin(stride, 0);
  table.insert(origin.data());
  std::deque<size_t> queue{0};
  int32_t nb[kMaxCoords], cur[kMaxCoords];
  while (table.size() < size) {
    if (queue.empty())
      for (size_t i = 0; i < table.size(); ++i) queue.push_back(i);
    size_t idx = queue.front();
    queue.pop_front();
    std::copy(table.key(idx), table.key(idx) + stride, cur);
    for (int j = 0; j < 4 * k + 2 && table.size() < size; ++j) {
      bool ok = j < 4 * k ? generator_step(k, cur, j, nb)
                          : central_step(k, cur, j == 4 * k ? 1 : -1, nb);
      if (!ok) fail(ErrorKind::overflow, "blob left the 32-bit key range");
      if (table.find(nb) >= 0) continue;
      if (rng.uniform() < kBlobAcceptance) queue.push_back(table.insert(nb).first);
    }
  }
  std::vector<DiscreteElement> pts;
  pts.reserve(table.size());
  for (size_t i = 0; i < table.size(); ++i) pts.push_back(table.element(i));
  return FiniteSet(k, pts);
}

}  // namespace

FiniteSet generate_set(int k, const SetSpec& spec) {
  switch (spec.kind) {
    case SetSpec::Kind::box: return make_box(k, spec.a, spec.b, spec.h);
    case SetSpec::Kind::ball: {
      auto ball = cayley::build_ball(k, spec.radius);
      auto pts = ball.members();
      return FiniteSet(k, pts);
    }
    case SetSpec::Kind::column: {
      if (spec.h > 50'000'000) fail(ErrorKind::resource, "column too tall");
      std::vector<DiscreteElement> pts;
      for (int64_t j = 0; j < spec.h; ++j) pts.push_back(DiscreteElement::central(k, j));
      return FiniteSet(k, pts);
    }
    case SetSpec::Kind::random_blob: return make_blob(k, spec.size, spec.seed);
  }
  fail(ErrorKind::validation, "invalid set spec");
}

FiniteSet sublevel_set(const LatticeFunction& f, double u) {
  std::vector<DiscreteElement> pts;
  for (size_t i = 0; i < f.support().size(); ++i)
    if (f.value(i)[0] < u) pts.push_back(f.support().members()[i]);
  return FiniteSet(f.rank(), pts);
}

std::vector<SetSpec> default_corpus(uint64_t seed) {
  std::vector<SetSpec> out;
  out.push_back(parse_set_spec("column(1)"));
  for (int64_t H : {1, 10, 100, 1000}) {
    SetSpec s;
    s.kind = SetSpec::Kind::column;
    s.h = H;
    out.push_back(s);
  }
  for (int r = 1; r <= 3; ++r) {
    SetSpec s;
    s.kind = SetSpec::Kind::ball;
    s.radius = r;
    out.push_back(s);
  }
  int boxes = 0;
  for (int64_t a = 1; a <= 4 && boxes < 92; ++a)
    for (int64_t b = 1; b <= 4 && boxes < 92; ++b)
      for (int64_t h : {1, 2, 4, 8, 16, 32}) {
        if (boxes == 92) break;
        SetSpec s;
        s.kind = SetSpec::Kind::box;
        s.a = a;
        s.b = b;
        s.h = h;
        out.push_back(s);
        ++boxes;
      }
  for (uint64_t i = 0; i < 100; ++i) {
    SetSpec s;
    s.kind = SetSpec::Kind::random_blob;
    s.size = 50 + i * 4950 / 99;
    s.seed = Rng::stream(seed, i).next() >> 1;
    out.push_back(s);
  }
  return out;
}

}  // namespace heis::perimeter
