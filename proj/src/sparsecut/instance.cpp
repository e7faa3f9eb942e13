#include "heis/sparsecut/instance.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>

#include "heis/core/error.hpp"
#include "heis/core/rng.hpp"

namespace heis::sparsecut {

namespace {

void check_weights(const Eigen::MatrixXd& w, int n, const char* what) {
  if (w.rows() != n || w.cols() != n) fail(ErrorKind::validation, fmt::format("{} matrix must be {}x{}", what, n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!std::isfinite(w(i, j)) || w(i, j) < 0)
        fail(ErrorKind::validation, fmt::format("{} entries must be finite and nonnegative", what));
      if (w(i, j) != w(j, i)) fail(ErrorKind::validation, fmt::format("{} matrix must be symmetric", what));
    }
}

}  // namespace

void validate_instance(const Instance& inst) {
  if (inst.n < 2) fail(ErrorKind::validation, "instance needs at least two points");
  check_weights(inst.c, inst.n, "capacity");
  check_weights(inst.d, inst.n, "demand");
  bool any = false;
  for (int i = 0; i < inst.n; ++i)
    for (int j = i + 1; j < inst.n; ++j) any = any || inst.d(i, j) > 0;
  if (!any) fail(ErrorKind::validation, "instance has no positive demand");
}

Instance make_instance(Eigen::MatrixXd c, Eigen::MatrixXd d) {
  Instance inst{static_cast<int>(c.rows()), std::move(c), std::move(d)};
  validate_instance(inst);
  inst.c.diagonal().setZero();
  inst.d.diagonal().setZero();
  return inst;
}

Instance random_instance(int n, uint64_t seed) {
  if (n < 2) fail(ErrorKind::validation, "instance needs at least two points");
  Rng rng(seed);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n), d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(i, j) = c(j, i) = 1.0 - rng.uniform();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = 1.0 - rng.uniform();
  return make_instance(std::move(c), std::move(d));
}

Instance permuted(const Instance& inst, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != inst.n) fail(ErrorKind::validation, "permutation size mismatch");
  std::vector<int> seen(inst.n, 0);
  for (int p : perm)
    if (p < 0 || p >= inst.n || seen[p]++) fail(ErrorKind::validation, "not a permutation");
  Instance out{inst.n, Eigen::MatrixXd(inst.n, inst.n), Eigen::MatrixXd(inst.n, inst.n)};
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j) {
      out.c(i, j) = inst.c(perm[i], perm[j]);
      out.d(i, j) = inst.d(perm[i], perm[j]);
    }
  return out;
}

double pair_sum(const Eigen::MatrixXd& w, const Eigen::MatrixXd& q) {
  double s = 0;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) s += w(i, j) * q(i, j);
  return s;
}

Eigen::MatrixXd cut_metric(int n, uint64_t mask) {
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = ((mask >> i) & 1u) != ((mask >> j) & 1u) ? 1.0 : 0.0;
  return q;
}

double cut_capacity(const Instance& inst, uint64_t mask) { return pair_sum(inst.c, cut_metric(inst.n, mask)); }

double cut_demand(const Instance& inst, uint64_t mask) { return pair_sum(inst.d, cut_metric(inst.n, mask)); }

std::string instance_to_text(const Instance& inst) {
  std::string out = fmt::format("{}\n", inst.n);
  for (const auto* w : {&inst.c, &inst.d})
    for (int i = 0; i + 1 < inst.n; ++i) {
      for (int j = i + 1; j < inst.n; ++j) out += (j > i + 1 ? " " : "") + fmt::format("{}", (*w)(i, j));
      out += '\n';
    }
  return out;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  long long n = 0;
  if (!(in >> n) || n < 2 || n > 4096) fail(ErrorKind::validation, "instance file: bad point count");
  Eigen::MatrixXd w[2] = {Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (auto& m : w)
    for (long long i = 0; i < n; ++i)
      for (long long j = i + 1; j < n; ++j) {
        double v;
        if (!(in >> v)) fail(ErrorKind::validation, "instance file: too few entries");
        m(i, j) = m(j, i) = v;
      }
  std::string extra;
  if (in >> extra) fail(ErrorKind::validation, "instance file: trailing data");
  return make_instance(std::move(w[0]), std::move(w[1]));
}

}  // namespace heis::sparsecut
