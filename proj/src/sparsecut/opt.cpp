#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <json.hpp>
#include <limits>

#include "heis/core/error.hpp"
#include "heis/sparsecut/relaxation.hpp"

namespace heis::sparsecut {

const char* kind_name(RelaxationKind k) {
  switch (k) {
    case RelaxationKind::opt: return "OPT";
    case RelaxationKind::lp: return "LP";
    case RelaxationKind::sdp: return "SDP";
  }
  return "?";
}

RelaxationResult opt_bruteforce(const Instance& inst) {
  validate_instance(inst);
  const int n = inst.n;
  if (n > 24) fail(ErrorKind::validation, "exhaustive OPT supports at most 24 points");
  const uint64_t count = uint64_t{1} << (n - 1);
  // Gray-code walk: flipping point v changes the crossing sums by the
  // weight from v to its own side minus the weight to the other side.
  std::vector<char> in(n, 0);
  double cap = 0, dem = 0;
  const double dem_floor = 1e-12 * inst.d.cwiseAbs().sum();
  double best = std::numeric_limits<double>::infinity();
  uint64_t best_mask = 0;
  uint64_t gray = 0;
  for (uint64_t step = 1; step < count; ++step) {
    const int v = std::countr_zero(step);
    double same = 0, other = 0, same_d = 0, other_d = 0;
    for (int j = 0; j < n; ++j) {
      if (j == v) continue;
      if (in[j] == in[v]) {
        same += inst.c(v, j);
        same_d += inst.d(v, j);
      } else {
        other += inst.c(v, j);
        other_d += inst.d(v, j);
      }
    }
    cap += same - other;
    dem += same_d - other_d;
    in[v] ^= 1;
    gray ^= uint64_t{1} << v;
    if (dem > dem_floor && cap / dem < best) {
      best = cap / dem;
      best_mask = gray;
    }
  }
  if (best_mask == 0) fail(ErrorKind::validation, "every cut has zero demand across it; OPT is undefined");
  RelaxationResult r;
  r.kind = RelaxationKind::opt;
  r.mask = best_mask;
  const double d_cut = cut_demand(inst, best_mask);
  r.value = cut_capacity(inst, best_mask) / d_cut;
  r.metric = cut_metric(n, best_mask) / d_cut;
  r.iterations = static_cast<int64_t>(count - 1);
  return r;
}

double replay_value(const Instance& inst, const RelaxationResult& r) {
  switch (r.kind) {
    case RelaxationKind::opt:
      return cut_capacity(inst, r.mask) / cut_demand(inst, r.mask);
    case RelaxationKind::lp:
      return pair_sum(inst.c, r.metric) / pair_sum(inst.d, r.metric);
    case RelaxationKind::sdp: {
      const auto n = r.gram.rows();
      Eigen::MatrixXd q(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) q(i, j) = r.gram(i, i) + r.gram(j, j) - 2 * r.gram(i, j);
      return pair_sum(inst.c, q) / pair_sum(inst.d, q);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

nlohmann::ordered_json matrix_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string result_json(const RelaxationResult& r) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(r.kind);
  j["value"] = r.value;
  if (r.kind == RelaxationKind::opt) {
    j["certificate"] = {{"mask", r.mask}};
  } else if (r.kind == RelaxationKind::lp) {
    j["certificate"] = {{"metric", matrix_json(r.metric)}};
  } else {
    j["certificate"] = {{"gram", matrix_json(r.gram)}};
  }
  j["residuals"] = {{"min_eigenvalue", r.residuals.min_eigenvalue},
                    {"max_triangle_violation", r.residuals.max_triangle_violation},
                    {"normalization_error", r.residuals.normalization_error},
                    {"primal", r.residuals.primal},
                    {"dual", r.residuals.dual}};
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j.dump(2);
}

}  // namespace heis::sparsecut
