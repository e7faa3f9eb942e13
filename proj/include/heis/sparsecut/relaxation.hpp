#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "heis/embed/simplex.hpp"
#include "heis/sparsecut/instance.hpp"

namespace heis::sparsecut {

enum class RelaxationKind { opt, lp, sdp };

const char* kind_name(RelaxationKind k);

struct Residuals {
  double min_eigenvalue = 0;          // of −½ J q J; 0 when not applicable
  double max_triangle_violation = 0;
  double normalization_error = 0;     // |Σ d q − 1|
  double primal = 0;                  // solver residuals before rounding (SDP only)
  double dual = 0;
};

struct RelaxationResult {
  RelaxationKind kind = RelaxationKind::opt;
  double value = 0;
  uint64_t mask = 0;      // OPT certificate
  Eigen::MatrixXd metric; // normalized optimal semimetric (all kinds)
  Eigen::MatrixXd gram;   // SDP certificate, q_ij = G_ii + G_jj − 2 G_ij
  Residuals residuals;
  int64_t iterations = 0;
  bool converged = true;
};

/// Exhaustive minimum over cuts A not containing point n−1.
RelaxationResult opt_bruteforce(const Instance& inst);

struct LpOptions {
  embed::SimplexOptions simplex;
  /// Instances with more triangle facets than this start with none and add
  /// violated facets in rounds.
  int64_t eager_facets = 20000;
  int max_rounds = 200;
};

/// min Σ c q over semimetrics q with Σ d q = 1.
RelaxationResult lp_relaxation(const Instance& inst, const LpOptions& opts = {});

struct SdpOptions {
  double tol = 1e-6;             // primal and dual residuals
  double stationarity = 1e-4;    // relative objective change over `window` iterations
  int64_t window = 500;
  int64_t iter_cap = 200000;
  double rho = 0.1;
  double sigma = 1e-6;
  double relaxation = 1.6;
};

/// min Σ c q over negative-type semimetrics (−½ J q J PSD and all triangle
/// inequalities) with Σ d q = 1. Operator splitting with conic projections;
/// the final iterate is rounded to an exactly feasible point, so `value` is
/// always attained by the returned certificate.
RelaxationResult gl_sdp(const Instance& inst, const SdpOptions& opts = {});

/// Recomputes the value from the certificate alone (mask, metric or Gram).
double replay_value(const Instance& inst, const RelaxationResult& r);

struct GapEstimate {
  double gap = 0;    // OPT / SDP
  double lower = 0;  // OPT / (feasible SDP value)
  double upper = 0;  // OPT / LP, since LP <= SDP
  bool converged = true;
};

GapEstimate integrality_gap(const Instance& inst, const SdpOptions& opts = {});

/// {kind, value, certificate, residuals, iterations, converged}
std::string result_json(const RelaxationResult& r);

}  // namespace heis::sparsecut
