#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace heis::sparsecut {

/// Capacities c and demands d on n points. Only the off-diagonal entries are used.
struct Instance {
  int n = 0;
  Eigen::MatrixXd c;
  Eigen::MatrixXd d;
};

void validate_instance(const Instance& inst);
Instance make_instance(Eigen::MatrixXd c, Eigen::MatrixXd d);

/// Off-diagonal entries drawn independently from (0, 1].
Instance random_instance(int n, uint64_t seed);

Instance permuted(const Instance& inst, const std::vector<int>& perm);

/// Σ_{i<j} w_ij q_ij
double pair_sum(const Eigen::MatrixXd& w, const Eigen::MatrixXd& q);

/// The cut semimetric of A = {i : bit i of mask set}.
Eigen::MatrixXd cut_metric(int n, uint64_t mask);

/// Capacity and demand crossing the cut, each pair counted once.
double cut_capacity(const Instance& inst, uint64_t mask);
double cut_demand(const Instance& inst, uint64_t mask);

/// "n", then the c upper triangle row by row, then the d upper triangle.
std::string instance_to_text(const Instance& inst);
Instance parse_instance(const std::string& text);

}  // namespace heis::sparsecut
