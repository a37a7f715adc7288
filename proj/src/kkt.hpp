// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <stdexcept>

#include "subproblem.hpp"

namespace hopf {

/// Assembled perturbed KKT system at one iterate.
struct KktSystem {
  Eigen::VectorXd F;
  Eigen::SparseMatrix<double> J;
  double norm_inf = 0;
};

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(int row, const std::string& msg)
      : std::runtime_error(msg + " (row " + std::to_string(row) + ")"), row_(row) {}
  int row() const { return row_; }

 private:
  int row_;
};

/// Residual and sparse Jacobian of the perturbed KKT conditions at theta.
/// Rows, in order: stationarity for every primal variable, equality
/// constraints (nodal current balance then angle pins), slack definitions
/// h(x) + s, perturbed complementarity -mu.*s + eps. Stage II subtracts
/// nu2*R row-wise. Throws AssemblyError on non-finite entries.
KktSystem assemble_kkt(const SubProblem& sp, const Eigen::VectorXd& theta);

/// Residual only; eps_override >= 0 replaces the sub-problem's perturbation
/// (used for convergence checks at the floor value).
Eigen::VectorXd assemble_residual(const SubProblem& sp, const Eigen::VectorXd& theta,
                                  double eps_override = -1.0);

/// Inequality constraint values h(x) (h <= 0 feasible) at theta.
Eigen::VectorXd ineq_values(const SubProblem& sp, const Eigen::VectorXd& theta);

/// Generation cost in internal units (dollars per hour divided by base MVA).
double objective_internal(const Network& net, const Layout& L, const Eigen::VectorXd& theta);

/// Generation cost in $/h.
double objective_dollars(const Network& net, const Layout& L, const Eigen::VectorXd& theta);

}  // namespace hopf
