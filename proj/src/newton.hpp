// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "config.hpp"
#include "kkt.hpp"

namespace hopf {

struct NewtonResult {
  bool ok = false;
  int iterations = 0;
  double resid_inf = 0;  // residual norm at the floor perturbation
  std::string error;     // "iteration_cap" | "line_search" | "singular" | "assembly"
};

/// Damped Newton on the perturbed KKT conditions of one sub-problem.
/// Maintains mu > 0, s > 0 via the fraction-to-boundary rule (the
/// diode-limiting analog), backtracks on the residual infinity norm, and
/// drives sp.eps down monotonically with the duality measure. Convergence is
/// checked against the residual assembled at the floor perturbation, so a
/// point that starts within tolerance returns after zero iterations.
NewtonResult newton_solve(SubProblem& sp, Eigen::VectorXd& theta,
                          const NewtonOptions& opts);

/// Flat start: v = 1+0j, P = Q = 0, adjustments and slack injections zero,
/// lambda = 0, mu = 1, s = max(-h(x0), 1e-2).
Eigen::VectorXd flat_start(const SubProblem& sp);

}  // namespace hopf
