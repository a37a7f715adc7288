// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <vector>

#include "network.hpp"

namespace hopf {

/// One nu-fixed instance whose perturbed KKT system can be assembled.
///
/// Stage I embeds the homotopy factor into the network (shorting
/// conductances, load factor, relaxed generator boxes, deformed base
/// settings, nu-scaled penalties and slack injections). Stage II is the
/// nu1=0 system with the discrete settings fixed (adjustment variables and
/// their bound rows removed) and the rounding residual R subtracted, scaled
/// by nu2.
struct SubProblem {
  const Network* net = nullptr;
  int stage = 1;   // 1 or 2
  double nu = 0.0; // nu1 (stage I) or nu2 (stage II)
  Layout layout;

  // Embedding parameters (stage I; stage II uses the nu1=0 values).
  double load_factor = 1.0;
  double g_par = 0.0;       // nu1 * g_short on every branch
  double g_ref = 0.0;       // nu1 * g_short from every bus to the reference source
  double slack_coef = 0.0;  // nu1 coefficient of slack injections in KCL
  double k_adj_eff = 0.0;   // nu1 * k_adj (per-device range normalization applied later)
  double k_slack = 1e3;
  std::vector<double> d_hat;                    // per control: deformed base value
  std::vector<double> plo, phi, qlo, qhi;       // effective generator boxes

  // Stage II only.
  std::vector<double> fixed_dc;  // per control: fixed discrete setting
  Eigen::VectorXd residual_R;    // rounding residual, aligned with stage-2 rows

  // Complementarity perturbation; owned by the inner solver while iterating.
  double eps = 1e-2;

  /// Effective setting of control `i` at iterate `theta`.
  double control_value(int i, const Eigen::VectorXd& theta) const {
    const DiscreteControl& c = net->controls[i];
    if (stage == 2) return fixed_dc[i];
    double v = d_hat[i];
    if (c.var >= 0) v += theta[layout.dc(c.var)];
    return v;
  }
};

}  // namespace hopf
