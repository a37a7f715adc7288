// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "newton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "linsolve.hpp"

namespace hopf {

namespace {

// Largest step fraction keeping mu + a*dmu >= (1-gamma)*mu and likewise for s.
// Kept as one isolated rule so the limiting heuristic can be swapped out.
double fraction_to_boundary(const Eigen::VectorXd& th, const Eigen::VectorXd& step,
                            const Layout& L, double gamma) {
  double a = 1.0;
  for (int k = 0; k < 2 * L.ni; ++k) {
    const int idx = L.off_mu + k;  // mu block then s block, contiguous
    if (step[idx] < 0) a = std::min(a, -gamma * th[idx] / step[idx]);
  }
  return a;
}

double duality_gap(const Eigen::VectorXd& th, const Layout& L) {
  if (L.ni == 0) return 0.0;
  double dot = 0;
  for (int k = 0; k < L.ni; ++k) dot += th[L.off_mu + k] * th[L.off_s + k];
  return dot / L.ni;
}

double safe_norm(const SubProblem& sp, const Eigen::VectorXd& th, double eps) {
  try {
    return assemble_residual(sp, th, eps).cwiseAbs().maxCoeff();
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

Eigen::VectorXd flat_start(const SubProblem& sp) {
  const Layout& L = sp.layout;
  Eigen::VectorXd th = Eigen::VectorXd::Zero(L.ntot);
  for (int b = 0; b < L.nb; ++b) th[L.vre(b)] = 1.0;
  for (int k = 0; k < L.ni; ++k) th[L.mu(k)] = 1.0;
  Eigen::VectorXd h = ineq_values(sp, th);
  for (int k = 0; k < L.ni; ++k) th[L.s(k)] = std::max(-h[k], 1e-2);
  return th;
}

NewtonResult newton_solve(SubProblem& sp, Eigen::VectorXd& theta,
                          const NewtonOptions& opts) {
  const Layout& L = sp.layout;
  NewtonResult res;

  // Initial perturbation follows the duality measure of the start point,
  // capped and floored; monotone non-increasing afterwards.
  sp.eps = std::clamp(opts.sigma * duality_gap(theta, L), opts.eps_min, opts.eps_cap);

  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= opts.max_iter; ++it) {
    KktSystem kkt;
    try {
      kkt = assemble_kkt(sp, theta);
    } catch (const AssemblyError& e) {
      res.error = std::string("assembly: ") + e.what();
      res.resid_inf = best;
      return res;
    }

    const double floor_norm = safe_norm(sp, theta, opts.eps_min);
    best = std::min(best, floor_norm);
    if (opts.trace)
      std::fprintf(stderr, "[newton] stage=%d nu=%.6f it=%d resid=%.3e eps=%.3e\n",
                   sp.stage, sp.nu, it, floor_norm, sp.eps);
    if (floor_norm <= opts.tol) {
      res.ok = true;
      res.iterations = it;
      res.resid_inf = floor_norm;
      return res;
    }
    if (it == opts.max_iter) break;

    auto step = solve_kkt_newton(kkt.J, -kkt.F, L, opts.reg_delta);
    if (!step) {
      res.error = "singular";
      res.resid_inf = best;
      res.iterations = it;
      return res;
    }

    double alpha = fraction_to_boundary(theta, *step, L, opts.gamma);
    const double merit0 = kkt.norm_inf;
    bool accepted = false;
    for (int ls = 0; ls <= opts.max_backtracks; ++ls) {
      Eigen::VectorXd trial = theta + alpha * (*step);
      if (safe_norm(sp, trial, sp.eps) < merit0) {
        theta = std::move(trial);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      res.error = "line_search";
      res.resid_inf = best;
      res.iterations = it;
      return res;
    }

    // Superlinear tail: eps tracks min(sigma*gap, gap^1.5) down to the floor.
    const double gap = duality_gap(theta, L);
    const double target = std::min(opts.sigma * gap, std::pow(gap, 1.5));
    sp.eps = std::min(sp.eps, std::max(opts.eps_min, target));
  }

  res.error = "iteration_cap";
  res.iterations = opts.max_iter;
  res.resid_inf = best;
  return res;
}

}  // namespace hopf
