// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

namespace hopf {

/// Inner Newton solver knobs.
struct NewtonOptions {
  double tol = 1e-6;        // KKT residual infinity-norm target
  double feas_tol = 1e-6;   // inequality violation allowance at acceptance
  int max_iter = 50;
  double sigma = 0.1;       // complementarity reduction factor
  double eps_min = 1e-8;    // complementarity perturbation floor
  double eps_cap = 1e-1;    // initial perturbation cap
  double gamma = 0.995;     // fraction-to-boundary (diode limiting)
  int max_backtracks = 12;
  double reg_delta = 1e-8;  // diagonal regularization on singular factorization
  bool trace = false;       // per-iteration structured log lines
};

/// One homotopy stage's path-stepping policy and embedding weights.
struct HomotopyOptions {
  double k_adj = 0.1;
  double k_slack = 1e3;
  double g_short = 100.0;
  bool short_branches = true;
  bool short_to_ref = true;
  double gen_margin = 1e-3;  // strict-interior margin for P=Q=0 at nu=1
  double nu_step_init = 0.1;
  double nu_step_min = 1e-4;
  double nu_growth = 1.5;
  double nu_shrink = 0.5;
  double final_tol = 1e-9;  // tighter tolerance for the nu=0 landing solve
  bool warm_start = false;
  double warm_kadj_factor = 1e3;
  NewtonOptions newton;
};

struct RoundingOptions {
  bool screen_flow_limits = false;  // extend the first-order screen to |I|^2 rows
};

struct OracleOptions {
  long max_combinations = 100000;
  double gap_tol = 1e-10;     // barrier duality-gap target (internal units)
  double newton_tol = 1e-10;  // inner KKT residual target
  int max_newton = 200;
  int threads = 1;
  std::string cache_dir;  // empty = caching off
};

/// Every paper-silent constant lives here and in the shipped hopf.toml;
/// values are overridable per key (config file, then CLI flags).
struct SolverConfig {
  HomotopyOptions stage1;
  HomotopyOptions stage2;  // nu-stepping shared by default with stage1
  RoundingOptions rounding;
  OracleOptions oracle;
  bool sequential_shunts = false;
  bool no_priors = false;
  std::string stage2_mode = "auto";  // auto | force | off
  int sweep_threads = 4;
  unsigned seed = 0;  // reserved; affects nothing numeric

  /// Sets one dotted key, e.g. set("stage1.kadj", "0.25").
  /// Throws std::invalid_argument for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  /// Loads `key = value` lines (# comments, blank lines allowed).
  void load_file(const std::string& path);
  void load_string(const std::string& text, const std::string& origin = "<config>");

  /// All keys with their current values, for reproducibility dumps.
  std::map<std::string, std::string> dump() const;
};

}  // namespace hopf
