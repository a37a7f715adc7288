// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "util.hpp"

namespace hopf {

// Grid case records. All electrical quantities are stored in per-unit on
// base_mva; angles in radians. See docs/case-schema.md for the native JSON
// schema and docs/raw-subset.md for the PSS/E RAW v33 subset mapping.

struct BusRecord {
  int id = 0;
  double vmin = 0.9;
  double vmax = 1.1;
};

struct GenRecord {
  std::string id;
  int bus = 0;
  double pmin = 0, pmax = 0;  // p.u.
  double qmin = 0, qmax = 0;  // p.u.
  // Cost of real-power output in MW terms: c0 + c1*P_MW + c2*P_MW^2 [$/h].
  double cost_c0 = 0, cost_c1 = 0, cost_c2 = 0;
};

struct LoadRecord {
  std::string id;
  int bus = 0;
  double p = 0, q = 0;  // constant-power draw, p.u.
};

struct BranchRecord {
  std::string id;
  int from = 0, to = 0;
  double r = 0, x = 0;  // series impedance, p.u.
  double b = 0;         // total charging susceptance, p.u.
  double i_max = 0;     // current magnitude limit, p.u.; 0 = unrated
};

struct FixedShuntRecord {
  std::string id;
  int bus = 0;
  double g = 0, b = 0;  // p.u. admittance to ground
};

struct XfmrRecord {
  std::string id;
  int from = 0, to = 0;  // tap side is `from`
  double r = 0, x = 0, b = 0;
  double i_max = 0;
  // Fixed settings, used when the corresponding value list is empty.
  double tap_fixed = 1.0;
  double phase_fixed = 0.0;  // rad
  // Discrete setting sets; strictly increasing when present.
  std::vector<double> tap_values;
  std::vector<double> phase_values;  // rad
  std::optional<double> tap_prior;
  std::optional<double> phase_prior;
};

struct ShuntBlock {
  int steps = 0;
  double b_step = 0;  // p.u. susceptance per step
};

struct SwitchedShuntRecord {
  std::string id;
  int bus = 0;
  std::vector<ShuntBlock> blocks;
  std::optional<double> prior;  // total susceptance, p.u.
};

struct CaseFile {
  int schema_version = 1;
  std::string name;
  double base_mva = 100.0;
  int reference_bus = 0;
  std::vector<BusRecord> buses;
  std::vector<GenRecord> generators;
  std::vector<LoadRecord> loads;
  std::vector<BranchRecord> branches;
  std::vector<FixedShuntRecord> fixed_shunts;
  std::vector<XfmrRecord> transformers;
  std::vector<SwitchedShuntRecord> shunts;
  // Importer warnings (skipped RAW groups, ignored fields); not serialized.
  std::vector<std::string> warnings;
};

/// Semantic validation: id uniqueness, dangling references, monotone setting
/// lists, ordered bounds. Throws ValidationError naming record and field.
void validate_case(const CaseFile& cf);

/// Achievable total susceptances of a switched shunt. With sequential=false
/// every combination of per-block switch states is enumerated; with
/// sequential=true blocks engage in listed order (partial last block).
/// The result is sorted, deduplicated and always contains 0.
std::vector<double> shunt_allowed_values(const SwitchedShuntRecord& rec,
                                         bool sequential = false);

/// Median element of a non-empty sorted list (lower middle for even sizes).
double median_setting(const std::vector<double>& values);

/// Rewrites priors as if no prior knowledge existed: taps and phase shifts
/// get their median available setting, switched shunts go to 0 p.u.
void strip_priors(CaseFile& cf);

/// Content digest of the case (over its canonical JSON form).
uint64_t case_digest(const CaseFile& cf);

}  // namespace hopf
