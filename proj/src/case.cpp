// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "case.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "case_json.hpp"

namespace hopf {

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ValidationError(where + ": " + what);
}

void check_setting_list(const std::vector<double>& vals, const std::string& where) {
  require(!vals.empty(), where, "setting list is empty");
  for (size_t i = 0; i < vals.size(); ++i) {
    require(std::isfinite(vals[i]), where, "setting value is not finite");
    if (i > 0)
      require(vals[i] > vals[i - 1], where,
              "setting list not strictly increasing at index " + std::to_string(i));
  }
}

}  // namespace

void validate_case(const CaseFile& cf) {
  require(cf.base_mva > 0, "base_mva", "must be positive");
  require(!cf.buses.empty(), "buses", "case has no buses");

  std::unordered_set<int> bus_ids;
  for (size_t i = 0; i < cf.buses.size(); ++i) {
    const auto& b = cf.buses[i];
    const std::string where = "buses[" + std::to_string(i) + "]";
    require(bus_ids.insert(b.id).second, where, "duplicate bus id " + std::to_string(b.id));
    require(b.vmin > 0, where + ".vmin", "must be positive");
    require(b.vmin < b.vmax, where, "vmin (" + fmt_full(b.vmin) + ") must be < vmax (" +
                                        fmt_full(b.vmax) + ")");
  }
  require(bus_ids.count(cf.reference_bus) > 0, "reference_bus",
          "bus " + std::to_string(cf.reference_bus) + " does not exist");

  auto check_bus_ref = [&](int bus, const std::string& where) {
    require(bus_ids.count(bus) > 0, where, "references missing bus " + std::to_string(bus));
  };

  std::unordered_set<std::string> ids;
  auto check_id = [&](const std::string& id, const std::string& where) {
    require(!id.empty(), where + ".id", "missing id");
    require(ids.insert(id).second, where, "duplicate device id '" + id + "'");
  };

  for (size_t i = 0; i < cf.generators.size(); ++i) {
    const auto& g = cf.generators[i];
    const std::string where = "generators[" + std::to_string(i) + "]";
    check_id(g.id, where);
    check_bus_ref(g.bus, where + ".bus");
    require(g.pmin <= g.pmax, where, "pmin > pmax");
    require(g.qmin <= g.qmax, where, "qmin > qmax");
  }
  for (size_t i = 0; i < cf.loads.size(); ++i) {
    const std::string where = "loads[" + std::to_string(i) + "]";
    check_id(cf.loads[i].id, where);
    check_bus_ref(cf.loads[i].bus, where + ".bus");
  }
  for (size_t i = 0; i < cf.fixed_shunts.size(); ++i) {
    const std::string where = "fixed_shunts[" + std::to_string(i) + "]";
    check_id(cf.fixed_shunts[i].id, where);
    check_bus_ref(cf.fixed_shunts[i].bus, where + ".bus");
  }
  for (size_t i = 0; i < cf.branches.size(); ++i) {
    const auto& br = cf.branches[i];
    const std::string where = "branches[" + std::to_string(i) + "]";
    check_id(br.id, where);
    check_bus_ref(br.from, where + ".from");
    check_bus_ref(br.to, where + ".to");
    require(br.from != br.to, where, "from == to");
    require(std::abs(br.r) + std::abs(br.x) > 0, where, "zero series impedance");
    require(br.i_max >= 0, where + ".i_max", "must be >= 0");
  }
  for (size_t i = 0; i < cf.transformers.size(); ++i) {
    const auto& t = cf.transformers[i];
    const std::string where = "transformers[" + std::to_string(i) + "]";
    check_id(t.id, where);
    check_bus_ref(t.from, where + ".from");
    check_bus_ref(t.to, where + ".to");
    require(t.from != t.to, where, "from == to");
    require(std::abs(t.r) + std::abs(t.x) > 0, where, "zero series impedance");
    if (!t.tap_values.empty()) {
      check_setting_list(t.tap_values, where + ".tap_values");
      require(t.tap_values.front() > 0, where + ".tap_values", "tap ratios must be positive");
    } else {
      require(t.tap_fixed > 0, where + ".tap_fixed", "must be positive");
    }
    if (!t.phase_values.empty()) check_setting_list(t.phase_values, where + ".phase_values");
  }
  for (size_t i = 0; i < cf.shunts.size(); ++i) {
    const auto& s = cf.shunts[i];
    const std::string where = "shunts[" + std::to_string(i) + "]";
    check_id(s.id, where);
    check_bus_ref(s.bus, where + ".bus");
    for (size_t j = 0; j < s.blocks.size(); ++j) {
      const std::string bw = where + ".blocks[" + std::to_string(j) + "]";
      require(s.blocks[j].steps >= 1, bw + ".steps", "must be >= 1");
      require(s.blocks[j].b_step != 0 && std::isfinite(s.blocks[j].b_step), bw + ".b_step",
              "must be finite and nonzero");
    }
  }
}

std::vector<double> shunt_allowed_values(const SwitchedShuntRecord& rec, bool sequential) {
  std::vector<double> vals;
  if (sequential) {
    vals.push_back(0.0);
    double running = 0.0;
    for (const auto& blk : rec.blocks) {
      for (int k = 1; k <= blk.steps; ++k) vals.push_back(running + k * blk.b_step);
      running += blk.steps * blk.b_step;
    }
  } else {
    vals.push_back(0.0);
    for (const auto& blk : rec.blocks) {
      std::vector<double> next;
      next.reserve(vals.size() * (blk.steps + 1));
      for (double v : vals)
        for (int k = 0; k <= blk.steps; ++k) next.push_back(v + k * blk.b_step);
      vals = std::move(next);
    }
  }
  std::sort(vals.begin(), vals.end());
  // Merge values that only differ by accumulated roundoff.
  std::vector<double> out;
  for (double v : vals) {
    if (out.empty() || v - out.back() > 1e-9 * std::max(1.0, std::abs(v))) out.push_back(v);
  }
  return out;
}

double median_setting(const std::vector<double>& values) {
  return values[(values.size() - 1) / 2];
}

void strip_priors(CaseFile& cf) {
  for (auto& t : cf.transformers) {
    if (!t.tap_values.empty()) t.tap_prior = median_setting(t.tap_values);
    if (!t.phase_values.empty()) t.phase_prior = median_setting(t.phase_values);
  }
  for (auto& s : cf.shunts) s.prior = 0.0;
}

uint64_t case_digest(const CaseFile& cf) { return fnv1a(write_case_json(cf)); }

}  // namespace hopf
