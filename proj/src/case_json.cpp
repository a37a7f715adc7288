// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "case_json.hpp"

#include <json.hpp>

namespace hopf {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& member(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing required field '") + key + "'");
  return *it;
}

double num(const json& j, const std::string& path, const char* key) {
  const json& v = member(j, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double num_or(const json& j, const char* key, double dflt) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return dflt;
  return it->get<double>();
}

int integer(const json& j, const std::string& path, const char* key) {
  const json& v = member(j, path, key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string str(const json& j, const std::string& path, const char* key) {
  const json& v = member(j, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> num_list(const json& j, const std::string& path, const char* key) {
  std::vector<double> out;
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array()) fail(path + "." + key, "expected an array of numbers");
  for (const auto& v : *it) {
    if (!v.is_number()) fail(path + "." + key, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::optional<double> opt_num(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) fail(path + "." + key, "expected a number");
  return it->get<double>();
}

const json& array_member(const json& j, const std::string& path, const char* key,
                         bool required) {
  static const json empty = json::array();
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) fail(path, std::string("missing required field '") + key + "'");
    return empty;
  }
  if (!it->is_array()) fail(path + "." + key, "expected an array");
  return *it;
}

}  // namespace

CaseFile parse_json_case(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("$", "top-level value must be an object");

  CaseFile cf;
  int version = integer(j, "$", "schema_version");
  if (version != 1) fail("$.schema_version", "unsupported version " + std::to_string(version));
  cf.schema_version = version;
  if (j.contains("name")) cf.name = str(j, "$", "name");
  cf.base_mva = num(j, "$", "base_mva");
  cf.reference_bus = integer(j, "$", "reference_bus");

  for (size_t i = 0; const auto& bj : array_member(j, "$", "buses", true)) {
    const std::string path = "$.buses[" + std::to_string(i++) + "]";
    BusRecord b;
    b.id = integer(bj, path, "id");
    b.vmin = num(bj, path, "vmin");
    b.vmax = num(bj, path, "vmax");
    cf.buses.push_back(b);
  }
  for (size_t i = 0; const auto& gj : array_member(j, "$", "generators", false)) {
    const std::string path = "$.generators[" + std::to_string(i++) + "]";
    GenRecord g;
    g.id = str(gj, path, "id");
    g.bus = integer(gj, path, "bus");
    g.pmin = num(gj, path, "pmin");
    g.pmax = num(gj, path, "pmax");
    g.qmin = num(gj, path, "qmin");
    g.qmax = num(gj, path, "qmax");
    g.cost_c0 = num_or(gj, "cost_c0", 0.0);
    g.cost_c1 = num_or(gj, "cost_c1", 0.0);
    g.cost_c2 = num_or(gj, "cost_c2", 0.0);
    cf.generators.push_back(g);
  }
  for (size_t i = 0; const auto& lj : array_member(j, "$", "loads", false)) {
    const std::string path = "$.loads[" + std::to_string(i++) + "]";
    LoadRecord l;
    l.id = str(lj, path, "id");
    l.bus = integer(lj, path, "bus");
    l.p = num(lj, path, "p");
    l.q = num(lj, path, "q");
    cf.loads.push_back(l);
  }
  for (size_t i = 0; const auto& bj : array_member(j, "$", "branches", false)) {
    const std::string path = "$.branches[" + std::to_string(i++) + "]";
    BranchRecord br;
    br.id = str(bj, path, "id");
    br.from = integer(bj, path, "from");
    br.to = integer(bj, path, "to");
    br.r = num(bj, path, "r");
    br.x = num(bj, path, "x");
    br.b = num_or(bj, "b", 0.0);
    br.i_max = num_or(bj, "i_max", 0.0);
    cf.branches.push_back(br);
  }
  for (size_t i = 0; const auto& sj : array_member(j, "$", "fixed_shunts", false)) {
    const std::string path = "$.fixed_shunts[" + std::to_string(i++) + "]";
    FixedShuntRecord s;
    s.id = str(sj, path, "id");
    s.bus = integer(sj, path, "bus");
    s.g = num_or(sj, "g", 0.0);
    s.b = num_or(sj, "b", 0.0);
    cf.fixed_shunts.push_back(s);
  }
  for (size_t i = 0; const auto& tj : array_member(j, "$", "transformers", false)) {
    const std::string path = "$.transformers[" + std::to_string(i++) + "]";
    XfmrRecord t;
    t.id = str(tj, path, "id");
    t.from = integer(tj, path, "from");
    t.to = integer(tj, path, "to");
    t.r = num(tj, path, "r");
    t.x = num(tj, path, "x");
    t.b = num_or(tj, "b", 0.0);
    t.i_max = num_or(tj, "i_max", 0.0);
    t.tap_fixed = num_or(tj, "tap_fixed", 1.0);
    t.phase_fixed = num_or(tj, "phase_fixed", 0.0);
    t.tap_values = num_list(tj, path, "tap_values");
    t.phase_values = num_list(tj, path, "phase_values");
    t.tap_prior = opt_num(tj, path, "tap_prior");
    t.phase_prior = opt_num(tj, path, "phase_prior");
    cf.transformers.push_back(t);
  }
  for (size_t i = 0; const auto& sj : array_member(j, "$", "shunts", false)) {
    const std::string path = "$.shunts[" + std::to_string(i++) + "]";
    SwitchedShuntRecord s;
    s.id = str(sj, path, "id");
    s.bus = integer(sj, path, "bus");
    size_t k = 0;
    for (const auto& bj : array_member(sj, path, "blocks", true)) {
      const std::string bpath = path + ".blocks[" + std::to_string(k++) + "]";
      ShuntBlock blk;
      blk.steps = integer(bj, bpath, "steps");
      blk.b_step = num(bj, bpath, "b_step");
      s.blocks.push_back(blk);
    }
    s.prior = opt_num(sj, path, "prior");
    cf.shunts.push_back(s);
  }

  validate_case(cf);
  return cf;
}

std::string write_case_json(const CaseFile& cf) {
  ordered_json j;
  j["schema_version"] = cf.schema_version;
  if (!cf.name.empty()) j["name"] = cf.name;
  j["base_mva"] = cf.base_mva;
  j["reference_bus"] = cf.reference_bus;

  j["buses"] = ordered_json::array();
  for (const auto& b : cf.buses)
    j["buses"].push_back({{"id", b.id}, {"vmin", b.vmin}, {"vmax", b.vmax}});

  j["generators"] = ordered_json::array();
  for (const auto& g : cf.generators)
    j["generators"].push_back({{"id", g.id},
                               {"bus", g.bus},
                               {"pmin", g.pmin},
                               {"pmax", g.pmax},
                               {"qmin", g.qmin},
                               {"qmax", g.qmax},
                               {"cost_c0", g.cost_c0},
                               {"cost_c1", g.cost_c1},
                               {"cost_c2", g.cost_c2}});

  j["loads"] = ordered_json::array();
  for (const auto& l : cf.loads)
    j["loads"].push_back({{"id", l.id}, {"bus", l.bus}, {"p", l.p}, {"q", l.q}});

  j["branches"] = ordered_json::array();
  for (const auto& br : cf.branches)
    j["branches"].push_back({{"id", br.id},
                             {"from", br.from},
                             {"to", br.to},
                             {"r", br.r},
                             {"x", br.x},
                             {"b", br.b},
                             {"i_max", br.i_max}});

  j["fixed_shunts"] = ordered_json::array();
  for (const auto& s : cf.fixed_shunts)
    j["fixed_shunts"].push_back({{"id", s.id}, {"bus", s.bus}, {"g", s.g}, {"b", s.b}});

  j["transformers"] = ordered_json::array();
  for (const auto& t : cf.transformers) {
    ordered_json tj{{"id", t.id},     {"from", t.from}, {"to", t.to},
                    {"r", t.r},       {"x", t.x},       {"b", t.b},
                    {"i_max", t.i_max}};
    if (!t.tap_values.empty()) {
      tj["tap_values"] = t.tap_values;
      if (t.tap_prior) tj["tap_prior"] = *t.tap_prior;
    } else {
      tj["tap_fixed"] = t.tap_fixed;
    }
    if (!t.phase_values.empty()) {
      tj["phase_values"] = t.phase_values;
      if (t.phase_prior) tj["phase_prior"] = *t.phase_prior;
    } else {
      tj["phase_fixed"] = t.phase_fixed;
    }
    j["transformers"].push_back(std::move(tj));
  }

  j["shunts"] = ordered_json::array();
  for (const auto& s : cf.shunts) {
    ordered_json sj{{"id", s.id}, {"bus", s.bus}};
    sj["blocks"] = ordered_json::array();
    for (const auto& blk : s.blocks)
      sj["blocks"].push_back({{"steps", blk.steps}, {"b_step", blk.b_step}});
    if (s.prior) sj["prior"] = *s.prior;
    j["shunts"].push_back(std::move(sj));
  }

  return j.dump(2) + "\n";
}

}  // namespace hopf
