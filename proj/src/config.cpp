// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "util.hpp"

namespace hopf {

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

double parse_num(const std::string& v) {
  size_t pos = 0;
  double d = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("expected a number, got '" + v + "'");
  return d;
}

struct Entry {
  std::function<void(SolverConfig&, const std::string&)> set;
  std::function<std::string(const SolverConfig&)> get;
};

template <typename T>
Entry num_entry(T HomotopyOptions::* field, HomotopyOptions SolverConfig::* stage) {
  return {[field, stage](SolverConfig& c, const std::string& v) {
            (c.*stage).*field = static_cast<T>(parse_num(v));
          },
          [field, stage](const SolverConfig& c) { return fmt_full((c.*stage).*field); }};
}

Entry bool_entry(bool HomotopyOptions::* field, HomotopyOptions SolverConfig::* stage) {
  return {[field, stage](SolverConfig& c, const std::string& v) {
            (c.*stage).*field = parse_bool(v);
          },
          [field, stage](const SolverConfig& c) {
            return (c.*stage).*field ? "true" : "false";
          }};
}

Entry newton_num(double NewtonOptions::* field) {
  // Newton knobs apply to both stages (one inner-solver contract).
  return {[field](SolverConfig& c, const std::string& v) {
            double d = parse_num(v);
            c.stage1.newton.*field = d;
            c.stage2.newton.*field = d;
          },
          [field](const SolverConfig& c) { return fmt_full(c.stage1.newton.*field); }};
}

Entry newton_int(int NewtonOptions::* field) {
  return {[field](SolverConfig& c, const std::string& v) {
            int d = static_cast<int>(parse_num(v));
            c.stage1.newton.*field = d;
            c.stage2.newton.*field = d;
          },
          [field](const SolverConfig& c) { return std::to_string(c.stage1.newton.*field); }};
}

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> reg = {
      {"solver.tol", newton_num(&NewtonOptions::tol)},
      {"solver.feas_tol", newton_num(&NewtonOptions::feas_tol)},
      {"solver.max_iter", newton_int(&NewtonOptions::max_iter)},
      {"solver.sigma", newton_num(&NewtonOptions::sigma)},
      {"solver.eps_min", newton_num(&NewtonOptions::eps_min)},
      {"solver.eps_cap", newton_num(&NewtonOptions::eps_cap)},
      {"solver.gamma", newton_num(&NewtonOptions::gamma)},
      {"solver.max_backtracks", newton_int(&NewtonOptions::max_backtracks)},
      {"solver.reg_delta", newton_num(&NewtonOptions::reg_delta)},

      {"stage1.kadj", num_entry(&HomotopyOptions::k_adj, &SolverConfig::stage1)},
      {"stage1.kslack", num_entry(&HomotopyOptions::k_slack, &SolverConfig::stage1)},
      {"stage1.gshort", num_entry(&HomotopyOptions::g_short, &SolverConfig::stage1)},
      {"stage1.short_branches",
       bool_entry(&HomotopyOptions::short_branches, &SolverConfig::stage1)},
      {"stage1.short_to_ref",
       bool_entry(&HomotopyOptions::short_to_ref, &SolverConfig::stage1)},
      {"stage1.gen_margin", num_entry(&HomotopyOptions::gen_margin, &SolverConfig::stage1)},
      {"stage1.nu_step_init",
       num_entry(&HomotopyOptions::nu_step_init, &SolverConfig::stage1)},
      {"stage1.nu_step_min",
       num_entry(&HomotopyOptions::nu_step_min, &SolverConfig::stage1)},
      {"stage1.nu_growth", num_entry(&HomotopyOptions::nu_growth, &SolverConfig::stage1)},
      {"stage1.nu_shrink", num_entry(&HomotopyOptions::nu_shrink, &SolverConfig::stage1)},
      {"stage1.final_tol", num_entry(&HomotopyOptions::final_tol, &SolverConfig::stage1)},
      {"stage1.warm_kadj_factor",
       num_entry(&HomotopyOptions::warm_kadj_factor, &SolverConfig::stage1)},

      {"stage2.nu_step_init",
       num_entry(&HomotopyOptions::nu_step_init, &SolverConfig::stage2)},
      {"stage2.nu_step_min",
       num_entry(&HomotopyOptions::nu_step_min, &SolverConfig::stage2)},
      {"stage2.nu_growth", num_entry(&HomotopyOptions::nu_growth, &SolverConfig::stage2)},
      {"stage2.nu_shrink", num_entry(&HomotopyOptions::nu_shrink, &SolverConfig::stage2)},
      {"stage2.final_tol", num_entry(&HomotopyOptions::final_tol, &SolverConfig::stage2)},

      {"round.screen_flow_limits",
       {[](SolverConfig& c, const std::string& v) {
          c.rounding.screen_flow_limits = parse_bool(v);
        },
        [](const SolverConfig& c) {
          return c.rounding.screen_flow_limits ? "true" : "false";
        }}},
      {"shunt.sequential",
       {[](SolverConfig& c, const std::string& v) { c.sequential_shunts = parse_bool(v); },
        [](const SolverConfig& c) { return c.sequential_shunts ? "true" : "false"; }}},

      {"oracle.max_combinations",
       {[](SolverConfig& c, const std::string& v) {
          c.oracle.max_combinations = static_cast<long>(parse_num(v));
        },
        [](const SolverConfig& c) { return std::to_string(c.oracle.max_combinations); }}},
      {"oracle.gap_tol",
       {[](SolverConfig& c, const std::string& v) { c.oracle.gap_tol = parse_num(v); },
        [](const SolverConfig& c) { return fmt_full(c.oracle.gap_tol); }}},
      {"oracle.newton_tol",
       {[](SolverConfig& c, const std::string& v) { c.oracle.newton_tol = parse_num(v); },
        [](const SolverConfig& c) { return fmt_full(c.oracle.newton_tol); }}},
      {"oracle.threads",
       {[](SolverConfig& c, const std::string& v) {
          c.oracle.threads = static_cast<int>(parse_num(v));
        },
        [](const SolverConfig& c) { return std::to_string(c.oracle.threads); }}},
      {"oracle.cache_dir",
       {[](SolverConfig& c, const std::string& v) { c.oracle.cache_dir = v; },
        [](const SolverConfig& c) { return c.oracle.cache_dir; }}},

      {"sweep.threads",
       {[](SolverConfig& c, const std::string& v) {
          c.sweep_threads = static_cast<int>(parse_num(v));
        },
        [](const SolverConfig& c) { return std::to_string(c.sweep_threads); }}},
  };
  return reg;
}

}  // namespace

void SolverConfig::set(const std::string& key, const std::string& value) {
  auto it = registry().find(key);
  if (it == registry().end()) throw std::invalid_argument("unknown config key '" + key + "'");
  try {
    it->second.set(*this, value);
  } catch (const std::exception& e) {
    throw std::invalid_argument(key + ": " + e.what());
  }
}

void SolverConfig::load_string(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (!value.empty() && value.front() == '"' && value.back() == '"' && value.size() >= 2)
      value = value.substr(1, value.size() - 2);
    try {
      set(key, value);
    } catch (const std::exception& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void SolverConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load_string(ss.str(), path);
}

std::map<std::string, std::string> SolverConfig::dump() const {
  std::map<std::string, std::string> out;
  for (const auto& [key, entry] : registry()) out[key] = entry.get(*this);
  out["solve.stage2"] = stage2_mode;
  out["solve.no_priors"] = no_priors ? "true" : "false";
  out["solve.warm_start"] = stage1.warm_start ? "true" : "false";
  out["solve.seed"] = std::to_string(seed);
  return out;
}

}  // namespace hopf
