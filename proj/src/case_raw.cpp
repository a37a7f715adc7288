// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "case_raw.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hopf {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct LineCursor {
  std::istringstream in;
  int lineno = 0;
  explicit LineCursor(const std::string& text) : in(text) {}

  // Returns the next non-blank line with any trailing " / comment" removed.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      // strip comment introduced by '/' outside quotes
      bool quoted = false;
      size_t cut = raw.size();
      for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\'') quoted = !quoted;
        else if (raw[i] == '/' && !quoted) { cut = i; break; }
      }
      out = trim(raw.substr(0, cut));
      if (!out.empty()) return true;
    }
    return false;
  }
};

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw ParseError("raw line " + std::to_string(lineno) + ": " + what);
}

double to_num(const std::string& s, int lineno) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) fail(lineno, "malformed numeric field '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    fail(lineno, "malformed numeric field '" + s + "'");
  }
}

int to_int(const std::string& s, int lineno) {
  double v = to_num(s, lineno);
  if (v != std::floor(v)) fail(lineno, "expected integer field, got '" + s + "'");
  return static_cast<int>(v);
}

// Field accessor with positional defaults for short records.
struct Rec {
  std::vector<std::string> f;
  int lineno;
  double num(size_t i, double dflt) const {
    return (i < f.size() && !f[i].empty()) ? to_num(f[i], lineno) : dflt;
  }
  int integer(size_t i, int dflt) const {
    return (i < f.size() && !f[i].empty()) ? to_int(f[i], lineno) : dflt;
  }
  std::string text(size_t i, const std::string& dflt = "") const {
    return (i < f.size() && !f[i].empty()) ? f[i] : dflt;
  }
};

bool is_terminator(const std::string& line) {
  auto fields = split_csv_fields(line);
  return !fields.empty() && (fields[0] == "0" || fields[0] == "Q");
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 1 || hi <= lo) {
    out.push_back(lo);
    return out;
  }
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

}  // namespace

CaseFile parse_raw_subset(const std::string& text) {
  CaseFile cf;
  LineCursor cur(text);
  std::string line;

  if (!cur.next(line)) fail(0, "empty document");
  {
    Rec id{split_csv_fields(line), cur.lineno};
    int ic = id.integer(0, 0);
    if (ic != 0) fail(cur.lineno, "change-data files (IC != 0) are unsupported");
    cf.base_mva = id.num(1, 100.0);
    if (cf.base_mva <= 0) fail(cur.lineno, "SBASE must be positive");
    int rev = id.integer(2, 33);
    if (rev != 33) cf.warnings.push_back("raw: revision " + std::to_string(rev) +
                                         " treated as v33");
  }
  std::string title;
  cur.next(title);
  cf.name = trim(title);
  cur.next(title);  // second title line, ignored

  // v33 group order after the case id block.
  enum Group {
    kBus, kLoad, kFixedShunt, kGenerator, kBranch, kTransformer, kArea, kTwoTermDc,
    kVscDc, kImpCorr, kMultiTermDc, kMultiSection, kZone, kInterArea, kOwner, kFacts,
    kSwitchedShunt, kGne, kInduction, kGroupCount
  };
  static const char* kGroupNames[] = {
      "BUS", "LOAD", "FIXED SHUNT", "GENERATOR", "BRANCH", "TRANSFORMER", "AREA",
      "TWO-TERMINAL DC", "VSC DC", "IMPEDANCE CORRECTION", "MULTI-TERMINAL DC",
      "MULTI-SECTION LINE", "ZONE", "INTER-AREA TRANSFER", "OWNER", "FACTS",
      "SWITCHED SHUNT", "GNE", "INDUCTION MACHINE"};

  int swing_bus = 0;
  int n_load = 0, n_fsh = 0, n_gen = 0, n_branch = 0, n_xfmr = 0, n_swsh = 0;

  int group = kBus;
  bool done = false;
  while (!done && group < kGroupCount) {
    if (!cur.next(line)) break;  // missing trailing groups: treat as empty
    auto fields = split_csv_fields(line);
    if (!fields.empty() && fields[0] == "Q") break;
    if (is_terminator(line)) {
      ++group;
      continue;
    }
    Rec r{fields, cur.lineno};
    switch (group) {
      case kBus: {
        BusRecord b;
        b.id = to_int(fields.at(0), cur.lineno);
        if (b.id <= 0) fail(cur.lineno, "bus id must be positive");
        int ide = r.integer(3, 1);
        if (ide == 3 && swing_bus == 0) swing_bus = b.id;
        b.vmax = r.num(9, 1.1);   // NVHI
        b.vmin = r.num(10, 0.9);  // NVLO
        cf.buses.push_back(b);
        break;
      }
      case kLoad: {
        int bus = to_int(fields.at(0), cur.lineno);
        std::string id = r.text(1, "1");
        int status = r.integer(2, 1);
        if (status == 0) break;
        LoadRecord l;
        l.id = "load:" + std::to_string(bus) + ":" + id + ":" + std::to_string(++n_load);
        l.bus = bus;
        l.p = r.num(5, 0.0) / cf.base_mva;  // PL [MW]
        l.q = r.num(6, 0.0) / cf.base_mva;  // QL [Mvar]
        for (size_t i : {7u, 8u, 9u, 10u})
          if (r.num(i, 0.0) != 0.0) {
            cf.warnings.push_back("raw line " + std::to_string(cur.lineno) +
                                  ": constant-current/impedance load parts ignored");
            break;
          }
        cf.loads.push_back(l);
        break;
      }
      case kFixedShunt: {
        int bus = to_int(fields.at(0), cur.lineno);
        std::string id = r.text(1, "1");
        int status = r.integer(2, 1);
        if (status == 0) break;
        FixedShuntRecord s;
        s.id = "fsh:" + std::to_string(bus) + ":" + id + ":" + std::to_string(++n_fsh);
        s.bus = bus;
        s.g = r.num(3, 0.0) / cf.base_mva;  // GL [MW at 1 pu]
        s.b = r.num(4, 0.0) / cf.base_mva;  // BL [Mvar at 1 pu]
        cf.fixed_shunts.push_back(s);
        break;
      }
      case kGenerator: {
        int bus = to_int(fields.at(0), cur.lineno);
        std::string id = r.text(1, "1");
        int stat = r.integer(14, 1);
        if (stat == 0) break;
        GenRecord g;
        g.id = "gen:" + std::to_string(bus) + ":" + id + ":" + std::to_string(++n_gen);
        g.bus = bus;
        g.qmax = r.num(4, 9999.0) / cf.base_mva;  // QT
        g.qmin = r.num(5, -9999.0) / cf.base_mva; // QB
        g.pmax = r.num(16, 9999.0) / cf.base_mva; // PT
        g.pmin = r.num(17, -9999.0) / cf.base_mva;// PB
        // RAW carries no cost data; a uniform linear cost keeps the objective
        // meaningful (total generation). Override in the native JSON if needed.
        g.cost_c1 = 1.0;
        cf.generators.push_back(g);
        break;
      }
      case kBranch: {
        int i = to_int(fields.at(0), cur.lineno);
        int jb = std::abs(to_int(fields.at(1), cur.lineno));
        std::string ckt = r.text(2, "1");
        int st = r.integer(13, 1);
        if (st == 0) break;
        BranchRecord br;
        br.id = "br:" + std::to_string(i) + "-" + std::to_string(jb) + ":" + ckt + ":" +
                std::to_string(++n_branch);
        br.from = std::abs(i);
        br.to = jb;
        br.r = r.num(3, 0.0);
        br.x = r.num(4, 0.0);
        br.b = r.num(5, 0.0);
        br.i_max = r.num(6, 0.0) / cf.base_mva;  // RATEA [MVA] ~ current at 1 pu
        if (r.num(9, 0.0) != 0 || r.num(10, 0.0) != 0 || r.num(11, 0.0) != 0 ||
            r.num(12, 0.0) != 0)
          cf.warnings.push_back("raw line " + std::to_string(cur.lineno) +
                                ": branch end shunts (GI/BI/GJ/BJ) ignored");
        cf.branches.push_back(br);
        break;
      }
      case kTransformer: {
        // Record 1 already in `r`; a 2-winding transformer has 3 more lines.
        int i = to_int(fields.at(0), cur.lineno);
        int jb = std::abs(to_int(fields.at(1), cur.lineno));
        int k = r.integer(2, 0);
        if (k != 0) fail(cur.lineno, "unsupported: 3-winding transformer");
        std::string ckt = r.text(3, "1");
        int cw = r.integer(4, 1);
        int cz = r.integer(5, 1);
        int stat = r.integer(11, 1);
        if (cw != 1) fail(cur.lineno, "unsupported transformer CW=" + std::to_string(cw));
        if (cz != 1) fail(cur.lineno, "unsupported transformer CZ=" + std::to_string(cz));
        if (r.num(7, 0.0) != 0 || r.num(8, 0.0) != 0)
          cf.warnings.push_back("raw line " + std::to_string(cur.lineno) +
                                ": transformer magnetizing admittance ignored");
        std::string l2, l3, l4;
        if (!cur.next(l2) || !cur.next(l3) || !cur.next(l4))
          fail(cur.lineno, "truncated 2-winding transformer record");
        Rec r2{split_csv_fields(l2), cur.lineno - 2};
        Rec r3{split_csv_fields(l3), cur.lineno - 1};
        Rec r4{split_csv_fields(l4), cur.lineno};
        if (stat == 0) break;

        XfmrRecord t;
        t.id = "xf:" + std::to_string(i) + "-" + std::to_string(jb) + ":" + ckt + ":" +
               std::to_string(++n_xfmr);
        t.from = std::abs(i);
        t.to = jb;
        t.r = r2.num(0, 0.0);
        t.x = r2.num(1, 0.0);
        double windv1 = r3.num(0, 1.0);
        double ang1 = r3.num(2, 0.0);
        t.i_max = r3.num(3, 0.0) / cf.base_mva;  // RATA1
        int cod = r3.integer(6, 0);
        double rma = r3.num(8, 1.1);
        double rmi = r3.num(9, 0.9);
        int ntp = r3.integer(12, 33);
        double windv2 = r4.num(0, 1.0);
        if (windv2 <= 0) fail(cur.lineno, "WINDV2 must be positive");

        // Fold the to-side winding ratio into the from-side tap.
        t.tap_fixed = windv1 / windv2;
        t.phase_fixed = ang1 * kDegToRad;
        if (cod == 1 || cod == -1) {
          auto taps = linspace(rmi, rma, ntp);
          for (double& v : taps) v /= windv2;
          if (taps.size() >= 2) {
            t.tap_values = taps;
            t.tap_prior = windv1 / windv2;
          }
        } else if (cod == 3 || cod == -3) {
          auto angs = linspace(rmi, rma, ntp);
          for (double& v : angs) v *= kDegToRad;
          if (angs.size() >= 2) {
            t.phase_values = angs;
            t.phase_prior = ang1 * kDegToRad;
          }
        } else if (cod != 0) {
          cf.warnings.push_back("raw line " + std::to_string(r3.lineno) +
                                ": transformer control mode COD=" + std::to_string(cod) +
                                " treated as fixed");
        }
        cf.transformers.push_back(t);
        break;
      }
      case kSwitchedShunt: {
        int bus = to_int(fields.at(0), cur.lineno);
        int stat = r.integer(3, 1);
        if (stat == 0) break;
        SwitchedShuntRecord s;
        s.id = "swsh:" + std::to_string(bus) + ":" + std::to_string(++n_swsh);
        s.bus = bus;
        s.prior = r.num(9, 0.0) / cf.base_mva;  // BINIT [Mvar at 1 pu]
        for (size_t bi = 10; bi + 1 < std::max<size_t>(fields.size(), 10); bi += 2) {
          int steps = r.integer(bi, 0);
          double bstep = r.num(bi + 1, 0.0);
          if (steps <= 0 || bstep == 0.0) break;
          s.blocks.push_back({steps, bstep / cf.base_mva});
        }
        cf.shunts.push_back(s);
        break;
      }
      default: {
        // Group outside the supported subset: consume records, warn once.
        std::string name = group < kGroupCount ? kGroupNames[group] : "?";
        bool warned = false;
        for (auto& w : cf.warnings)
          if (w.find("skipped group " + name) != std::string::npos) warned = true;
        if (!warned)
          cf.warnings.push_back("raw: skipped group " + name + " (unsupported)");
        break;
      }
    }
  }

  if (cf.buses.empty()) fail(cur.lineno, "no bus records found");
  if (swing_bus == 0) {
    swing_bus = cf.buses.front().id;
    for (const auto& b : cf.buses) swing_bus = std::min(swing_bus, b.id);
    cf.warnings.push_back("raw: no swing bus (IDE=3); using bus " +
                          std::to_string(swing_bus) + " as reference");
  }
  cf.reference_bus = swing_bus;

  validate_case(cf);
  return cf;
}

}  // namespace hopf
