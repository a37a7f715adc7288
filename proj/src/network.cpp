// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hopf {

const char* control_kind_name(ControlKind k) {
  switch (k) {
    case ControlKind::TapRatio: return "tap_ratio";
    case ControlKind::PhaseShiftRad: return "phase_shift_rad";
    case ControlKind::ShuntSusceptancePu: return "shunt_susceptance_pu";
  }
  return "?";
}

namespace {

double clamp_into(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

DiscreteControl make_control(std::string id, ControlKind kind, std::vector<double> allowed,
                             std::optional<double> prior, int element) {
  DiscreteControl c;
  c.id = std::move(id);
  c.kind = kind;
  c.allowed = std::move(allowed);
  c.lower = c.allowed.front();
  c.upper = c.allowed.back();
  double trivial = kind == ControlKind::TapRatio ? 1.0 : 0.0;
  c.trivial_value = clamp_into(trivial, c.lower, c.upper);
  c.prior = prior;
  double origin = prior ? *prior
                        : (kind == ControlKind::ShuntSusceptancePu
                               ? 0.0
                               : median_setting(c.allowed));
  c.base_origin = clamp_into(origin, c.lower, c.upper);
  c.element = element;
  return c;
}

Layout make_layout(const Network& net, bool with_dc) {
  Layout L;
  L.nb = net.n_bus();
  L.ng = net.n_gen();
  L.ndv = net.n_dvar;
  L.npin = static_cast<int>(net.pin_buses.size());
  L.nrated = static_cast<int>(net.rated_branches.size());
  L.with_dc = with_dc;
  L.off_pq = 2 * L.nb;
  L.off_dc = L.off_pq + 2 * L.ng;
  L.off_u = L.off_dc + (with_dc ? L.ndv : 0);
  L.nx = L.off_u + 2 * L.nb;
  L.neq = 2 * L.nb + L.npin;
  L.ni = 2 * L.nb + 4 * L.ng + (with_dc ? 2 * L.ndv : 0) + 2 * L.nrated;
  L.off_lam = L.nx;
  L.off_mu = L.nx + L.neq;
  L.off_s = L.off_mu + L.ni;
  L.ntot = L.off_s + L.ni;
  return L;
}

// Union-find for island detection.
struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Network build_network(const CaseFile& cf) {
  Network net;
  net.case_name = cf.name;
  net.base_mva = cf.base_mva;

  // Buses sorted by external id for stable indexing.
  std::vector<BusRecord> sorted = cf.buses;
  std::sort(sorted.begin(), sorted.end(),
            [](const BusRecord& a, const BusRecord& b) { return a.id < b.id; });
  for (const auto& b : sorted) {
    net.bus_index[b.id] = static_cast<int>(net.buses.size());
    net.buses.push_back({b.id, b.vmin, b.vmax});
  }

  for (const auto& g : cf.generators) {
    NetGen ng;
    ng.id = g.id;
    ng.bus = net.bus_index.at(g.bus);
    ng.pmin = g.pmin;
    ng.pmax = g.pmax;
    ng.qmin = g.qmin;
    ng.qmax = g.qmax;
    // $/h on MW basis -> internal (objective divided by base MVA).
    ng.c0i = g.cost_c0 / cf.base_mva;
    ng.c1i = g.cost_c1;
    ng.c2i = g.cost_c2 * cf.base_mva;
    net.gens.push_back(ng);
  }
  for (const auto& l : cf.loads)
    net.loads.push_back({l.id, net.bus_index.at(l.bus), l.p, l.q});
  for (const auto& s : cf.fixed_shunts)
    net.fshunts.push_back({net.bus_index.at(s.bus), s.g, s.b});

  auto add_branch = [&](const std::string& id, int from, int to, double r, double x,
                        double b, double imax, bool is_xfmr) {
    NetBranch br;
    br.id = id;
    br.from = net.bus_index.at(from);
    br.to = net.bus_index.at(to);
    br.ys = 1.0 / cd(r, x);
    br.b_charge = b;
    br.i_max = imax;
    br.is_transformer = is_xfmr;
    net.branches.push_back(br);
    return static_cast<int>(net.branches.size() - 1);
  };

  for (const auto& b : cf.branches)
    add_branch(b.id, b.from, b.to, b.r, b.x, b.b, b.i_max, false);

  for (const auto& t : cf.transformers) {
    int bi = add_branch(t.id, t.from, t.to, t.r, t.x, t.b, t.i_max, true);
    auto& br = net.branches[bi];
    br.tau0 = t.tap_fixed;
    br.phi0 = t.phase_fixed;
    if (!t.tap_values.empty()) {
      br.tap_ctrl = static_cast<int>(net.controls.size());
      net.controls.push_back(
          make_control(t.id + ":tap", ControlKind::TapRatio, t.tap_values, t.tap_prior, bi));
    }
    if (!t.phase_values.empty()) {
      br.phase_ctrl = static_cast<int>(net.controls.size());
      net.controls.push_back(make_control(t.id + ":phase", ControlKind::PhaseShiftRad,
                                          t.phase_values, t.phase_prior, bi));
    }
  }

  for (const auto& s : cf.shunts) {
    auto allowed = shunt_allowed_values(s);
    net.controls.push_back(make_control(s.id, ControlKind::ShuntSusceptancePu,
                                        std::move(allowed), s.prior,
                                        net.bus_index.at(s.bus)));
  }

  net.n_dvar = 0;
  for (auto& c : net.controls)
    if (c.allowed.size() > 1) c.var = net.n_dvar++;

  for (size_t i = 0; i < net.branches.size(); ++i)
    if (net.branches[i].i_max > 0) {
      net.branches[i].rate_slot = static_cast<int>(net.rated_branches.size());
      net.rated_branches.push_back(static_cast<int>(i));
    }

  // One v_im pin per island; the reference bus pins its own island and any
  // other island is pinned at its lowest-id bus.
  Dsu dsu(net.n_bus());
  for (const auto& br : net.branches) dsu.join(br.from, br.to);
  int ref = net.bus_index.at(cf.reference_bus);
  std::vector<int> island_pin(net.n_bus(), -1);
  island_pin[dsu.find(ref)] = ref;
  for (int b = 0; b < net.n_bus(); ++b) {
    int root = dsu.find(b);
    if (island_pin[root] < 0) island_pin[root] = b;
  }
  net.pin_buses.push_back(ref);
  for (int b = 0; b < net.n_bus(); ++b)
    if (island_pin[dsu.find(b)] == b && b != ref) net.pin_buses.push_back(b);

  net.layout_stage1 = make_layout(net, true);
  net.layout_stage2 = make_layout(net, false);
  return net;
}

BranchY branch_admittance(const NetBranch& br, double tau, double phi) {
  if (!(tau > 0)) throw std::domain_error("branch tap ratio must be positive");
  BranchY Y;
  const cd yc = br.ys + cd(0, br.b_charge / 2.0);
  const cd e = std::polar(1.0, phi);
  const cd ebar = std::conj(e);
  const double t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau;
  const cd jj(0, 1);

  Y.A = yc / t2;
  Y.B = -br.ys * e / tau;
  Y.C = -br.ys * ebar / tau;
  Y.D = yc;

  Y.At = -2.0 * yc / t3;
  Y.Bt = br.ys * e / t2;
  Y.Ct = br.ys * ebar / t2;

  Y.Ap = 0.0;
  Y.Bp = -jj * br.ys * e / tau;
  Y.Cp = jj * br.ys * ebar / tau;

  Y.Att = 6.0 * yc / t4;
  Y.Btt = -2.0 * br.ys * e / t3;
  Y.Ctt = -2.0 * br.ys * ebar / t3;

  Y.Btp = jj * br.ys * e / t2;
  Y.Ctp = -jj * br.ys * ebar / t2;

  Y.Bpp = br.ys * e / tau;   // = -B
  Y.Cpp = br.ys * ebar / tau;
  return Y;
}

std::pair<cd, cd> branch_current(const NetBranch& br, cd v_from, cd v_to, double tau,
                                 double phi) {
  BranchY Y = branch_admittance(br, tau, phi);
  return {Y.A * v_from + Y.B * v_to, Y.C * v_from + Y.D * v_to};
}

}  // namespace hopf
