// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "case.hpp"

namespace hopf {

using cd = std::complex<double>;

enum class ControlKind { TapRatio, PhaseShiftRad, ShuntSusceptancePu };

const char* control_kind_name(ControlKind k);

/// One discrete control device: its allowed setting set, bounds, the trivial
/// value used at the start of the homotopy and the base-value origin used at
/// its end. Devices with a single allowed value carry no adjustment variable.
struct DiscreteControl {
  std::string id;
  ControlKind kind;
  std::vector<double> allowed;  // sorted, strictly increasing
  double lower = 0, upper = 0;  // min/max of allowed
  double trivial_value = 0;     // clamped into [lower, upper]
  double base_origin = 0;       // prior, or median/zero default; clamped
  std::optional<double> prior;
  int element = -1;  // branch index (tap/phase) or bus index (shunt)
  int var = -1;      // adjustment-variable slot; -1 when |allowed| == 1
  double range() const { return upper - lower; }
};

struct NetBus {
  int ext_id = 0;
  double vmin = 0.9, vmax = 1.1;
};

struct NetGen {
  std::string id;
  int bus = 0;
  double pmin = 0, pmax = 0, qmin = 0, qmax = 0;  // p.u.
  // Cost in internal units (objective is $/h divided by base MVA):
  // cost(P_pu) = c0i + c1i*P_pu + c2i*P_pu^2.
  double c0i = 0, c1i = 0, c2i = 0;
};

struct NetLoad {
  std::string id;
  int bus = 0;
  double p = 0, q = 0;  // p.u.
};

struct NetFixedShunt {
  int bus = 0;
  double g = 0, b = 0;
};

struct NetBranch {
  std::string id;
  int from = 0, to = 0;
  cd ys;               // series admittance
  double b_charge = 0; // total charging susceptance
  double tau0 = 1.0;   // fixed tap ratio (from side), used when tap_ctrl < 0
  double phi0 = 0.0;   // fixed phase shift [rad], used when phase_ctrl < 0
  int tap_ctrl = -1;
  int phase_ctrl = -1;
  double i_max = 0;    // 0 = unrated
  int rate_slot = -1;  // index into Network::rated_branches
  bool is_transformer = false;
};

/// Positions of every primal and dual quantity inside the flat iterate
/// vector. Stage II drops the adjustment variables and their bound rows
/// (with_dc = false); everything else keeps the same relative order.
struct Layout {
  int nb = 0, ng = 0, ndv = 0, npin = 0, nrated = 0;
  bool with_dc = true;
  int nx = 0, neq = 0, ni = 0, ntot = 0;
  int off_pq = 0, off_dc = 0, off_u = 0, off_lam = 0, off_mu = 0, off_s = 0;

  // primal variables
  int vre(int b) const { return 2 * b; }
  int vim(int b) const { return 2 * b + 1; }
  int pg(int g) const { return off_pq + 2 * g; }
  int qg(int g) const { return off_pq + 2 * g + 1; }
  int dc(int j) const { return off_dc + j; }
  int ure(int b) const { return off_u + 2 * b; }
  int uim(int b) const { return off_u + 2 * b + 1; }
  // duals
  int lam(int e) const { return off_lam + e; }
  int mu(int k) const { return off_mu + k; }
  int s(int k) const { return off_s + k; }
  // equality constraint slots
  int eq_kcl_re(int b) const { return 2 * b; }
  int eq_kcl_im(int b) const { return 2 * b + 1; }
  int eq_pin(int p) const { return 2 * nb + p; }
  // inequality slots
  int iq_vhi(int b) const { return 2 * b; }
  int iq_vlo(int b) const { return 2 * b + 1; }
  int iq_phi(int g) const { return 2 * nb + 4 * g; }
  int iq_plo(int g) const { return 2 * nb + 4 * g + 1; }
  int iq_qhi(int g) const { return 2 * nb + 4 * g + 2; }
  int iq_qlo(int g) const { return 2 * nb + 4 * g + 3; }
  int iq_dchi(int j) const { return 2 * nb + 4 * ng + 2 * j; }
  int iq_dclo(int j) const { return 2 * nb + 4 * ng + 2 * j + 1; }
  int flow_base() const { return 2 * nb + 4 * ng + (with_dc ? 2 * ndv : 0); }
  int iq_flow_from(int r) const { return flow_base() + 2 * r; }
  int iq_flow_to(int r) const { return flow_base() + 2 * r + 1; }
  // residual row blocks
  int row_stat(int xcol) const { return xcol; }
  int row_eq(int e) const { return nx + e; }
  int row_sdef(int k) const { return nx + neq + k; }
  int row_comp(int k) const { return nx + neq + ni + k; }
};

struct Network {
  std::string case_name;
  double base_mva = 100.0;
  std::vector<NetBus> buses;
  std::vector<NetGen> gens;
  std::vector<NetLoad> loads;
  std::vector<NetFixedShunt> fshunts;
  std::vector<NetBranch> branches;
  std::vector<DiscreteControl> controls;
  std::vector<int> pin_buses;       // v_im pins, one per island; [0] = reference
  std::vector<int> rated_branches;  // branch indices with i_max > 0
  int n_dvar = 0;                   // controls with an adjustment variable
  std::unordered_map<int, int> bus_index;  // external id -> internal index
  Layout layout_stage1;
  Layout layout_stage2;

  int n_bus() const { return static_cast<int>(buses.size()); }
  int n_gen() const { return static_cast<int>(gens.size()); }
  int n_d() const { return static_cast<int>(controls.size()); }
  const Layout& layout(bool with_dc) const {
    return with_dc ? layout_stage1 : layout_stage2;
  }
};

/// Builds the immutable solver network from a validated case: admittance
/// stamps, the discrete control registry with split variables, deterministic
/// variable indexing and one voltage-angle pin per island.
Network build_network(const CaseFile& cf);

/// Two-port admittance blocks of a branch at ratio tau and phase shift phi,
/// with analytic derivatives up to second order in (tau, phi):
///   I_from = A*V_from + B*V_to,  I_to = C*V_from + D*V_to.
/// The tap is on the from side; A carries the 1/tau^2 dependence.
struct BranchY {
  cd A, B, C, D;
  cd At, Bt, Ct;        // d/dtau (Dt = 0)
  cd Ap, Bp, Cp;        // d/dphi
  cd Att, Btt, Ctt;     // d2/dtau2
  cd Btp, Ctp;          // d2/dtau dphi (Atp = 0)
  cd Bpp, Cpp;          // d2/dphi2 (App = 0)
};
BranchY branch_admittance(const NetBranch& br, double tau, double phi);

/// From/to-side currents of a branch. Throws std::domain_error for tau <= 0.
std::pair<cd, cd> branch_current(const NetBranch& br, cd v_from, cd v_to, double tau,
                                 double phi);

}  // namespace hopf
