// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "kkt.hpp"

#include <cmath>
#include <vector>

namespace hopf {

namespace {

using Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

// The Lagrangian couples complex current terms with per-bus dual pairs
// (lam_re, lam_im). Writing wbar = lam_re - j*lam_im, the contribution of a
// current term I to the Lagrangian is Re(wbar * I), and:
//   d Re(wbar*K*V)    /d(vre, vim) = ( Re(wbar*K), -Im(wbar*K) )   [I = K*V]
//   d Re(wbar*K*Vbar) /d(vre, vim) = ( Re(wbar*K),  Im(wbar*K) )   [I = K*conj(V)]
// which is all the machinery the stamps below need.

struct Assembler {
  const SubProblem& sp;
  const Network& net;
  const Layout& L;
  const VectorXd& th;
  double eps;
  bool want_jac;

  VectorXd r;
  std::vector<Triplet> T;
  std::vector<cd> Ibus;  // KCL accumulator (current drawn from each bus)

  Assembler(const SubProblem& sp_, const VectorXd& theta, double eps_, bool jac)
      : sp(sp_), net(*sp_.net), L(sp_.layout), th(theta), eps(eps_), want_jac(jac) {
    r = VectorXd::Zero(L.ntot);
    Ibus.assign(L.nb, cd(0, 0));
    if (want_jac) T.reserve(64 * L.nb + 32 * L.ni);
  }

  cd V(int b) const { return cd(th[L.vre(b)], th[L.vim(b)]); }
  cd wbar(int b) const {
    return cd(th[L.lam(L.eq_kcl_re(b))], -th[L.lam(L.eq_kcl_im(b))]);
  }

  void J(int row, int col, double v) {
    if (want_jac) T.emplace_back(row, col, v);
  }

  // --- current stamps -------------------------------------------------

  // dI = K dV at the KCL rows of bus eb, voltage of bus vb (I holomorphic).
  void gV_holo(int eb, int vb, cd K) {
    const int rre = L.row_eq(L.eq_kcl_re(eb)), rim = L.row_eq(L.eq_kcl_im(eb));
    J(rre, L.vre(vb), K.real());
    J(rre, L.vim(vb), -K.imag());
    J(rim, L.vre(vb), K.imag());
    J(rim, L.vim(vb), K.real());
    const cd z = wbar(eb) * K;
    r[L.vre(vb)] += z.real();
    r[L.vim(vb)] -= z.imag();
    J(L.vre(vb), L.lam(L.eq_kcl_re(eb)), K.real());
    J(L.vre(vb), L.lam(L.eq_kcl_im(eb)), K.imag());
    J(L.vim(vb), L.lam(L.eq_kcl_re(eb)), -K.imag());
    J(L.vim(vb), L.lam(L.eq_kcl_im(eb)), K.real());
  }

  // dI = K dVbar (I anti-holomorphic, e.g. constant-power injections).
  void gV_anti(int eb, int vb, cd K) {
    const int rre = L.row_eq(L.eq_kcl_re(eb)), rim = L.row_eq(L.eq_kcl_im(eb));
    J(rre, L.vre(vb), K.real());
    J(rre, L.vim(vb), K.imag());
    J(rim, L.vre(vb), K.imag());
    J(rim, L.vim(vb), -K.real());
    const cd z = wbar(eb) * K;
    r[L.vre(vb)] += z.real();
    r[L.vim(vb)] += z.imag();
    J(L.vre(vb), L.lam(L.eq_kcl_re(eb)), K.real());
    J(L.vre(vb), L.lam(L.eq_kcl_im(eb)), K.imag());
    J(L.vim(vb), L.lam(L.eq_kcl_re(eb)), K.imag());
    J(L.vim(vb), L.lam(L.eq_kcl_im(eb)), -K.real());
  }

  // dI = dIdp * dp for a real parameter column (P, Q or an adjustment var).
  void g_param(int eb, int col, cd dIdp) {
    J(L.row_eq(L.eq_kcl_re(eb)), col, dIdp.real());
    J(L.row_eq(L.eq_kcl_im(eb)), col, dIdp.imag());
    const cd z = wbar(eb) * dIdp;
    r[col] += z.real();
    J(col, L.lam(L.eq_kcl_re(eb)), dIdp.real());
    J(col, L.lam(L.eq_kcl_im(eb)), dIdp.imag());
  }

  // --- lambda-weighted Hessian blocks (stationarity-row Jacobian) ------

  // d2L over (vre, vim) of one bus from Z = wbar * d2I/dVbar2.
  void H_vv_anti(int vb, cd Z) {
    if (!want_jac) return;
    const int re = L.vre(vb), im = L.vim(vb);
    J(re, re, Z.real());
    J(re, im, Z.imag());
    J(im, re, Z.imag());
    J(im, im, -Z.real());
  }

  // Cross parameter x voltage, holomorphic current: Z = wbar * d2I/dp dV.
  void H_pV_holo(int col, int vb, cd Z) {
    if (!want_jac) return;
    J(col, L.vre(vb), Z.real());
    J(col, L.vim(vb), -Z.imag());
    J(L.vre(vb), col, Z.real());
    J(L.vim(vb), col, -Z.imag());
  }

  // Cross parameter x voltage, anti-holomorphic current.
  void H_pV_anti(int col, int vb, cd Z) {
    if (!want_jac) return;
    J(col, L.vre(vb), Z.real());
    J(col, L.vim(vb), Z.imag());
    J(L.vre(vb), col, Z.real());
    J(L.vim(vb), col, Z.imag());
  }

  void H_pp(int c1, int c2, double v) {
    if (!want_jac) return;
    J(c1, c2, v);
    if (c1 != c2) J(c2, c1, v);
  }

  // --- inequality machinery -------------------------------------------

  // Registers dh = grad over (vre, vim) of bus vb, as grad_holo(G).
  void h_V_holo(int k, int vb, cd G, double mu_k) {
    J(L.row_sdef(k), L.vre(vb), G.real());
    J(L.row_sdef(k), L.vim(vb), -G.imag());
    r[L.vre(vb)] += mu_k * G.real();
    r[L.vim(vb)] -= mu_k * G.imag();
    J(L.vre(vb), L.mu(k), G.real());
    J(L.vim(vb), L.mu(k), -G.imag());
  }

  void h_param(int k, int col, double g, double mu_k) {
    J(L.row_sdef(k), col, g);
    r[col] += mu_k * g;
    J(col, L.mu(k), g);
  }

  // mu-weighted Hessian block of a quadratic-in-V inequality:
  // d2h = 2 Re(conj(P dVx) * (Q dVy)) summed over ordered coefficient pairs.
  void H_flow_vv(int bx, int by, cd P, cd Q, double mu_k) {
    if (!want_jac) return;
    const cd z = 2.0 * std::conj(P) * Q * mu_k;
    J(L.vre(bx), L.vre(by), z.real());
    J(L.vre(bx), L.vim(by), -z.imag());
    J(L.vim(bx), L.vre(by), z.imag());
    J(L.vim(bx), L.vim(by), z.real());
  }

  // Finalize one inequality: slack definition and complementarity rows.
  void h_close(int k, double hval) {
    const double mu_k = th[L.mu(k)], s_k = th[L.s(k)];
    r[L.row_sdef(k)] = hval + s_k;
    J(L.row_sdef(k), L.s(k), 1.0);
    r[L.row_comp(k)] = -mu_k * s_k + eps;
    J(L.row_comp(k), L.mu(k), -s_k);
    J(L.row_comp(k), L.s(k), -mu_k);
  }

  // --- element stamps ---------------------------------------------------

  void do_generators() {
    for (int g = 0; g < L.ng; ++g) {
      const NetGen& gen = net.gens[g];
      const int b = gen.bus;
      const double P = th[L.pg(g)], Q = th[L.qg(g)];
      const cd Vb = V(b);
      const cd Vbar = std::conj(Vb);
      const cd S(P, -Q);  // P - jQ
      const cd G = -S / Vbar;  // current drawn (negative injection)
      Ibus[b] += G;
      gV_anti(b, b, S / (Vbar * Vbar));
      g_param(b, L.pg(g), -1.0 / Vbar);
      g_param(b, L.qg(g), cd(0, 1) / Vbar);
      const cd w = wbar(b);
      H_vv_anti(b, w * (-2.0 * S / (Vbar * Vbar * Vbar)));
      H_pV_anti(L.pg(g), b, w / (Vbar * Vbar));
      H_pV_anti(L.qg(g), b, w * cd(0, -1) / (Vbar * Vbar));

      // objective
      r[L.pg(g)] += gen.c1i + 2.0 * gen.c2i * P;
      J(L.pg(g), L.pg(g), 2.0 * gen.c2i);

      // box inequalities
      int k = L.iq_phi(g);
      h_param(k, L.pg(g), 1.0, th[L.mu(k)]);
      h_close(k, P - sp.phi[g]);
      k = L.iq_plo(g);
      h_param(k, L.pg(g), -1.0, th[L.mu(k)]);
      h_close(k, sp.plo[g] - P);
      k = L.iq_qhi(g);
      h_param(k, L.qg(g), 1.0, th[L.mu(k)]);
      h_close(k, Q - sp.qhi[g]);
      k = L.iq_qlo(g);
      h_param(k, L.qg(g), -1.0, th[L.mu(k)]);
      h_close(k, sp.qlo[g] - Q);
    }
  }

  void do_loads() {
    for (const NetLoad& ld : net.loads) {
      const int b = ld.bus;
      const cd Sbar(sp.load_factor * ld.p, -sp.load_factor * ld.q);
      const cd Vbar = std::conj(V(b));
      Ibus[b] += Sbar / Vbar;
      gV_anti(b, b, -Sbar / (Vbar * Vbar));
      H_vv_anti(b, wbar(b) * (2.0 * Sbar / (Vbar * Vbar * Vbar)));
    }
  }

  void do_fixed_shunts() {
    for (const NetFixedShunt& sh : net.fshunts) {
      const cd y(sh.g, sh.b);
      Ibus[sh.bus] += y * V(sh.bus);
      gV_holo(sh.bus, sh.bus, y);
    }
  }

  void do_shunt_controls() {
    for (int i = 0; i < net.n_d(); ++i) {
      const DiscreteControl& c = net.controls[i];
      if (c.kind != ControlKind::ShuntSusceptancePu) continue;
      const int b = c.element;
      const double B = sp.control_value(i, th);
      const cd jB(0, B);
      Ibus[b] += jB * V(b);
      gV_holo(b, b, jB);
      if (sp.stage == 1 && c.var >= 0) {
        const int col = L.dc(c.var);
        g_param(b, col, cd(0, 1) * V(b));
        H_pV_holo(col, b, wbar(b) * cd(0, 1));
      }
    }
  }

  void do_shorting() {
    if (sp.g_ref > 0) {
      for (int b = 0; b < L.nb; ++b) {
        Ibus[b] += sp.g_ref * (V(b) - cd(1, 0));
        gV_holo(b, b, sp.g_ref);
      }
    }
    if (sp.g_par > 0) {
      for (const NetBranch& br : net.branches) {
        const cd d = V(br.from) - V(br.to);
        Ibus[br.from] += sp.g_par * d;
        Ibus[br.to] -= sp.g_par * d;
        gV_holo(br.from, br.from, sp.g_par);
        gV_holo(br.from, br.to, -sp.g_par);
        gV_holo(br.to, br.to, sp.g_par);
        gV_holo(br.to, br.from, -sp.g_par);
      }
    }
  }

  void do_slack_injections() {
    for (int b = 0; b < L.nb; ++b) {
      const double ure = th[L.ure(b)], uim = th[L.uim(b)];
      Ibus[b] -= sp.slack_coef * cd(ure, uim);
      // KCL columns only; the stationarity rows below are the nu-scaled form
      // 2*k_slack*u - lambda, which stays nonsingular at nu = 0.
      J(L.row_eq(L.eq_kcl_re(b)), L.ure(b), -sp.slack_coef);
      J(L.row_eq(L.eq_kcl_im(b)), L.uim(b), -sp.slack_coef);
      r[L.ure(b)] = 2.0 * sp.k_slack * ure - th[L.lam(L.eq_kcl_re(b))];
      r[L.uim(b)] = 2.0 * sp.k_slack * uim - th[L.lam(L.eq_kcl_im(b))];
      J(L.ure(b), L.ure(b), 2.0 * sp.k_slack);
      J(L.uim(b), L.uim(b), 2.0 * sp.k_slack);
      J(L.ure(b), L.lam(L.eq_kcl_re(b)), -1.0);
      J(L.uim(b), L.lam(L.eq_kcl_im(b)), -1.0);
    }
  }

  void do_branches() {
    for (const NetBranch& br : net.branches) {
      const int f = br.from, t = br.to;
      const double tau =
          br.tap_ctrl >= 0 ? sp.control_value(br.tap_ctrl, th) : br.tau0;
      const double phi =
          br.phase_ctrl >= 0 ? sp.control_value(br.phase_ctrl, th) : br.phi0;
      const BranchY Y = branch_admittance(br, tau, phi);
      const cd Vf = V(f), Vt = V(t);
      const cd If = Y.A * Vf + Y.B * Vt;
      const cd It = Y.C * Vf + Y.D * Vt;
      Ibus[f] += If;
      Ibus[t] += It;
      gV_holo(f, f, Y.A);
      gV_holo(f, t, Y.B);
      gV_holo(t, f, Y.C);
      gV_holo(t, t, Y.D);

      const bool tap_var = sp.stage == 1 && br.tap_ctrl >= 0 &&
                           net.controls[br.tap_ctrl].var >= 0;
      const bool phase_var = sp.stage == 1 && br.phase_ctrl >= 0 &&
                             net.controls[br.phase_ctrl].var >= 0;
      const int ct = tap_var ? L.dc(net.controls[br.tap_ctrl].var) : -1;
      const int cp = phase_var ? L.dc(net.controls[br.phase_ctrl].var) : -1;
      const cd wf = wbar(f), wt = wbar(t);

      const cd Iftau = Y.At * Vf + Y.Bt * Vt, Ittau = Y.Ct * Vf;
      const cd Ifphi = Y.Bp * Vt, Itphi = Y.Cp * Vf;
      if (tap_var) {
        g_param(f, ct, Iftau);
        g_param(t, ct, Ittau);
        H_pV_holo(ct, f, wf * Y.At + wt * Y.Ct);
        H_pV_holo(ct, t, wf * Y.Bt);
        const cd dtt = wf * (Y.Att * Vf + Y.Btt * Vt) + wt * (Y.Ctt * Vf);
        H_pp(ct, ct, dtt.real());
      }
      if (phase_var) {
        g_param(f, cp, Ifphi);
        g_param(t, cp, Itphi);
        H_pV_holo(cp, f, wt * Y.Cp);
        H_pV_holo(cp, t, wf * Y.Bp);
        const cd dpp = wf * (Y.Bpp * Vt) + wt * (Y.Cpp * Vf);
        H_pp(cp, cp, dpp.real());
      }
      if (tap_var && phase_var) {
        const cd dtp = wf * (Y.Btp * Vt) + wt * (Y.Ctp * Vf);
        H_pp(ct, cp, dtp.real());
      }

      if (br.rate_slot >= 0) {
        flow_limit(L.iq_flow_from(br.rate_slot), br, If, Y.A, Y.B, Iftau, Ifphi,
                   Y.Att * Vf + Y.Btt * Vt, Y.Btp * Vt, Y.Bpp * Vt, Y.At, Y.Bt,
                   cd(0, 0), Y.Bp, f, t, ct, cp);
        flow_limit(L.iq_flow_to(br.rate_slot), br, It, Y.C, Y.D, Ittau, Itphi,
                   Y.Ctt * Vf, Y.Ctp * Vf, Y.Cpp * Vf, Y.Ct, cd(0, 0), Y.Cp,
                   cd(0, 0), f, t, ct, cp);
      }
    }
  }

  // h = |I|^2 - imax^2 with I = P*Vf + Q*Vt. Ptau/Qtau etc. are coefficient
  // derivatives; Itau/Iphi/Itautau/Itauphi/Iphiphi are current derivatives.
  void flow_limit(int k, const NetBranch& br, cd I, cd P, cd Q, cd Itau, cd Iphi,
                  cd Itautau, cd Itauphi, cd Iphiphi, cd Ptau, cd Qtau, cd Pphi,
                  cd Qphi, int f, int t, int ct, int cp) {
    const double mu_k = th[L.mu(k)];
    const cd Ic = std::conj(I);
    h_V_holo(k, f, 2.0 * Ic * P, mu_k);
    h_V_holo(k, t, 2.0 * Ic * Q, mu_k);
    H_flow_vv(f, f, P, P, mu_k);
    H_flow_vv(f, t, P, Q, mu_k);
    H_flow_vv(t, f, Q, P, mu_k);
    H_flow_vv(t, t, Q, Q, mu_k);
    if (ct >= 0) {
      h_param(k, ct, 2.0 * (Ic * Itau).real(), mu_k);
      // d2h/dtau dV and d2h/dtau2
      const cd zf = 2.0 * (std::conj(Itau) * P + Ic * Ptau) * mu_k;
      const cd zt = 2.0 * (std::conj(Itau) * Q + Ic * Qtau) * mu_k;
      if (want_jac) {
        J(ct, L.vre(f), zf.real());
        J(ct, L.vim(f), -zf.imag());
        J(L.vre(f), ct, zf.real());
        J(L.vim(f), ct, -zf.imag());
        J(ct, L.vre(t), zt.real());
        J(ct, L.vim(t), -zt.imag());
        J(L.vre(t), ct, zt.real());
        J(L.vim(t), ct, -zt.imag());
      }
      const double htt = 2.0 * (std::norm(Itau) + (Ic * Itautau).real());
      H_pp(ct, ct, mu_k * htt);
    }
    if (cp >= 0) {
      h_param(k, cp, 2.0 * (Ic * Iphi).real(), mu_k);
      const cd zf = 2.0 * (std::conj(Iphi) * P + Ic * Pphi) * mu_k;
      const cd zt = 2.0 * (std::conj(Iphi) * Q + Ic * Qphi) * mu_k;
      if (want_jac) {
        J(cp, L.vre(f), zf.real());
        J(cp, L.vim(f), -zf.imag());
        J(L.vre(f), cp, zf.real());
        J(L.vim(f), cp, -zf.imag());
        J(cp, L.vre(t), zt.real());
        J(cp, L.vim(t), -zt.imag());
        J(L.vre(t), cp, zt.real());
        J(L.vim(t), cp, -zt.imag());
      }
      const double hpp = 2.0 * (std::norm(Iphi) + (Ic * Iphiphi).real());
      H_pp(cp, cp, mu_k * hpp);
    }
    if (ct >= 0 && cp >= 0) {
      const double htp =
          2.0 * ((std::conj(Iphi) * Itau).real() + (Ic * Itauphi).real());
      H_pp(ct, cp, mu_k * htp);
    }
    h_close(k, std::norm(I) - br.i_max * br.i_max);
  }

  void do_voltage_bounds() {
    for (int b = 0; b < L.nb; ++b) {
      const double vre = th[L.vre(b)], vim = th[L.vim(b)];
      const double vmag2 = vre * vre + vim * vim;
      int k = L.iq_vhi(b);
      double mu_k = th[L.mu(k)];
      h_param(k, L.vre(b), 2.0 * vre, mu_k);
      h_param(k, L.vim(b), 2.0 * vim, mu_k);
      H_pp(L.vre(b), L.vre(b), 2.0 * mu_k);
      H_pp(L.vim(b), L.vim(b), 2.0 * mu_k);
      h_close(k, vmag2 - net.buses[b].vmax * net.buses[b].vmax);

      k = L.iq_vlo(b);
      mu_k = th[L.mu(k)];
      h_param(k, L.vre(b), -2.0 * vre, mu_k);
      h_param(k, L.vim(b), -2.0 * vim, mu_k);
      H_pp(L.vre(b), L.vre(b), -2.0 * mu_k);
      H_pp(L.vim(b), L.vim(b), -2.0 * mu_k);
      h_close(k, net.buses[b].vmin * net.buses[b].vmin - vmag2);
    }
  }

  void do_dc_bounds_and_penalty() {
    if (sp.stage != 1) return;
    for (int i = 0; i < net.n_d(); ++i) {
      const DiscreteControl& c = net.controls[i];
      if (c.var < 0) continue;
      const int col = L.dc(c.var);
      const double dd = th[col];
      const double a = sp.k_adj_eff / (c.range() * c.range());
      r[col] += 2.0 * a * dd;
      J(col, col, 2.0 * a);

      int k = L.iq_dchi(c.var);
      h_param(k, col, 1.0, th[L.mu(k)]);
      h_close(k, dd - (c.upper - sp.d_hat[i]));
      k = L.iq_dclo(c.var);
      h_param(k, col, -1.0, th[L.mu(k)]);
      h_close(k, (c.lower - sp.d_hat[i]) - dd);
    }
  }

  void do_pins() {
    for (int p = 0; p < L.npin; ++p) {
      const int b = net.pin_buses[p];
      const int e = L.eq_pin(p);
      r[L.row_eq(e)] = th[L.vim(b)];
      J(L.row_eq(e), L.vim(b), 1.0);
      r[L.vim(b)] += th[L.lam(e)];
      J(L.vim(b), L.lam(e), 1.0);
    }
  }

  void finalize_kcl() {
    for (int b = 0; b < L.nb; ++b) {
      r[L.row_eq(L.eq_kcl_re(b))] = Ibus[b].real();
      r[L.row_eq(L.eq_kcl_im(b))] = Ibus[b].imag();
    }
  }

  void run() {
    do_generators();
    do_loads();
    do_fixed_shunts();
    do_shunt_controls();
    do_shorting();
    do_branches();
    do_slack_injections();
    do_voltage_bounds();
    do_dc_bounds_and_penalty();
    do_pins();
    finalize_kcl();
    if (sp.stage == 2 && sp.residual_R.size() == L.ntot) r -= sp.nu * sp.residual_R;
    for (int i = 0; i < L.ntot; ++i)
      if (!std::isfinite(r[i])) throw AssemblyError(i, "non-finite KKT residual entry");
  }
};

}  // namespace

KktSystem assemble_kkt(const SubProblem& sp, const Eigen::VectorXd& theta) {
  Assembler a(sp, theta, sp.eps, true);
  a.run();
  KktSystem out;
  out.F = std::move(a.r);
  out.J.resize(sp.layout.ntot, sp.layout.ntot);
  out.J.setFromTriplets(a.T.begin(), a.T.end());
  out.norm_inf = out.F.size() ? out.F.cwiseAbs().maxCoeff() : 0.0;
  return out;
}

Eigen::VectorXd assemble_residual(const SubProblem& sp, const Eigen::VectorXd& theta,
                                  double eps_override) {
  Assembler a(sp, theta, eps_override >= 0 ? eps_override : sp.eps, false);
  a.run();
  return std::move(a.r);
}

Eigen::VectorXd ineq_values(const SubProblem& sp, const Eigen::VectorXd& theta) {
  const Layout& L = sp.layout;
  const Network& net = *sp.net;
  Eigen::VectorXd h(L.ni);
  for (int b = 0; b < L.nb; ++b) {
    const double m2 = theta[L.vre(b)] * theta[L.vre(b)] + theta[L.vim(b)] * theta[L.vim(b)];
    h[L.iq_vhi(b)] = m2 - net.buses[b].vmax * net.buses[b].vmax;
    h[L.iq_vlo(b)] = net.buses[b].vmin * net.buses[b].vmin - m2;
  }
  for (int g = 0; g < L.ng; ++g) {
    h[L.iq_phi(g)] = theta[L.pg(g)] - sp.phi[g];
    h[L.iq_plo(g)] = sp.plo[g] - theta[L.pg(g)];
    h[L.iq_qhi(g)] = theta[L.qg(g)] - sp.qhi[g];
    h[L.iq_qlo(g)] = sp.qlo[g] - theta[L.qg(g)];
  }
  if (sp.stage == 1) {
    for (int i = 0; i < net.n_d(); ++i) {
      const DiscreteControl& c = net.controls[i];
      if (c.var < 0) continue;
      const double dd = theta[L.dc(c.var)];
      h[L.iq_dchi(c.var)] = dd - (c.upper - sp.d_hat[i]);
      h[L.iq_dclo(c.var)] = (c.lower - sp.d_hat[i]) - dd;
    }
  }
  for (size_t rix = 0; rix < net.rated_branches.size(); ++rix) {
    const NetBranch& br = net.branches[net.rated_branches[rix]];
    const double tau = br.tap_ctrl >= 0 ? sp.control_value(br.tap_ctrl, theta) : br.tau0;
    const double phi = br.phase_ctrl >= 0 ? sp.control_value(br.phase_ctrl, theta) : br.phi0;
    const cd vf(theta[L.vre(br.from)], theta[L.vim(br.from)]);
    const cd vt(theta[L.vre(br.to)], theta[L.vim(br.to)]);
    auto [If, It] = branch_current(br, vf, vt, tau, phi);
    const double lim = br.i_max * br.i_max;
    h[L.iq_flow_from(static_cast<int>(rix))] = std::norm(If) - lim;
    h[L.iq_flow_to(static_cast<int>(rix))] = std::norm(It) - lim;
  }
  return h;
}

double objective_internal(const Network& net, const Layout& L,
                          const Eigen::VectorXd& theta) {
  double f = 0;
  for (int g = 0; g < L.ng; ++g) {
    const double P = theta[L.pg(g)];
    f += net.gens[g].c0i + net.gens[g].c1i * P + net.gens[g].c2i * P * P;
  }
  return f;
}

double objective_dollars(const Network& net, const Layout& L,
                         const Eigen::VectorXd& theta) {
  return objective_internal(net, L, theta) * net.base_mva;
}

}  // namespace hopf
