// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#include "linsolve.hpp"

#include <Eigen/SparseLU>

namespace hopf {

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

std::optional<Eigen::VectorXd> try_solve(const Eigen::SparseMatrix<double>& J,
                                         const Eigen::VectorXd& rhs) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(J);
  lu.factorize(J);
  if (lu.info() != Eigen::Success) return std::nullopt;
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !finite(x)) return std::nullopt;
  return x;
}

Eigen::SparseMatrix<double> shifted(const Eigen::SparseMatrix<double>& J,
                                    const Layout& L, double delta) {
  // Quasi-definite shift: +delta on x and s diagonals, -delta on lambda/mu.
  Eigen::SparseMatrix<double> D(J.rows(), J.cols());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(J.rows());
  for (int i = 0; i < L.nx; ++i) t.emplace_back(i, i, delta);
  for (int i = L.off_lam; i < L.off_lam + L.neq + L.ni; ++i) t.emplace_back(i, i, -delta);
  for (int i = L.off_s; i < L.off_s + L.ni; ++i) t.emplace_back(i, i, delta);
  D.setFromTriplets(t.begin(), t.end());
  return J + D;
}

}  // namespace

std::optional<Eigen::VectorXd> solve_kkt_newton(const Eigen::SparseMatrix<double>& J,
                                                const Eigen::VectorXd& rhs,
                                                const Layout& layout, double delta) {
  if (auto x = try_solve(J, rhs)) return x;
  if (auto x = try_solve(shifted(J, layout, delta), rhs)) return x;
  return try_solve(shifted(J, layout, delta * 100.0), rhs);
}

}  // namespace hopf
