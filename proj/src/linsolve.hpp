// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>
#include <optional>

#include "network.hpp"

namespace hopf {

/// Sparse direct solve of the (unsymmetric) KKT Newton system. On a failed
/// factorization the diagonal is shifted by +delta on primal/slack blocks and
/// -delta on dual blocks, retried once more with delta*100. Returns nullopt
/// when all attempts fail.
std::optional<Eigen::VectorXd> solve_kkt_newton(const Eigen::SparseMatrix<double>& J,
                                                const Eigen::VectorXd& rhs,
                                                const Layout& layout, double delta);

}  // namespace hopf
