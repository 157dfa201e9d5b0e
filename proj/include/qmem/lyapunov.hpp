#pragma once

#include <Eigen/Dense>

#include "qmem/linear_system.hpp"

namespace qmem {

// Solves M V + V M^T + D = 0 for symmetric V by vectorization. Requires a
// Hurwitz M; the residual must satisfy |M V + V M^T + D|_F <= tol |D|_F.
Eigen::MatrixXd solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& m,
                               const Eigen::Ref<const Eigen::MatrixXd>& d,
                               double tol = 1e-10);

// Stationary covariance of a stable system under its flat-spectrum inputs.
CovarianceMatrix steady_covariance(const LinearSystem& sys);

}  // namespace qmem
