#pragma once

#include <Eigen/Dense>

#include "qmem/linear_system.hpp"

namespace qmem {

struct SpinVariance {
  double theta_min = 0;  // minimizing angle in [0, pi)
  double var_min = 0;    // minimum variance normalized by |<J_z>|/2
};

// Minimum normalized transverse spin variance and its angle. cov_xy holds
// <dJ_x^2>, <dJ_y^2>, <dJ_x dJ_y> (symmetrized); jz_mean is <J_z>. The result
// is the smaller eigenvalue of cov_xy over |jz_mean|/2. Isotropic covariance
// reports theta = 0.
SpinVariance min_spin_variance(const Eigen::Matrix2d& cov_xy, double jz_mean);

// Spin covariance block of a full-state covariance, in J units (J = X_Pr / 2).
Eigen::Matrix2d spin_cov_from_state(const CovarianceMatrix& cov, int cavity = 0);

// Normalized variance of J_theta = J_x cos(theta) + J_y sin(theta).
double normalized_spin_variance(const CovarianceMatrix& cov, double theta, int cavity = 0);

// Minimum normalized spin variance of one cavity of a full-state covariance.
SpinVariance min_spin_variance_of_state(const CovarianceMatrix& cov, int cavity = 0);

}  // namespace qmem
