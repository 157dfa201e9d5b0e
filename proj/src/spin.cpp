#include "qmem/spin.hpp"

#include <cmath>

namespace qmem {

SpinVariance min_spin_variance(const Eigen::Matrix2d& cov_xy, double jz_mean) {
  const double scale = std::abs(cov_xy(0, 0)) + std::abs(cov_xy(1, 1));
  if (std::abs(cov_xy(0, 1) - cov_xy(1, 0)) > 1e-9 * std::max(scale, 1e-300))
    throw ConfigError("spin covariance must be symmetric");
  if (jz_mean == 0)
    throw ConfigError("spin variance normalization undefined for <J_z> = 0");

  // var(theta) = m + a cos(2 theta) + b sin(2 theta)
  const double m = 0.5 * (cov_xy(0, 0) + cov_xy(1, 1));
  const double a = 0.5 * (cov_xy(0, 0) - cov_xy(1, 1));
  const double b = 0.5 * (cov_xy(0, 1) + cov_xy(1, 0));
  const double amp = std::hypot(a, b);
  if (m - amp < -1e-9 * std::max(scale, 1e-300))
    throw ConfigError("spin covariance must be positive semidefinite");

  SpinVariance out;
  const double shot = 0.5 * std::abs(jz_mean);
  out.var_min = (m - amp) / shot;
  if (amp <= 1e-12 * std::max(m, 1e-300)) {
    out.theta_min = 0;  // isotropic: angle arbitrary, report 0
  } else {
    double theta = 0.5 * (std::atan2(b, a) + M_PI);
    theta = std::fmod(theta, M_PI);
    if (theta < 0) theta += M_PI;
    out.theta_min = theta;
  }
  return out;
}

Eigen::Matrix2d spin_cov_from_state(const CovarianceMatrix& cov, int cavity) {
  const int ob = cavity * basis::per_cavity;
  return 0.25 * cov.v.block<2, 2>(ob + basis::x_pr, ob + basis::x_pr);
}

double normalized_spin_variance(const CovarianceMatrix& cov, double theta, int cavity) {
  const Eigen::Matrix2d j = spin_cov_from_state(cov, cavity);
  const Eigen::Vector2d dir(std::cos(theta), std::sin(theta));
  return dir.dot(j * dir) / (cov.norm.n_atoms / 4.0);
}

SpinVariance min_spin_variance_of_state(const CovarianceMatrix& cov, int cavity) {
  return min_spin_variance(spin_cov_from_state(cov, cavity), cov.norm.n_atoms / 2.0);
}

}  // namespace qmem
