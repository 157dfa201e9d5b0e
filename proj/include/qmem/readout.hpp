#pragma once

#include <optional>

#include "qmem/linear_system.hpp"

namespace qmem {

struct MatchedFilterResult {
  double variance = 1;             // measured quadrature, filter-weighted
  double variance_orthogonal = 1;  // the conjugate quadrature
  double spin_variance_start = 1;  // normalized spin variance read out
  // (1 - variance)/(1 - spin_variance_start); absent when the spin starts coherent.
  std::optional<double> efficiency;
};

// Variance of Int_0^H h(t) X_out(t) dt / sqrt(Int h^2) with h = exp(-rate t),
// homodyning the reflected output of a read phase started from v0. Computed
// exactly by augmenting the state with one accumulator per quadrature and
// evolving the augmented covariance; the feedthrough carries the shot noise.
MatchedFilterResult matched_filter_variance(const LinearSystem& read_system,
                                            const CovarianceMatrix& v0, double filter_rate,
                                            double horizon, double epsilon = 0,
                                            double dt = -1);

// Smooth (non-delta) part of the symmetrized output autocorrelation
// <X_out(t) X_out(t')> during a read phase started from v0.
double output_autocorrelation(const LinearSystem& read_system, const CovarianceMatrix& v0,
                              double t, double t_prime, double epsilon = 0);

// Same on the uniform grid t_i = i * t_max / n; returns the (n+1) x (n+1)
// symmetric matrix of smooth parts.
Eigen::MatrixXd output_autocorrelation_grid(const LinearSystem& read_system,
                                            const CovarianceMatrix& v0, double t_max,
                                            int n, double epsilon = 0);

// Spin axis whose quadrature is retrieved on output quadrature epsilon: the
// same angle in EIT, rotated by pi/2 in Raman.
double readout_spin_axis(const InteractionMode& mode, double epsilon);

}  // namespace qmem
