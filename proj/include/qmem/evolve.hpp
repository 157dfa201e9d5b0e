#pragma once

#include <vector>

#include "qmem/linear_system.hpp"

namespace qmem {

// Piecewise-constant control schedule. A store phase has the control field
// off; a read phase has vacuum input.
struct ProtocolPhase {
  enum class Label { Write, Store, Read };
  Label label = Label::Write;
  double duration = 0;
  double omega_rabi = 0;
  InputFieldSpec input;
};

struct ProtocolTimeline {
  std::vector<ProtocolPhase> phases;
};

void validate_timeline(const ProtocolTimeline& timeline);

// Accuracy bound for the fixed-step integrator.
double max_timestep(const LinearSystem& sys);

struct CovarianceTrajectory {
  std::vector<double> t;
  std::vector<Eigen::MatrixXd> v;
  Normalization norm;

  CovarianceMatrix at(std::size_t i) const { return {v.at(i), t.at(i), norm}; }
  CovarianceMatrix back() const { return {v.back(), t.back(), norm}; }
};

// Integrates dV/dt = M V + V M^T + D phase by phase with classical fixed-step
// RK4, symmetrizing after every step. dt must satisfy the max_timestep bound
// of every phase; positive semidefiniteness is checked at recorded samples.
// dt <= 0 picks the largest admissible step. Samples are thinned to at most
// max_samples_per_phase points per phase (phase endpoints always recorded).
CovarianceTrajectory evolve_covariance(const std::vector<LinearSystem>& systems,
                                       const ProtocolTimeline& timeline,
                                       const CovarianceMatrix& v0, double dt = -1,
                                       int max_samples_per_phase = 1200);

// Single-phase convenience wrapper.
CovarianceTrajectory evolve_covariance(const LinearSystem& sys, double duration,
                                       const CovarianceMatrix& v0, double dt = -1,
                                       int max_samples = 1200);

}  // namespace qmem
