#pragma once

#include <cmath>

#include "qmem/params.hpp"

namespace qmem::test {

// Canonical operating point: C = 100, pump rate 0.074, gamma0 = 1e-3,
// kappa = 10, tau = 0.01 (T = 0.2), N = 100, all in units of gamma = 1.
inline SystemParams eit_params(double coop = 100.0, double gamma_pump = 0.074,
                               double gamma0 = 1e-3, double kappa = 10.0,
                               double tau = 0.01, double n_atoms = 100.0) {
  SystemParams p;
  p.gamma = 1.0;
  p.gamma0 = gamma0;
  p.kappa = kappa;
  p.tau = tau;
  p.n_atoms = n_atoms;
  p.g = std::sqrt(2.0 * coop * kappa * p.gamma * tau / n_atoms);
  p.omega_rabi = std::sqrt(p.gamma * gamma_pump * (1.0 + 2.0 * coop));
  return p;
}

inline SystemParams raman_params(double delta, double coop = 100.0,
                                 double gamma_pump = 0.074, double gamma0 = 1e-3,
                                 double kappa = 10.0, double tau = 0.01,
                                 double n_atoms = 100.0) {
  SystemParams p = eit_params(coop, gamma_pump, gamma0, kappa, tau, n_atoms);
  p.omega_rabi = std::abs(delta) * std::sqrt(gamma_pump / ((1.0 + 2.0 * coop) * p.gamma));
  p.delta1 = delta;
  p.delta2 = delta;
  return p;
}

}  // namespace qmem::test
