#pragma once

#include <vector>

#include "qmem/linear_system.hpp"

namespace qmem {

// Quadrature selector for noise spectra: a transverse spin component J_theta
// or a reflected output quadrature X_eps of one cavity.
struct Observable {
  enum class Kind { SpinQuadrature, OutputQuadrature };
  Kind kind = Kind::SpinQuadrature;
  double angle = 0;
  int cavity = 0;

  static Observable spin(double theta, int cavity = 0) {
    return {Kind::SpinQuadrature, theta, cavity};
  }
  static Observable output(double epsilon, int cavity = 0) {
    return {Kind::OutputQuadrature, epsilon, cavity};
  }
};

struct Spectrum {
  std::vector<double> omega;
  std::vector<double> value;
};

// Stationary noise spectrum from the frequency response of the stable drift.
// Spin spectra are normalized so the Lorentzian peak of a coherent spin state
// is 1; output spectra are shot-noise normalized (flat 1 for vacuum).
Spectrum noise_spectrum(const LinearSystem& sys, const Observable& obs,
                        const std::vector<double>& omega_grid);

double spectrum_value(const LinearSystem& sys, const Observable& obs, double omega);

// Full width at half maximum of a Lorentzian-shaped spectrum, found by
// bisection between the peak at omega = 0 and the high-frequency asymptote.
double spectrum_fwhm(const LinearSystem& sys, const Observable& obs);

}  // namespace qmem
