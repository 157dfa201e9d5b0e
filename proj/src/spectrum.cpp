#include "qmem/spectrum.hpp"

#include <cmath>
#include <complex>

namespace qmem {

namespace {

struct ObservableRows {
  Eigen::RowVectorXd state;  // weight on the state vector
  Eigen::RowVectorXd input;  // direct feedthrough on the input quadratures
  double scale = 1.0;        // final normalization of the spectrum
};

ObservableRows observable_rows(const LinearSystem& sys, const Observable& obs) {
  ObservableRows rows;
  rows.state = Eigen::RowVectorXd::Zero(sys.dim());
  rows.input = Eigen::RowVectorXd::Zero(sys.n_inputs());
  const double c = std::cos(obs.angle), s = std::sin(obs.angle);
  if (obs.cavity < 0 || obs.cavity >= sys.n_cavities)
    throw ConfigError("observable cavity index out of range");

  if (obs.kind == Observable::Kind::SpinQuadrature) {
    const SystemParams& p = sys.params[obs.cavity];
    if (p.n_atoms <= 0)
      throw ConfigError("spin observable requires atoms in the cavity");
    const int ob = obs.cavity * basis::per_cavity;
    rows.state(ob + basis::x_pr) = c;
    rows.state(ob + basis::y_pr) = s;
    // coherent-state Lorentzian peak 2N/gamma_eff -> 1
    const DerivedRates rates = derive_rates(p, sys.modes[obs.cavity]);
    if (rates.gamma_eff <= 0)
      throw ConfigError("spin spectrum normalization undefined for gamma_eff = 0");
    rows.scale = rates.gamma_eff / (2.0 * p.n_atoms);
  } else {
    const int orow = 2 * obs.cavity;
    rows.state = c * sys.output_rows.row(orow) + s * sys.output_rows.row(orow + 1);
    rows.input = c * sys.feedthrough.row(orow) + s * sys.feedthrough.row(orow + 1);
  }
  return rows;
}

double spectrum_point(const LinearSystem& sys, const ObservableRows& rows, double omega) {
  const int d = sys.dim();
  const std::complex<double> iw(0.0, omega);
  Eigen::MatrixXcd a = iw * Eigen::MatrixXcd::Identity(d, d) - sys.drift.cast<std::complex<double>>();
  // row * (i w I - M)^{-1}  via solving the adjoint system
  Eigen::VectorXcd g =
      a.transpose().partialPivLu().solve(rows.state.transpose().cast<std::complex<double>>().eval());
  Eigen::RowVectorXcd gt = g.transpose();
  Eigen::RowVectorXcd h =
      gt * sys.input_map.cast<std::complex<double>>() + rows.input.cast<std::complex<double>>();
  const std::complex<double> s_in =
      h * sys.input_spectrum.cast<std::complex<double>>() * h.adjoint();
  const std::complex<double> s_at =
      gt * sys.langevin_diffusion.cast<std::complex<double>>() * gt.adjoint();
  return rows.scale * (s_in.real() + s_at.real());
}

}  // namespace

double spectrum_value(const LinearSystem& sys, const Observable& obs, double omega) {
  if (!std::isfinite(omega)) throw ConfigError("spectrum frequency must be finite");
  return spectrum_point(sys, observable_rows(sys, obs), omega);
}

Spectrum noise_spectrum(const LinearSystem& sys, const Observable& obs,
                        const std::vector<double>& omega_grid) {
  if (omega_grid.empty()) throw ConfigError("frequency grid must be nonempty");
  for (double w : omega_grid)
    if (!std::isfinite(w)) throw ConfigError("frequency grid must be finite");
  if (!sys.stable()) throw NumericError("noise spectrum requires a stable drift matrix");

  const ObservableRows rows = observable_rows(sys, obs);
  Spectrum sp;
  sp.omega = omega_grid;
  sp.value.reserve(omega_grid.size());
  for (double w : omega_grid) sp.value.push_back(spectrum_point(sys, rows, w));
  return sp;
}

double spectrum_fwhm(const LinearSystem& sys, const Observable& obs) {
  if (!sys.stable()) throw NumericError("spectrum width requires a stable drift matrix");
  const ObservableRows rows = observable_rows(sys, obs);
  const double peak = spectrum_point(sys, rows, 0.0);
  // asymptote taken far above every system pole
  const double w_far = 1e4 * sys.max_eigen_modulus();
  const double floor = spectrum_point(sys, rows, w_far);
  const double half = floor + 0.5 * (peak - floor);
  if (!(peak > floor))
    throw NumericError("spectrum has no peak at zero frequency");

  double lo = 0, hi = w_far;
  // bracket the half crossing before bisecting
  double w = sys.max_eigen_modulus() * 1e-6;
  while (w < w_far && spectrum_point(sys, rows, w) > half) {
    lo = w;
    w *= 2;
  }
  hi = w;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (spectrum_point(sys, rows, mid) > half)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return lo + hi;  // full width = 2 * half width
}

}  // namespace qmem
