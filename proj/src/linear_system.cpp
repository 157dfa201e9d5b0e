#include "qmem/linear_system.hpp"

#include <cmath>
#include <complex>

namespace qmem {

namespace basis {

std::vector<std::string> labels(int n_cavities) {
  static const char* names[per_cavity] = {"x_pr", "y_pr", "x_p2", "y_p2", "x_a", "y_a"};
  std::vector<std::string> out;
  for (int c = 0; c < n_cavities; ++c) {
    const std::string suffix = n_cavities > 1 ? std::to_string(c + 1) : std::string();
    for (const char* n : names) out.push_back(n + suffix);
  }
  return out;
}

}  // namespace basis

Eigen::MatrixXd LinearSystem::total_diffusion() const {
  return langevin_diffusion + input_map * input_spectrum * input_map.transpose();
}

double LinearSystem::max_eigen_modulus() const {
  return Eigen::EigenSolver<Eigen::MatrixXd>(drift, false).eigenvalues().cwiseAbs().maxCoeff();
}

double LinearSystem::max_eigen_real() const {
  return Eigen::EigenSolver<Eigen::MatrixXd>(drift, false).eigenvalues().real().maxCoeff();
}

namespace {

// Detunings entering the drift. EIT is fully resonant. For Raman the bare
// two-photon and cavity detunings are chosen to cancel the light shift of the
// ground-state coherence and the atom-pulled cavity resonance, which is what
// "effective detunings zero" means at the level of the full dynamics.
struct DriftDetunings {
  double two_photon = 0;  // on the ground-state coherence
  double dipole = 0;      // on the optical dipole
  double cavity = 0;      // on the intracavity field
};

DriftDetunings compensated_detunings(const SystemParams& p, const InteractionMode& mode) {
  DriftDetunings d;
  if (mode.kind == Mode::EIT) return d;
  const double delta = mode.detuning;
  const double gg = p.g * p.g * p.n_atoms;  // g^2 N
  d.dipole = delta;
  d.cavity = gg * delta / (p.tau * (p.gamma * p.gamma + delta * delta));
  const std::complex<double> i(0, 1);
  const std::complex<double> cav(p.kappa, d.cavity);
  const std::complex<double> dip(p.gamma, delta);
  const std::complex<double> z =
      p.omega_rabi * p.omega_rabi * cav / (dip * cav + gg / p.tau);
  d.two_photon = z.imag();
  return d;
}

// Writes one cavity block (offset ob in the state, oi in the inputs).
void fill_cavity_block(Eigen::MatrixXd& m, Eigen::MatrixXd& b, Eigen::MatrixXd& dl,
                       int ob, int oi, const SystemParams& p, const DriftDetunings& det,
                       double omega_rabi) {
  using namespace basis;
  const double gn = p.g * p.n_atoms;
  const double gt = p.g / p.tau;
  const double in_coupling = std::sqrt(2.0 * p.kappa / p.tau);

  // ground-state coherence
  m(ob + x_pr, ob + x_pr) = -p.gamma0;
  m(ob + x_pr, ob + y_pr) = -det.two_photon;
  m(ob + x_pr, ob + y_p2) = -omega_rabi;
  m(ob + y_pr, ob + y_pr) = -p.gamma0;
  m(ob + y_pr, ob + x_pr) = det.two_photon;
  m(ob + y_pr, ob + x_p2) = omega_rabi;
  // optical dipole
  m(ob + x_p2, ob + x_p2) = -p.gamma;
  m(ob + x_p2, ob + y_p2) = det.dipole;
  m(ob + x_p2, ob + y_pr) = -omega_rabi;
  m(ob + x_p2, ob + y_a) = -gn;
  m(ob + y_p2, ob + y_p2) = -p.gamma;
  m(ob + y_p2, ob + x_p2) = -det.dipole;
  m(ob + y_p2, ob + x_pr) = omega_rabi;
  m(ob + y_p2, ob + x_a) = gn;
  // intracavity field
  m(ob + x_a, ob + x_a) = -p.kappa;
  m(ob + x_a, ob + y_a) = det.cavity;
  m(ob + x_a, ob + y_p2) = -gt;
  m(ob + y_a, ob + y_a) = -p.kappa;
  m(ob + y_a, ob + x_a) = -det.cavity;
  m(ob + y_a, ob + x_p2) = gt;

  b(ob + x_a, oi + 0) = in_coupling;
  b(ob + y_a, oi + 1) = in_coupling;

  // Einstein-relation diffusion at the pumped steady state: 2 gamma0 N per
  // ground-coherence quadrature, 2 gamma N per dipole quadrature. These are
  // exactly the strengths for which the coherent/vacuum state is stationary.
  dl(ob + x_pr, ob + x_pr) = 2.0 * p.gamma0 * p.n_atoms;
  dl(ob + y_pr, ob + y_pr) = 2.0 * p.gamma0 * p.n_atoms;
  dl(ob + x_p2, ob + x_p2) = 2.0 * p.gamma * p.n_atoms;
  dl(ob + y_p2, ob + y_p2) = 2.0 * p.gamma * p.n_atoms;
}

void check_stability(const LinearSystem& sys) {
  const SystemParams& p = sys.params.front();
  if (p.gamma0 > 0 || p.omega_rabi > 0) {
    if (!sys.stable())
      throw ConfigError("drift matrix is not stable for this configuration");
  }
}

}  // namespace

Eigen::Matrix2d single_input_spectrum(const InputFieldSpec& input) {
  validate_input(input);
  if (input.kind == InputKind::EprPair)
    throw ConfigError("EPR input requires a two-cavity system");
  Eigen::Matrix2d s = Eigen::Matrix2d::Identity();
  if (input.kind == InputKind::SqueezedVacuum) {
    const double c = std::cos(input.angle), sn = std::sin(input.angle);
    Eigen::Matrix2d rot;
    rot << c, -sn, sn, c;
    s = rot * Eigen::Vector2d(std::exp(-2.0 * input.r), std::exp(2.0 * input.r)).asDiagonal() *
        rot.transpose();
  }
  return s;
}

LinearSystem build_linear_system(const SystemParams& p, const InteractionMode& mode,
                                 const InputFieldSpec& input) {
  validate_params(p);
  validate_mode(p, mode);

  const int d = basis::per_cavity;
  LinearSystem sys;
  sys.drift = Eigen::MatrixXd::Zero(d, d);
  sys.input_map = Eigen::MatrixXd::Zero(d, 2);
  sys.langevin_diffusion = Eigen::MatrixXd::Zero(d, d);
  sys.input_spectrum = single_input_spectrum(input);
  sys.norm = {p.n_atoms, p.tau};
  sys.n_cavities = 1;
  sys.params = {p};
  sys.modes = {mode};

  fill_cavity_block(sys.drift, sys.input_map, sys.langevin_diffusion, 0, 0, p,
                    compensated_detunings(p, mode), p.omega_rabi);

  // Reflected output: X_out = sqrt(2 kappa tau) X_A - X_in, the unique affine
  // form consistent with the in-coupling that keeps an empty cavity unitary.
  const double oc = std::sqrt(2.0 * p.kappa * p.tau);
  sys.output_rows = Eigen::MatrixXd::Zero(2, d);
  sys.output_rows(0, basis::x_a) = oc;
  sys.output_rows(1, basis::y_a) = oc;
  sys.feedthrough = -Eigen::MatrixXd::Identity(2, 2);

  check_stability(sys);
  return sys;
}

LinearSystem build_epr_system(const SystemParams& p, const InteractionMode& mode,
                              const InputFieldSpec& input) {
  validate_params(p);
  validate_mode(p, mode);
  validate_input(input);

  const int d = 2 * basis::per_cavity;
  LinearSystem sys;
  sys.drift = Eigen::MatrixXd::Zero(d, d);
  sys.input_map = Eigen::MatrixXd::Zero(d, 4);
  sys.langevin_diffusion = Eigen::MatrixXd::Zero(d, d);
  sys.norm = {p.n_atoms, p.tau};
  sys.n_cavities = 2;
  sys.params = {p, p};
  sys.modes = {mode, mode};

  const DriftDetunings det = compensated_detunings(p, mode);
  fill_cavity_block(sys.drift, sys.input_map, sys.langevin_diffusion, 0, 0, p, det,
                    p.omega_rabi);
  fill_cavity_block(sys.drift, sys.input_map, sys.langevin_diffusion, basis::per_cavity, 2,
                    p, det, p.omega_rabi);

  if (input.kind == InputKind::EprPair) {
    // Two-mode squeezed pair with I_f = 2 exp(-2s): each mode thermal with
    // spectrum cosh(2s), cross correlations +sinh(2s) on X, -sinh(2s) on Y.
    const double s = -0.5 * std::log(input.i_f / 2.0);
    const double ch = std::cosh(2.0 * s), sh = std::sinh(2.0 * s);
    Eigen::Matrix4d sin_m = Eigen::Matrix4d::Identity() * ch;
    sin_m(0, 2) = sin_m(2, 0) = sh;
    sin_m(1, 3) = sin_m(3, 1) = -sh;
    sys.input_spectrum = sin_m;
  } else {
    // two uncorrelated copies of the same single-mode input
    const Eigen::Matrix2d s1 = single_input_spectrum(input);
    Eigen::Matrix4d sin_m = Eigen::Matrix4d::Zero();
    sin_m.block<2, 2>(0, 0) = s1;
    sin_m.block<2, 2>(2, 2) = s1;
    sys.input_spectrum = sin_m;
  }

  const double oc = std::sqrt(2.0 * p.kappa * p.tau);
  sys.output_rows = Eigen::MatrixXd::Zero(4, d);
  sys.output_rows(0, basis::x_a) = oc;
  sys.output_rows(1, basis::y_a) = oc;
  sys.output_rows(2, basis::per_cavity + basis::x_a) = oc;
  sys.output_rows(3, basis::per_cavity + basis::y_a) = oc;
  sys.feedthrough = -Eigen::MatrixXd::Identity(4, 4);

  check_stability(sys);
  return sys;
}

LinearSystem build_cascade_system(const SystemParams& p, const InteractionMode& mode,
                                  double omega_rabi_2, const InputFieldSpec& input1) {
  validate_params(p);
  validate_mode(p, mode);
  if (omega_rabi_2 < 0) omega_rabi_2 = p.omega_rabi;

  const int d = 2 * basis::per_cavity;
  const int o2 = basis::per_cavity;
  LinearSystem sys;
  sys.drift = Eigen::MatrixXd::Zero(d, d);
  sys.input_map = Eigen::MatrixXd::Zero(d, 2);
  sys.langevin_diffusion = Eigen::MatrixXd::Zero(d, d);
  sys.input_spectrum = single_input_spectrum(input1);
  sys.norm = {p.n_atoms, p.tau};
  sys.n_cavities = 2;
  SystemParams p2 = p;
  p2.omega_rabi = omega_rabi_2;
  sys.params = {p, p2};
  sys.modes = {mode, mode};

  const DriftDetunings det = compensated_detunings(p, mode);
  fill_cavity_block(sys.drift, sys.input_map, sys.langevin_diffusion, 0, 0, p, det,
                    p.omega_rabi);

  Eigen::MatrixXd b2 = Eigen::MatrixXd::Zero(d, 2);
  fill_cavity_block(sys.drift, b2, sys.langevin_diffusion, o2, 0, p2,
                    compensated_detunings(p2, mode), omega_rabi_2);

  // Cavity 2 is driven by cavity 1's reflected output: its in-coupling acts on
  // sqrt(2 kappa tau) X_A1 - X_in, giving a one-way 2 kappa block coupling and
  // an input column entering both cavities with opposite sign.
  const double oc = std::sqrt(2.0 * p.kappa * p.tau);
  sys.drift(o2 + basis::x_a, basis::x_a) = 2.0 * p.kappa;
  sys.drift(o2 + basis::y_a, basis::y_a) = 2.0 * p.kappa;
  sys.input_map -= b2;

  sys.output_rows = Eigen::MatrixXd::Zero(4, d);
  sys.output_rows(0, basis::x_a) = oc;
  sys.output_rows(1, basis::y_a) = oc;
  // cavity 2 output, relative to the field that entered cavity 1
  sys.output_rows(2, o2 + basis::x_a) = oc;
  sys.output_rows(2, basis::x_a) = -oc;
  sys.output_rows(3, o2 + basis::y_a) = oc;
  sys.output_rows(3, basis::y_a) = -oc;
  sys.feedthrough = Eigen::MatrixXd::Zero(4, 2);
  sys.feedthrough(0, 0) = -1;
  sys.feedthrough(1, 1) = -1;
  sys.feedthrough(2, 0) = 1;
  sys.feedthrough(3, 1) = 1;

  check_stability(sys);
  return sys;
}

CovarianceMatrix coherent_state(const LinearSystem& sys) {
  CovarianceMatrix cov;
  cov.v = Eigen::MatrixXd::Zero(sys.dim(), sys.dim());
  for (int c = 0; c < sys.n_cavities; ++c) {
    const int ob = c * basis::per_cavity;
    const SystemParams& p = sys.params[c];
    cov.v(ob + basis::x_pr, ob + basis::x_pr) = p.n_atoms;
    cov.v(ob + basis::y_pr, ob + basis::y_pr) = p.n_atoms;
    cov.v(ob + basis::x_p2, ob + basis::x_p2) = p.n_atoms;
    cov.v(ob + basis::y_p2, ob + basis::y_p2) = p.n_atoms;
    cov.v(ob + basis::x_a, ob + basis::x_a) = 1.0 / p.tau;
    cov.v(ob + basis::y_a, ob + basis::y_a) = 1.0 / p.tau;
  }
  cov.norm = sys.norm;
  return cov;
}

}  // namespace qmem
