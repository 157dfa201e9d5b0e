#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qmem/params.hpp"

namespace qmem {

// Real quadrature fluctuation basis, per cavity, in this fixed order.
// X_O = dO + dO^dag, Y_O = -i (dO - dO^dag) for O in {ground coherence,
// optical dipole, intracavity field}. Joint systems concatenate blocks.
namespace basis {
inline constexpr int x_pr = 0;
inline constexpr int y_pr = 1;
inline constexpr int x_p2 = 2;
inline constexpr int y_p2 = 3;
inline constexpr int x_a = 4;
inline constexpr int y_a = 5;
inline constexpr int per_cavity = 6;

std::vector<std::string> labels(int n_cavities);
}  // namespace basis

// Conventions in force for every covariance produced here: field quadratures
// X_eps = A e^{-i eps} + A^dag e^{i eps} with vacuum spectrum 1; spin variances
// normalized by |<J_z>|/2 = N/4, so a coherent spin state has <X_Pr^2> = N and
// normalized variance 1; the intracavity vacuum quadrature variance is 1/tau.
struct Normalization {
  double n_atoms = 0;
  double tau = 0;
};

// Symmetric second-moment matrix of the fluctuation state.
struct CovarianceMatrix {
  Eigen::MatrixXd v;
  double time = 0;
  Normalization norm;
};

// Linearized fluctuation dynamics d(state)/dt = drift * state + noise, with
// input coupling input_map acting on external quadratures of flat spectrum
// input_spectrum, atomic Einstein-relation diffusion langevin_diffusion, and
// the reflected outputs  out = output_rows * state + feedthrough * inputs.
struct LinearSystem {
  Eigen::MatrixXd drift;
  Eigen::MatrixXd input_map;
  Eigen::MatrixXd input_spectrum;
  Eigen::MatrixXd langevin_diffusion;
  Eigen::MatrixXd output_rows;
  Eigen::MatrixXd feedthrough;
  Normalization norm;
  int n_cavities = 1;
  std::vector<SystemParams> params;
  std::vector<InteractionMode> modes;

  int dim() const { return static_cast<int>(drift.rows()); }
  int n_inputs() const { return static_cast<int>(input_map.cols()); }

  // D = D_L + B_in S_in B_in^T, the diffusion entering the covariance equation.
  Eigen::MatrixXd total_diffusion() const;

  double max_eigen_modulus() const;
  double max_eigen_real() const;
  bool stable() const { return max_eigen_real() < 0; }
};

// Single cavity + ensemble around the pumped steady state. EIT runs fully on
// resonance; Raman keeps the one-photon detuning on the dipole and compensates
// the ground-state light shift and the atom-pulled cavity resonance so that
// the effective detunings vanish.
LinearSystem build_linear_system(const SystemParams& p, const InteractionMode& mode,
                                 const InputFieldSpec& input);

// Two identical cavities driven by a broadband field pair, ordered
// (X1, Y1, X2, Y2): a correlated pair realizing the requested input
// inseparability, or two uncorrelated copies of a single-mode input.
LinearSystem build_epr_system(const SystemParams& p, const InteractionMode& mode,
                              const InputFieldSpec& input);

// Unidirectional cascade: the output of cavity 1 is the input of cavity 2,
// with no back-action and zero transit time. input1 enters cavity 1.
// omega_rabi_2 < 0 means "same control field as cavity 1".
LinearSystem build_cascade_system(const SystemParams& p, const InteractionMode& mode,
                                  double omega_rabi_2 = -1,
                                  const InputFieldSpec& input1 = {});

// Covariance of the global coherent/vacuum state, the exact fixed point for
// vacuum inputs.
CovarianceMatrix coherent_state(const LinearSystem& sys);

// 2x2 input-quadrature spectrum for a single-cavity input (vacuum or squeezed).
Eigen::Matrix2d single_input_spectrum(const InputFieldSpec& input);

}  // namespace qmem
