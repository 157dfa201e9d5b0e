#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qmem {

// Invalid parameters or malformed configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A solver or integrator failed its accuracy/stability contract (CLI exit code 3).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical constants of one cavity + ensemble. All rates are expressed in
// units of the optical dipole decay (gamma = 1 is the canonical choice).
struct SystemParams {
  double g = 0;           // atom-field coupling per unit field
  double n_atoms = 0;     // N; 0 means an empty cavity (bare mirror)
  double omega_rabi = 0;  // control-field Rabi frequency
  double gamma = 1;       // optical dipole decay, the unit-setting scale
  double gamma0 = 0;      // ground-state coherence decay
  double kappa = 0;       // intracavity field decay
  double tau = 0;         // cavity round-trip time
  double delta1 = 0;      // one-photon detuning of the control transition
  double delta2 = 0;      // one-photon detuning of the probe transition
  double delta_cav = 0;   // cavity detuning

  // Transmission of the coupling mirror, T = 2 kappa tau, must lie in (0, 1].
  double transmission() const { return 2.0 * kappa * tau; }
  double two_photon_detuning() const { return delta1 - delta2; }
};

// Range checks shared by every operation. Throws ConfigError.
void validate_params(const SystemParams& p);

enum class Mode { EIT, Raman };

// Raman validity threshold: |Delta| >= raman_min_detuning_ratio * gamma.
inline constexpr double raman_min_detuning_ratio = 10.0;

struct InteractionMode {
  Mode kind = Mode::EIT;
  double detuning = 0;  // one-photon detuning Delta; used by Raman only

  static InteractionMode eit() { return {Mode::EIT, 0.0}; }
  static InteractionMode raman(double delta) { return {Mode::Raman, delta}; }
};

// Mode invariants against the detunings stored in params:
//   EIT   - one- and two-photon resonant, resonant cavity
//   Raman - |Delta| >= 10 gamma, zero nominal two-photon detuning
// Throws ConfigError on violation.
void validate_mode(const SystemParams& p, const InteractionMode& mode);

struct DerivedRates {
  double coop = 0;          // cooperativity C = g^2 N / (2 kappa gamma tau)
  double gamma_pump = 0;    // effective optical pumping rate
  double gamma_eff = 0;     // gamma0 + gamma_pump
  double beta = 0;          // field-coherence coupling
  double transmission = 0;  // T = 2 kappa tau

  // Transfer efficiency 2C/(1+2C) in the gamma0 = 0 limit.
  double eta0() const { return 2.0 * coop / (1.0 + 2.0 * coop); }
};

// Effective rates of the pumped ensemble. EIT: pump rate (Omega^2/gamma)/(1+2C),
// coupling g N Omega / (gamma (1+2C) sqrt(T)). Raman: pump rate
// (1+2C) gamma Omega^2/Delta^2, coupling g N Omega / (Delta sqrt(T)).
// Both satisfy beta^2 = (N/2) * gamma_pump * 2C/(1+2C).
DerivedRates derive_rates(const SystemParams& p, const InteractionMode& mode);

struct RegimeCheck {
  std::string name;
  double ratio = 0;      // computed ratio, pass when >= threshold
  double threshold = 0;
  bool pass = false;
};

// Advisory report on the transfer-regime inequalities
// (C >> 1, gamma0 << pump rate << gamma, kappa). Warnings only, never blocks.
struct RegimeReport {
  std::vector<RegimeCheck> checks;
  bool all_pass() const;
  std::vector<std::string> warnings() const;
};

RegimeReport validate_regime(const SystemParams& p, const InteractionMode& mode);

// Broadband (frequency-flat) field state on the probe input port.
enum class InputKind { Vacuum, SqueezedVacuum, EprPair };

struct InputFieldSpec {
  InputKind kind = InputKind::Vacuum;
  double r = 0;      // squeezing parameter; spectrum exp(-2r) on the squeezed quadrature
  double angle = 0;  // squeezed-quadrature angle
  double i_f = 2;    // EPR input inseparability; < 2 means entangled

  static InputFieldSpec vacuum() { return {}; }
  static InputFieldSpec squeezed(double r, double angle = 0);
  static InputFieldSpec epr(double i_f);
};

void validate_input(const InputFieldSpec& in);

}  // namespace qmem
