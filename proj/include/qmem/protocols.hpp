#pragma once

#include "qmem/params.hpp"
#include "qmem/report.hpp"

namespace qmem {

// Declared tolerances for the scenario reports. Every numeric quantity with an
// analytic counterpart is checked against these.
namespace tol {
inline constexpr double vacuum_fixed_point = 1e-6;
inline constexpr double write_var = 0.05;
inline constexpr double spin_axis_rad = 0.02;
inline constexpr double spectrum_fwhm = 0.02;
inline constexpr double spectrum_peak = 0.03;
inline constexpr double store_decay = 1e-4;
inline constexpr double readout_var = 0.02;
inline constexpr double memory_eff = 0.03;
inline constexpr double epr = 0.05;
inline constexpr double epr_separable = 5e-4;
inline constexpr double repeater_peak = 0.02;
inline constexpr double repeater_time = 0.05;
}  // namespace tol

struct WriteOptions {
  double duration = -1;      // < 0: 8 / gamma_eff
  double dt = -1;            // < 0: integrator bound
  int spectrum_points = 0;   // > 0: emit a spin noise spectrum table
  double omega_max = -1;     // < 0: 8 gamma_eff
};

// Writes the input field state onto the spin: trajectory of the minimum spin
// variance, steady state against the closed form, and optionally the spin
// noise spectrum of the least-noisy component against the Lorentzian shape.
ScenarioReport run_write(const SystemParams& p, const InteractionMode& mode,
                         const InputFieldSpec& input, const WriteOptions& opt = {});

struct StoreReadoutOptions {
  double t_write = -1;     // < 0: 8 / gamma_eff
  double t_store = 0;
  double t_read = -1;      // < 0: 6 / gamma_pump
  double filter_rate = -1; // < 0: matched to the pump rate
  double dt = -1;
};

// Full write / store / read cycle with a matched-filter homodyne readout and
// the global memory efficiency against eta^2 exp(-2 gamma0 t_s).
ScenarioReport run_store_readout(const SystemParams& p, const InteractionMode& mode,
                                 const InputFieldSpec& input,
                                 const StoreReadoutOptions& opt = {});

struct EprOptions {
  double duration = -1;  // > 0: also report the approach to steady state
  double dt = -1;
};

// Joint two-cavity transfer of an entangled input pair; reports the atomic
// inseparability against the closed form and the entanglement verdict.
// Uncorrelated single-mode inputs are accepted as a control case and must
// never produce an entanglement verdict.
ScenarioReport run_epr(const SystemParams& p, const InteractionMode& mode,
                       const InputFieldSpec& input, const EprOptions& opt = {});

struct RepeaterOptions {
  double r1 = 0.5;        // spin-1 squeezing parameter (direct initialization)
  double t_max = -1;      // < 0: 4 / gamma_eff
  int n_points = 400;
  double rate_ratio = 1;  // pump rate of cavity 2 over cavity 1
  bool write_first = false;  // prepare spin 1 by a full write phase instead
  double r_in = -1;       // input squeezing for write_first; < 0: r1
  double dt = -1;
};

// Readout of a squeezed ensemble cascaded into a second one: spin-2 variance
// trajectory, peak location 1/gamma_eff and peak transfer (4/e^2) eta^4.
ScenarioReport run_repeater(const SystemParams& p, const InteractionMode& mode,
                            const RepeaterOptions& opt = {});

}  // namespace qmem
