#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qmem/params.hpp"

namespace qmem {

// Closed-form prediction for the steady spin state written from a broadband
// squeezed vacuum. var_min decomposes exactly into the three listed terms.
struct WriteResult {
  double var_min = 0;
  double theta_min = 0;
  double efficiency = 0;
  double input_term = 0;   // carries the incident field state, ~ exp(-2r)
  double gamma0_term = 0;  // ground-state coherence loss
  double spont_term = 0;   // spontaneous emission
};

// var_min = [2C/(1+2C)] (pump/eff) e^{-2r} + gamma0/eff + [1/(1+2C)] (pump/eff),
// efficiency = [2C/(1+2C)] pump/(gamma0+pump). The squeezed spin angle equals
// the input squeezing angle in EIT and is rotated by pi/2 in Raman.
WriteResult write_variance(const DerivedRates& rates, double r, Mode mode = Mode::EIT,
                           double input_angle = 0);

// Admissible pumping-rate window for the efficiency optimization: the window
// is (0, min(regime_cap, (1+2C) * power_scale)]. regime_cap models validity of
// the adiabatic transfer, power_scale a bounded control-field power budget
// whose effective rate scales with (1+2C).
struct PumpBounds {
  double regime_cap = 0;
  double power_scale = 0;

  double cap(double coop) const;
};

// For each cooperativity, numerically maximizes the transfer efficiency over
// the admissible pumping rate. Monotone nondecreasing in C; with gamma0 = 0 it
// reduces to 2C/(1+2C) independent of the pumping.
std::vector<std::pair<double, double>> transfer_efficiency_curve(
    const std::vector<double>& c_grid, double gamma0, const PumpBounds& bounds);

// Smooth part of the two-time output correlation during readout, with the
// shot-noise delta term reported as a flag rather than folded into the value.
struct CorrelationResult {
  double smooth = 0;
  bool shot_noise_delta = true;  // a delta(t - t') term of unit weight is always present
};

// -[2C/(1+2C)] 2 pump [1 - var0] e^{-pump (t + t')}; derived for gamma0 = 0.
CorrelationResult readout_correlation(const DerivedRates& rates, double var0, double t,
                                      double t_prime);

// Global write-store-read efficiency eta^2 e^{-2 gamma0 t_s}, eta = 2C/(1+2C).
double memory_efficiency(const DerivedRates& rates, double t_s);

struct EprTransferResult {
  double i_at = 0;
  bool entangled = false;  // i_at < 2
};

// Atomic inseparability written from an entangled input pair:
// I_at = [2C/(1+2C)] (pump/eff) I_f + 2 [gamma0/eff + pump/((1+2C) eff)].
EprTransferResult epr_transfer(const DerivedRates& rates, double i_f);

// Spin-2 variances for the direct readout-then-rewrite transfer between two
// ensembles, normalized to the atomic shot noise. Spin 1 starts in a minimum
// uncertainty state (e^{-2 r1}, e^{+2 r1}).
struct RepeaterResult {
  double t_opt = 0;                  // peak squeezing time, 1/gamma_eff
  double peak_squeezing_ratio = 0;   // (1-e^{-2 r2})/(1-e^{-2 r1}) = (4/e^2) eta^4
  double var_x2 = 1;                 // at the requested time
  double var_y2 = 1;
  std::function<double(double)> var_x2_of_t;
  std::function<double(double)> var_y2_of_t;
};

RepeaterResult repeater_variances(const DerivedRates& rates, double r1, double t);

}  // namespace qmem
