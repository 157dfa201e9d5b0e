#include "qmem/formulas.hpp"

#include <cmath>

namespace qmem {

namespace {

void require_pumped(const DerivedRates& rates) {
  if (rates.gamma_eff <= 0)
    throw ConfigError("undefined for gamma_eff = 0 (no pumping and no decay)");
}

}  // namespace

WriteResult write_variance(const DerivedRates& rates, double r, Mode mode,
                           double input_angle) {
  if (r < 0) throw ConfigError("squeezing parameter r must be non-negative");
  require_pumped(rates);
  const double denom = 1.0 + 2.0 * rates.coop;
  const double pump_frac = rates.gamma_pump / rates.gamma_eff;

  WriteResult w;
  w.input_term = (2.0 * rates.coop / denom) * pump_frac * std::exp(-2.0 * r);
  w.gamma0_term = (rates.gamma_eff - rates.gamma_pump) / rates.gamma_eff;
  w.spont_term = pump_frac / denom;
  w.var_min = w.input_term + w.gamma0_term + w.spont_term;
  w.efficiency = (2.0 * rates.coop / denom) * pump_frac;
  double theta = input_angle + (mode == Mode::Raman ? M_PI / 2.0 : 0.0);
  theta = std::fmod(theta, M_PI);
  if (theta < 0) theta += M_PI;
  w.theta_min = theta;
  return w;
}

double PumpBounds::cap(double coop) const {
  return std::min(regime_cap, (1.0 + 2.0 * coop) * power_scale);
}

std::vector<std::pair<double, double>> transfer_efficiency_curve(
    const std::vector<double>& c_grid, double gamma0, const PumpBounds& bounds) {
  if (c_grid.empty()) throw ConfigError("cooperativity grid must be nonempty");
  if (bounds.regime_cap <= 0 || bounds.power_scale <= 0)
    throw ConfigError("pump bounds must be positive");
  if (gamma0 < 0) throw ConfigError("gamma0 must be non-negative");

  auto eta_of = [gamma0](double coop, double pump) {
    return (2.0 * coop / (1.0 + 2.0 * coop)) * pump / (gamma0 + pump);
  };

  std::vector<std::pair<double, double>> out;
  out.reserve(c_grid.size());
  for (double coop : c_grid) {
    if (coop <= 0) throw ConfigError("cooperativity grid must be positive");
    // golden-section search on [eps, cap]
    const double cap = bounds.cap(coop);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 1e-12 * cap, b = cap;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eta_of(coop, x1), f2 = eta_of(coop, x2);
    for (int it = 0; it < 200; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = eta_of(coop, x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = eta_of(coop, x1);
      }
    }
    const double best = std::max({f1, f2, eta_of(coop, cap)});
    out.emplace_back(coop, best);
  }
  return out;
}

CorrelationResult readout_correlation(const DerivedRates& rates, double var0, double t,
                                      double t_prime) {
  if (t < 0 || t_prime < 0) throw ConfigError("correlation times must be non-negative");
  if (var0 < 0) throw ConfigError("initial spin variance must be non-negative");
  CorrelationResult c;
  c.smooth = -rates.eta0() * 2.0 * rates.gamma_pump * (1.0 - var0) *
             std::exp(-rates.gamma_pump * (t + t_prime));
  return c;
}

double memory_efficiency(const DerivedRates& rates, double t_s) {
  if (t_s < 0) throw ConfigError("storage time must be non-negative");
  const double gamma0 = rates.gamma_eff - rates.gamma_pump;
  const double eta = rates.eta0();
  return eta * eta * std::exp(-2.0 * gamma0 * t_s);
}

EprTransferResult epr_transfer(const DerivedRates& rates, double i_f) {
  if (i_f < 0 || i_f > 2) throw ConfigError("input inseparability must lie in [0, 2]");
  require_pumped(rates);
  const double denom = 1.0 + 2.0 * rates.coop;
  const double pump_frac = rates.gamma_pump / rates.gamma_eff;
  const double gamma0_frac = (rates.gamma_eff - rates.gamma_pump) / rates.gamma_eff;
  EprTransferResult res;
  res.i_at = (2.0 * rates.coop / denom) * pump_frac * i_f +
             2.0 * (gamma0_frac + pump_frac / denom);
  // strict inequality with a boundary guard so the exactly-separable case
  // cannot flip on rounding
  res.entangled = res.i_at < 2.0 - 1e-9;
  return res;
}

RepeaterResult repeater_variances(const DerivedRates& rates, double r1, double t) {
  if (r1 < 0) throw ConfigError("spin-1 squeezing parameter must be non-negative");
  if (t < 0) throw ConfigError("time must be non-negative");
  require_pumped(rates);
  const double eta4 = std::pow(rates.eta0(), 4);
  const double ge = rates.gamma_eff;
  const double sq1 = 1.0 - std::exp(-2.0 * r1);
  const double anti1 = std::exp(2.0 * r1) - 1.0;

  RepeaterResult res;
  res.t_opt = 1.0 / ge;
  res.peak_squeezing_ratio = (4.0 / (M_E * M_E)) * eta4;
  res.var_x2_of_t = [eta4, ge, sq1](double tt) {
    const double u = 2.0 * ge * tt;
    return 1.0 - eta4 * u * u * std::exp(-u) * sq1;
  };
  res.var_y2_of_t = [eta4, ge, anti1](double tt) {
    const double u = 2.0 * ge * tt;
    return 1.0 + eta4 * u * u * std::exp(-u) * anti1;
  };
  res.var_x2 = res.var_x2_of_t(t);
  res.var_y2 = res.var_y2_of_t(t);
  return res;
}

}  // namespace qmem
