#include "qmem/params.hpp"

#include <cmath>

namespace qmem {

namespace {

bool finite(double x) { return std::isfinite(x); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

void validate_params(const SystemParams& p) {
  for (double v : {p.g, p.n_atoms, p.omega_rabi, p.gamma, p.gamma0, p.kappa,
                   p.tau, p.delta1, p.delta2, p.delta_cav}) {
    require(finite(v), "system parameter is not finite");
  }
  require(p.gamma > 0, "gamma must be positive");
  require(p.kappa > 0, "kappa must be positive");
  require(p.tau > 0, "tau must be positive");
  require(p.n_atoms >= 0, "n_atoms must be non-negative");
  require(p.gamma0 >= 0, "gamma0 must be non-negative");
  require(p.g >= 0, "g must be non-negative");
  require(p.omega_rabi >= 0, "omega_rabi must be non-negative");
  const double t = p.transmission();
  require(t > 0 && t <= 1.0, "mirror transmission T = 2*kappa*tau must lie in (0, 1]");
}

void validate_mode(const SystemParams& p, const InteractionMode& mode) {
  const double tol = 1e-9 * p.gamma;
  if (mode.kind == Mode::EIT) {
    require(std::abs(mode.detuning) <= tol, "EIT mode requires zero one-photon detuning");
    require(std::abs(p.delta1) <= tol && std::abs(p.delta2) <= tol,
            "EIT mode requires both fields on one-photon resonance");
  } else {
    require(std::abs(mode.detuning) >= raman_min_detuning_ratio * p.gamma,
            "Raman mode requires |Delta| >= 10 gamma");
    require(std::abs(p.delta2 - mode.detuning) <= tol &&
                std::abs(p.delta1 - mode.detuning) <= tol,
            "Raman mode requires delta1 = delta2 = Delta (zero two-photon detuning)");
  }
  require(std::abs(p.delta_cav) <= tol,
          "nonzero cavity detuning is not supported; light shifts are compensated internally");
}

DerivedRates derive_rates(const SystemParams& p, const InteractionMode& mode) {
  validate_params(p);
  validate_mode(p, mode);
  require(p.n_atoms >= 1, "rate derivation requires at least one atom");

  DerivedRates r;
  r.transmission = p.transmission();
  r.coop = p.g * p.g * p.n_atoms / (2.0 * p.kappa * p.gamma * p.tau);
  const double denom = 1.0 + 2.0 * r.coop;
  const double sqrt_t = std::sqrt(r.transmission);

  if (mode.kind == Mode::EIT) {
    const double gamma_e = p.omega_rabi * p.omega_rabi / p.gamma;
    r.gamma_pump = gamma_e / denom;
    r.beta = p.g * p.n_atoms * p.omega_rabi / (p.gamma * denom * sqrt_t);
  } else {
    const double gamma_r =
        p.gamma * p.omega_rabi * p.omega_rabi / (mode.detuning * mode.detuning);
    r.gamma_pump = denom * gamma_r;
    r.beta = p.g * p.n_atoms * p.omega_rabi / (mode.detuning * sqrt_t);
  }
  r.gamma_eff = p.gamma0 + r.gamma_pump;
  return r;
}

bool RegimeReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> RegimeReport::warnings() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) {
      out.push_back("regime check failed: " + c.name + " (ratio " +
                    std::to_string(c.ratio) + " < " + std::to_string(c.threshold) + ")");
    }
  }
  return out;
}

RegimeReport validate_regime(const SystemParams& p, const InteractionMode& mode) {
  const DerivedRates r = derive_rates(p, mode);
  const double factor = 10.0;  // "much larger" threshold
  auto ratio_of = [](double num, double den) {
    if (den <= 0) return num > 0 ? 1e300 : 0.0;
    return num / den;
  };
  RegimeReport rep;
  rep.checks.push_back({"C >> 1", r.coop, factor, r.coop >= factor});
  const double r1 = ratio_of(r.gamma_pump, p.gamma0);
  rep.checks.push_back({"gamma0 << pump rate", r1, factor, r1 >= factor});
  const double r2 = ratio_of(p.gamma, r.gamma_pump);
  rep.checks.push_back({"pump rate << gamma", r2, factor, r2 >= factor});
  const double r3 = ratio_of(p.kappa, r.gamma_pump);
  rep.checks.push_back({"pump rate << kappa", r3, factor, r3 >= factor});
  return rep;
}

InputFieldSpec InputFieldSpec::squeezed(double r, double angle) {
  InputFieldSpec s;
  s.kind = InputKind::SqueezedVacuum;
  s.r = r;
  s.angle = angle;
  validate_input(s);
  return s;
}

InputFieldSpec InputFieldSpec::epr(double i_f) {
  InputFieldSpec s;
  s.kind = InputKind::EprPair;
  s.i_f = i_f;
  validate_input(s);
  return s;
}

void validate_input(const InputFieldSpec& in) {
  if (!std::isfinite(in.r) || !std::isfinite(in.angle) || !std::isfinite(in.i_f))
    throw ConfigError("input field spec is not finite");
  if (in.r < 0) throw ConfigError("squeezing parameter r must be non-negative");
  if (in.kind == InputKind::EprPair && (in.i_f <= 0 || in.i_f > 2))
    throw ConfigError("EPR input inseparability must lie in (0, 2]");
}

}  // namespace qmem
