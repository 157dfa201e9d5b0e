#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qmem/formulas.hpp"

using namespace qmem;
using test::eit_params;

namespace {

DerivedRates canonical_rates(double coop = 100.0, double pump = 0.074,
                             double gamma0 = 1e-3) {
  return derive_rates(eit_params(coop, pump, gamma0), InteractionMode::eit());
}

}  // namespace

TEST_SUITE_BEGIN("formulas");

TEST_CASE("coherent input writes a coherent spin state, terms sum exactly") {
  const DerivedRates r = canonical_rates(17.0, 0.05, 3e-3);
  const WriteResult w = write_variance(r, 0.0);
  CHECK(w.var_min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.input_term + w.gamma0_term + w.spont_term == w.var_min);
  CHECK(w.input_term >= 0);
  CHECK(w.gamma0_term >= 0);
  CHECK(w.spont_term >= 0);
}

TEST_CASE("canonical write point: var_min 0.50911, efficiency 0.98178") {
  const DerivedRates r = canonical_rates();
  const double rr = -0.5 * std::log(0.5);  // e^{-2r} = 0.5
  const WriteResult w = write_variance(r, rr);
  CHECK(w.var_min == doctest::Approx(0.509121).epsilon(1e-4));
  CHECK(w.efficiency == doctest::Approx(0.981758).epsilon(1e-4));
}

TEST_CASE("perfect transfer limit") {
  const DerivedRates r = canonical_rates(1e9, 0.074, 0.0);
  const WriteResult w = write_variance(r, 0.5);
  CHECK(w.var_min == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(w.efficiency == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("squeezed spin axis follows the input angle, rotated in Raman") {
  const DerivedRates r = canonical_rates();
  CHECK(write_variance(r, 0.5, Mode::EIT, 0.3).theta_min == doctest::Approx(0.3));
  CHECK(write_variance(r, 0.5, Mode::Raman, 0.3).theta_min ==
        doctest::Approx(0.3 + M_PI / 2.0));
}

TEST_CASE("efficiency curve: gamma0 = 0 reduces to 2C/(1+2C) exactly") {
  const PumpBounds bounds{0.1, 0.1 / 201.0};
  const auto curve = transfer_efficiency_curve({1.0, 10.0, 100.0}, 0.0, bounds);
  for (const auto& [coop, eta] : curve)
    CHECK(eta == doctest::Approx(2.0 * coop / (1.0 + 2.0 * coop)).epsilon(1e-9));
}

TEST_CASE("efficiency curve rises with C for any gamma0 > 0") {
  const PumpBounds bounds{0.1, 0.1 / 201.0};
  const auto curve = transfer_efficiency_curve({10.0, 100.0}, 1e-3, bounds);
  CHECK(curve[0].second < curve[1].second);
}

TEST_CASE("efficiency curve still rises visibly below C = 50") {
  // gamma0 at 1% of the admissible pump scale
  const PumpBounds bounds{0.1, 0.1 / 201.0};
  const auto curve = transfer_efficiency_curve({10.0, 50.0, 100.0}, 1e-3, bounds);
  CHECK(curve[0].second < 0.9 * curve[2].second);
  CHECK(curve[1].second < curve[2].second);
}

TEST_CASE("readout correlation trivial cases") {
  DerivedRates r = canonical_rates();
  CHECK(readout_correlation(r, 1.0, 0.1, 0.2).smooth == 0.0);
  r.gamma_pump = 0.0;
  r.gamma_eff = r.gamma_pump;  // control off
  CHECK(readout_correlation(r, 0.5, 0.1, 0.2).smooth == 0.0);
}

TEST_CASE("readout correlation at the canonical point") {
  const DerivedRates r = canonical_rates(100.0, 0.074, 0.0);
  const CorrelationResult c = readout_correlation(r, 0.5, 0.0, 0.0);
  CHECK(c.smooth == doctest::Approx(-0.995025 * r.gamma_pump).epsilon(1e-5));
  CHECK(c.shot_noise_delta);
}

TEST_CASE("memory efficiency") {
  const DerivedRates r = canonical_rates(100.0, 0.074, 0.0);
  CHECK(memory_efficiency(r, 0.0) == doctest::Approx(0.990074).epsilon(1e-5));

  // gamma0 t_s = 0.05
  const DerivedRates r2 = canonical_rates(100.0, 0.074, 1e-3);
  CHECK(memory_efficiency(r2, 50.0) == doctest::Approx(0.895854).epsilon(1e-5));
  // expired memory
  CHECK(memory_efficiency(r2, 1e7) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("epr transfer: separable in, separable out, exactly") {
  const DerivedRates r = canonical_rates(3.0, 0.02, 5e-4);
  const EprTransferResult res = epr_transfer(r, 2.0);
  CHECK(res.i_at == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_FALSE(res.entangled);
}

TEST_CASE("epr transfer at the canonical point") {
  const DerivedRates r = canonical_rates();
  const EprTransferResult res = epr_transfer(r, 1.0);
  CHECK(res.i_at == doctest::Approx(1.018242).epsilon(1e-5));
  CHECK(res.entangled);
}

TEST_CASE("epr transfer approaches the input in the deep-transfer limit") {
  const DerivedRates r = canonical_rates(1e7, 0.074, 0.0);
  CHECK(epr_transfer(r, 0.7).i_at == doctest::Approx(0.7).epsilon(1e-5));
}

TEST_CASE("i_at is affine in i_f with the write input coefficient as slope") {
  const DerivedRates r = canonical_rates(42.0, 0.06, 2e-3);
  const double slope = (epr_transfer(r, 1.5).i_at - epr_transfer(r, 0.5).i_at) / 1.0;
  const WriteResult w = write_variance(r, 0.0);
  CHECK(slope == doctest::Approx(w.input_term).epsilon(1e-12));
}

TEST_CASE("repeater: trivial cases stay at shot noise") {
  const DerivedRates r = canonical_rates(100.0, 0.074, 0.0);
  CHECK(repeater_variances(r, 0.0, 1.23).var_x2 == doctest::Approx(1.0));
  CHECK(repeater_variances(r, 0.7, 0.0).var_x2 == doctest::Approx(1.0));
}

TEST_CASE("repeater peak: 4/e^2 of the initial squeezing at t = 1/gamma_eff") {
  // eta -> 1 limit
  const DerivedRates r = canonical_rates(1e9, 0.074, 0.0);
  const double r1 = -0.5 * std::log(0.5);  // 1 - e^{-2 r1} = 0.5
  const RepeaterResult res = repeater_variances(r, r1, 1.0 / r.gamma_eff);
  CHECK(res.t_opt == doctest::Approx(1.0 / r.gamma_eff));
  CHECK(res.peak_squeezing_ratio == doctest::Approx(0.541341).epsilon(1e-4));
  CHECK(1.0 - res.var_x2 == doctest::Approx(0.270671).epsilon(1e-4));

  // the peak ratio scales as eta^4 and t^2 e^{-2 gamma t} peaks at gamma t = 1
  const DerivedRates rf = canonical_rates(100.0, 0.074, 0.0);
  const RepeaterResult resf = repeater_variances(rf, r1, 1.0 / rf.gamma_eff);
  const double eta4 = std::pow(rf.eta0(), 4);
  CHECK(resf.peak_squeezing_ratio == doctest::Approx((4.0 / (M_E * M_E)) * eta4));
  const double at_peak = 1.0 - resf.var_x2_of_t(1.0 / rf.gamma_eff);
  for (double t : {0.3, 0.7, 1.5, 2.5}) {
    CHECK(1.0 - resf.var_x2_of_t(t / rf.gamma_eff) <= at_peak + 1e-12);
  }
}

TEST_CASE("repeater preserves the uncertainty product") {
  const DerivedRates r = canonical_rates(100.0, 0.074, 0.0);
  const RepeaterResult res = repeater_variances(r, 0.7, 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double t = 5.0 * i / 100.0 / r.gamma_eff;
    CHECK(res.var_x2_of_t(t) * res.var_y2_of_t(t) >= 1.0 - 1e-12);
  }
}

TEST_CASE("undefined cases are signaled") {
  DerivedRates r = canonical_rates();
  r.gamma_pump = 0;
  r.gamma_eff = 0;
  CHECK_THROWS_AS(write_variance(r, 0.5), ConfigError);
  CHECK_THROWS_AS(epr_transfer(r, 1.0), ConfigError);
  CHECK_THROWS_AS(transfer_efficiency_curve({}, 0.0, PumpBounds{0.1, 0.1}), ConfigError);
}

TEST_SUITE_END();
