#include "qmem/readout.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qmem/evolve.hpp"
#include "qmem/spin.hpp"

namespace qmem {

double readout_spin_axis(const InteractionMode& mode, double epsilon) {
  double theta = epsilon + (mode.kind == Mode::Raman ? M_PI / 2.0 : 0.0);
  theta = std::fmod(theta, M_PI);
  if (theta < 0) theta += M_PI;
  return theta;
}

namespace {

struct OutputRows {
  Eigen::RowVectorXd lx, ly;  // on the state
  Eigen::RowVectorXd fx, fy;  // on the input quadratures
};

OutputRows rotated_output(const LinearSystem& sys, double epsilon, int cavity = 0) {
  const double c = std::cos(epsilon), s = std::sin(epsilon);
  const int orow = 2 * cavity;
  OutputRows rows;
  rows.lx = c * sys.output_rows.row(orow) + s * sys.output_rows.row(orow + 1);
  rows.ly = -s * sys.output_rows.row(orow) + c * sys.output_rows.row(orow + 1);
  rows.fx = c * sys.feedthrough.row(orow) + s * sys.feedthrough.row(orow + 1);
  rows.fy = -s * sys.feedthrough.row(orow) + c * sys.feedthrough.row(orow + 1);
  return rows;
}

}  // namespace

MatchedFilterResult matched_filter_variance(const LinearSystem& sys,
                                            const CovarianceMatrix& v0, double filter_rate,
                                            double horizon, double epsilon, double dt) {
  if (!(horizon > 0)) throw ConfigError("matched filter horizon must be positive");
  if (filter_rate < 0) throw ConfigError("filter rate must be non-negative");
  const int d = sys.dim();
  if (v0.v.rows() != d) throw ConfigError("initial covariance has the wrong dimension");
  if (sys.norm.n_atoms >= 1 && sys.params.front().omega_rabi > 0) {
    const DerivedRates rates = derive_rates(sys.params.front(), sys.modes.front());
    if (rates.gamma_pump > 0 && horizon < 5.0 / rates.gamma_pump * (1.0 - 1e-9))
      throw ConfigError("matched filter horizon must cover at least 5 / pump rate");
  }

  const double bound = max_timestep(sys);
  if (dt <= 0) dt = bound;
  if (dt > bound * (1.0 + 1e-12))
    throw ConfigError("dt exceeds the integrator accuracy bound 0.01/max|eig|");

  const OutputRows rows = rotated_output(sys, epsilon);
  const Eigen::MatrixXd m = sys.drift;
  const Eigen::MatrixXd diff = sys.total_diffusion();
  const Eigen::MatrixXd bsin = sys.input_map * sys.input_spectrum;  // d x m_in

  // Augmented covariance blocks: state V, cross c = <u q^T>, accumulators q.
  Eigen::MatrixXd v = 0.5 * (v0.v + v0.v.transpose());
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(d, 2);
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();

  Eigen::MatrixXd lrows(2, d);
  lrows.row(0) = rows.lx;
  lrows.row(1) = rows.ly;
  Eigen::MatrixXd frows(2, sys.n_inputs());
  frows.row(0) = rows.fx;
  frows.row(1) = rows.fy;
  const Eigen::Matrix2d fsf = frows * sys.input_spectrum * frows.transpose();
  const Eigen::MatrixXd bsf = bsin * frows.transpose();  // d x 2

  const long n = std::max(1L, std::lround(std::ceil(horizon / dt - 1e-12)));
  const double h = horizon / static_cast<double>(n);

  // Derivatives of the augmented blocks with weight w(t) = exp(-rate t):
  //   V'     = M V + V M^T + D
  //   cross' = M cross + w (V L^T + B S F^T)
  //   acc'   = w (L cross + cross^T L^T) + w^2 F S F^T
  Eigen::MatrixXd kv1(d, d), kv2(d, d), kv3(d, d), kv4(d, d), vt(d, d);
  Eigen::MatrixXd kc1(d, 2), kc2(d, 2), kc3(d, 2), kc4(d, 2), ct(d, 2);
  Eigen::Matrix2d ka1, ka2, ka3, ka4;

  auto dv = [&](const Eigen::MatrixXd& vv, Eigen::MatrixXd& out) {
    out.noalias() = m * vv;
    out.noalias() += vv * m.transpose();
    out += diff;
  };
  auto dc = [&](const Eigen::MatrixXd& vv, const Eigen::MatrixXd& cc, double w,
                Eigen::MatrixXd& out) {
    out.noalias() = m * cc;
    out.noalias() += w * (vv * lrows.transpose());
    out.noalias() += w * bsf;
  };
  auto da = [&](const Eigen::MatrixXd& cc, double w, Eigen::Matrix2d& out) {
    Eigen::Matrix2d lc = lrows * cc;
    out = w * (lc + lc.transpose()) + (w * w) * fsf;
  };

  double t = 0;
  for (long k = 0; k < n; ++k) {
    const double w0 = std::exp(-filter_rate * t);
    const double wm = std::exp(-filter_rate * (t + 0.5 * h));
    const double w1 = std::exp(-filter_rate * (t + h));

    dv(v, kv1);
    dc(v, cross, w0, kc1);
    da(cross, w0, ka1);

    vt = v + 0.5 * h * kv1;
    ct = cross + 0.5 * h * kc1;
    dv(vt, kv2);
    dc(vt, ct, wm, kc2);
    da(ct, wm, ka2);

    vt = v + 0.5 * h * kv2;
    ct = cross + 0.5 * h * kc2;
    dv(vt, kv3);
    dc(vt, ct, wm, kc3);
    da(ct, wm, ka3);

    vt = v + h * kv3;
    ct = cross + h * kc3;
    dv(vt, kv4);
    dc(vt, ct, w1, kc4);
    da(ct, w1, ka4);

    v += (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
    v = 0.5 * (v + v.transpose()).eval();
    cross += (h / 6.0) * (kc1 + 2.0 * kc2 + 2.0 * kc3 + kc4);
    acc += (h / 6.0) * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
    t += h;
  }

  const double norm_sq = filter_rate > 0
                             ? (1.0 - std::exp(-2.0 * filter_rate * horizon)) / (2.0 * filter_rate)
                             : horizon;

  MatchedFilterResult res;
  res.variance = acc(0, 0) / norm_sq;
  res.variance_orthogonal = acc(1, 1) / norm_sq;
  const CovarianceMatrix start{v0.v, 0.0, sys.norm};
  res.spin_variance_start =
      sys.norm.n_atoms > 0
          ? normalized_spin_variance(start, readout_spin_axis(sys.modes.front(), epsilon))
          : 1.0;
  if (std::abs(1.0 - res.spin_variance_start) > 1e-12)
    res.efficiency = (1.0 - res.variance) / (1.0 - res.spin_variance_start);
  return res;
}

Eigen::MatrixXd output_autocorrelation_grid(const LinearSystem& sys,
                                            const CovarianceMatrix& v0, double t_max,
                                            int n, double epsilon) {
  if (n < 1) throw ConfigError("autocorrelation grid needs at least two points");
  if (!(t_max > 0)) throw ConfigError("autocorrelation horizon must be positive");
  const OutputRows rows = rotated_output(sys, epsilon);
  const Eigen::MatrixXd bsf =
      sys.input_map * sys.input_spectrum * rows.fx.transpose();  // d x 1

  const double step = t_max / n;
  const Eigen::MatrixXd phi = (sys.drift * step).exp();

  // Evolve V across the grid, collecting w_i = V(t_i) L^T + B S F^T.
  std::vector<Eigen::VectorXd> w(n + 1);
  Eigen::MatrixXd v = 0.5 * (v0.v + v0.v.transpose());
  CovarianceMatrix cur{v, 0.0, sys.norm};
  w[0] = v * rows.lx.transpose() + bsf;
  for (int i = 1; i <= n; ++i) {
    const auto traj = evolve_covariance(sys, step, cur, -1, 2);
    cur = traj.back();
    w[i] = cur.v * rows.lx.transpose() + bsf;
  }

  // rk = L exp(M k step); C(t_i, t_j) = rk[j-i] . w[i] for j >= i.
  std::vector<Eigen::RowVectorXd> rk(n + 1);
  rk[0] = rows.lx;
  for (int k = 1; k <= n; ++k) rk[k] = rk[k - 1] * phi;

  Eigen::MatrixXd corr(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      corr(i, j) = rk[j - i].dot(w[i]);
      corr(j, i) = corr(i, j);
    }
  return corr;
}

double output_autocorrelation(const LinearSystem& sys, const CovarianceMatrix& v0, double t,
                              double t_prime, double epsilon) {
  if (t < 0 || t_prime < 0) throw ConfigError("correlation times must be non-negative");
  const double t_lo = std::min(t, t_prime), t_hi = std::max(t, t_prime);
  const OutputRows rows = rotated_output(sys, epsilon);
  const Eigen::MatrixXd bsf = sys.input_map * sys.input_spectrum * rows.fx.transpose();

  CovarianceMatrix cur = {0.5 * (v0.v + v0.v.transpose()), 0.0, sys.norm};
  if (t_lo > 0) cur = evolve_covariance(sys, t_lo, cur, -1, 2).back();
  const Eigen::VectorXd w = cur.v * rows.lx.transpose() + bsf;
  const Eigen::MatrixXd phi = (sys.drift * (t_hi - t_lo)).exp();
  return (rows.lx * phi).dot(w);
}

}  // namespace qmem
