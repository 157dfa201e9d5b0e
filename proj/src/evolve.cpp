#include "qmem/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qmem {

void validate_timeline(const ProtocolTimeline& timeline) {
  if (timeline.phases.empty()) throw ConfigError("timeline must contain at least one phase");
  for (const auto& ph : timeline.phases) {
    if (!(ph.duration > 0)) throw ConfigError("phase durations must be positive");
    if (ph.label == ProtocolPhase::Label::Store && ph.omega_rabi != 0)
      throw ConfigError("store phase requires the control field off");
    if (ph.label == ProtocolPhase::Label::Read && ph.input.kind != InputKind::Vacuum)
      throw ConfigError("read phase requires vacuum input");
  }
}

double max_timestep(const LinearSystem& sys) {
  return 0.01 / sys.max_eigen_modulus();
}

namespace {

void check_psd(const Eigen::MatrixXd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-9 * v.trace())
    throw NumericError("covariance lost positive semidefiniteness");
}

// One RK4 step of dV/dt = M V + V M^T + D with constant coefficients.
struct Rk4Workspace {
  Eigen::MatrixXd k1, k2, k3, k4, tmp;

  void resize(int d) {
    k1.resize(d, d);
    k2.resize(d, d);
    k3.resize(d, d);
    k4.resize(d, d);
    tmp.resize(d, d);
  }

  static void deriv(const Eigen::MatrixXd& m, const Eigen::MatrixXd& d,
                    const Eigen::MatrixXd& v, Eigen::MatrixXd& out) {
    out.noalias() = m * v;
    out.noalias() += v * m.transpose();
    out += d;
  }

  void step(const Eigen::MatrixXd& m, const Eigen::MatrixXd& d, Eigen::MatrixXd& v,
            double h) {
    deriv(m, d, v, k1);
    tmp = v + 0.5 * h * k1;
    deriv(m, d, tmp, k2);
    tmp = v + 0.5 * h * k2;
    deriv(m, d, tmp, k3);
    tmp = v + h * k3;
    deriv(m, d, tmp, k4);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    v = 0.5 * (v + v.transpose()).eval();
  }
};

}  // namespace

CovarianceTrajectory evolve_covariance(const std::vector<LinearSystem>& systems,
                                       const ProtocolTimeline& timeline,
                                       const CovarianceMatrix& v0, double dt,
                                       int max_samples_per_phase) {
  validate_timeline(timeline);
  if (systems.size() != timeline.phases.size())
    throw ConfigError("one linear system per phase is required");
  if (max_samples_per_phase < 2) throw ConfigError("need at least two samples per phase");

  // Per-phase step bound; an explicit dt must respect every phase's bound,
  // auto (dt <= 0) takes the largest admissible step per phase.
  std::vector<double> bound(systems.size());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    bound[i] = max_timestep(systems[i]);
    if (dt > 0 && dt > bound[i] * (1.0 + 1e-12))
      throw ConfigError("dt exceeds the integrator accuracy bound 0.01/max|eig|");
  }

  const int d = systems.front().dim();
  if (v0.v.rows() != d || v0.v.cols() != d)
    throw ConfigError("initial covariance has the wrong dimension");
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (systems[i].dim() != d) throw ConfigError("phase systems must share one basis");
    if (systems[i].params.front().omega_rabi != timeline.phases[i].omega_rabi)
      throw ConfigError("phase system control field does not match the timeline");
  }

  CovarianceTrajectory traj;
  traj.norm = systems.front().norm;
  Eigen::MatrixXd v = 0.5 * (v0.v + v0.v.transpose());
  double t = v0.time;
  traj.t.push_back(t);
  traj.v.push_back(v);

  Rk4Workspace ws;
  ws.resize(d);
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const Eigen::MatrixXd m = systems[i].drift;
    const Eigen::MatrixXd diff = systems[i].total_diffusion();
    const double duration = timeline.phases[i].duration;
    const double step_cap = dt > 0 ? dt : bound[i];
    const long n = std::max(1L, std::lround(std::ceil(duration / step_cap - 1e-12)));
    const double h = duration / static_cast<double>(n);
    const long stride = std::max(1L, n / (max_samples_per_phase - 1));
    for (long k = 0; k < n; ++k) {
      ws.step(m, diff, v, h);
      if ((k + 1) % stride == 0 || k + 1 == n) {
        traj.t.push_back(t + (k + 1) * h);
        traj.v.push_back(v);
        check_psd(v);
      }
    }
    t += duration;
  }
  return traj;
}

CovarianceTrajectory evolve_covariance(const LinearSystem& sys, double duration,
                                       const CovarianceMatrix& v0, double dt,
                                       int max_samples) {
  ProtocolTimeline tl;
  ProtocolPhase ph;
  ph.label = ProtocolPhase::Label::Write;
  ph.duration = duration;
  ph.omega_rabi = sys.params.front().omega_rabi;
  tl.phases.push_back(ph);
  return evolve_covariance(std::vector<LinearSystem>{sys}, tl, v0, dt, max_samples);
}

}  // namespace qmem
