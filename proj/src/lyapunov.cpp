#include "qmem/lyapunov.hpp"

namespace qmem {

Eigen::MatrixXd solve_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& m,
                               const Eigen::Ref<const Eigen::MatrixXd>& d, double tol) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || d.rows() != n || d.cols() != n)
    throw ConfigError("lyapunov solve requires square matrices of equal size");

  // vec(M V) = (I (x) M) vec(V), vec(V M^T) = (M (x) I) vec(V)
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j)
    op.block(j * n, j * n, n, n) += m;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) op(j * n + k, i * n + k) += m(j, i);

  Eigen::VectorXd rhs(n * n);
  for (int j = 0; j < n; ++j) rhs.segment(j * n, n) = -d.col(j);

  Eigen::VectorXd sol = op.partialPivLu().solve(rhs);
  Eigen::MatrixXd v(n, n);
  for (int j = 0; j < n; ++j) v.col(j) = sol.segment(j * n, n);
  v = 0.5 * (v + v.transpose()).eval();

  const double dnorm = std::max(d.norm(), 1e-300);
  const double residual = (m * v + v * m.transpose() + d).norm();
  if (!(residual <= tol * dnorm))
    throw NumericError("lyapunov residual " + std::to_string(residual / dnorm) +
                       " exceeds tolerance");
  return v;
}

CovarianceMatrix steady_covariance(const LinearSystem& sys) {
  if (!sys.stable())
    throw NumericError("steady covariance requires a stable drift matrix");
  CovarianceMatrix cov;
  cov.v = solve_lyapunov(sys.drift, sys.total_diffusion());
  cov.norm = sys.norm;
  return cov;
}

}  // namespace qmem
