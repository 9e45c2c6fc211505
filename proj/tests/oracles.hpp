// Loop-based reference implementations used as oracles in the tests.
// Kept deliberately naive and independent of the library's vectorized
// code paths.

#ifndef MIMOQ_TESTS_ORACLES_HPP
#define MIMOQ_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "mimoq/estimation.hpp"
#include "mimoq/scenario.hpp"

namespace mimoq::testing {

inline double oracle_sinr_perfect(const Eigen::MatrixXcd& g, int n, double kappa,
                                  double rho, double p_u) {
  const Eigen::Index m_ant = g.rows();
  const Eigen::Index n_users = g.cols();

  std::complex<double> self{};
  for (Eigen::Index m = 0; m < m_ant; ++m) self += std::conj(g(m, n)) * g(m, n);
  const double signal = kappa * p_u * std::norm(self);

  double interference = 0.0;
  for (Eigen::Index i = 0; i < n_users; ++i) {
    if (i == n) continue;
    std::complex<double> dot{};
    for (Eigen::Index m = 0; m < m_ant; ++m) dot += std::conj(g(m, n)) * g(m, i);
    interference += std::norm(dot);
  }
  interference *= kappa * p_u;

  double norm_sq = 0.0;
  for (Eigen::Index m = 0; m < m_ant; ++m) norm_sq += std::norm(g(m, n));

  double quad = 0.0;
  for (Eigen::Index m = 0; m < m_ant; ++m) {
    double row_power = 0.0;
    for (Eigen::Index i = 0; i < n_users; ++i) row_power += std::norm(g(m, i));
    quad += std::norm(g(m, n)) * row_power;
  }
  return signal / (interference + norm_sq + rho * p_u * quad);
}

inline double oracle_sinr_imperfect(const ChannelEstimate& est, int n,
                                    double kappa, double rho, double p_u) {
  const Eigen::MatrixXcd& gh = est.estimate;
  const Eigen::Index m_ant = gh.rows();
  const Eigen::Index n_users = gh.cols();

  std::complex<double> self{};
  for (Eigen::Index m = 0; m < m_ant; ++m) self += std::conj(gh(m, n)) * gh(m, n);
  const double signal = kappa * p_u * std::norm(self);

  double interference = 0.0;
  for (Eigen::Index i = 0; i < n_users; ++i) {
    if (i == n) continue;
    std::complex<double> dot{};
    for (Eigen::Index m = 0; m < m_ant; ++m) dot += std::conj(gh(m, n)) * gh(m, i);
    interference += std::norm(dot);
  }
  interference *= kappa * p_u;

  double norm_sq = 0.0;
  for (Eigen::Index m = 0; m < m_ant; ++m) norm_sq += std::norm(gh(m, n));
  double sigma_sum = 0.0;
  for (Eigen::Index i = 0; i < n_users; ++i) sigma_sum += est.error_var(i);

  double quad = 0.0;
  for (Eigen::Index m = 0; m < m_ant; ++m) {
    double row_power = 0.0;
    for (Eigen::Index i = 0; i < n_users; ++i)
      row_power += std::norm(gh(m, i) - est.error(m, i));
    quad += std::norm(gh(m, n)) * (p_u * row_power + 1.0);
  }
  const double denom = interference + kappa * p_u * norm_sq * sigma_sum +
                       kappa * norm_sq + rho * quad;
  return signal / denom;
}

// Rayleigh (all K = 0) specialization of the perfect-CSI SE approximation,
// written straight-line.
inline double oracle_rayleigh_se(const std::vector<UserLink>& users, int m,
                                 double kappa, double rho, double p_u, int n) {
  double beta_sum = 0.0;
  for (int i = 0; i < static_cast<int>(users.size()); ++i)
    if (i != n) beta_sum += users[static_cast<std::size_t>(i)].beta;
  const double beta_n = users[static_cast<std::size_t>(n)].beta;
  const double sinr = kappa * p_u * beta_n * (m + 1.0) /
                      (p_u * beta_sum + 2.0 * rho * p_u * beta_n + 1.0);
  return std::log2(1.0 + sinr);
}

// Ideal-ADC (rho = 0) specialization of the perfect-CSI SE approximation,
// coded independently of the general expression.
inline double oracle_unquantized_se(const std::vector<UserLink>& users, int m,
                                    double p_u,
                                    const Eigen::MatrixXd& steering_corr,
                                    int n) {
  const UserLink& user = users[static_cast<std::size_t>(n)];
  const double kn = user.rician_k;
  const double kn1 = kn + 1.0;
  const double numer =
      p_u * user.beta * (m * static_cast<double>(m) * kn1 * kn1 + 2.0 * m * kn + m);
  double cross = 0.0;
  for (int i = 0; i < static_cast<int>(users.size()); ++i) {
    if (i == n) continue;
    const UserLink& other = users[static_cast<std::size_t>(i)];
    const double ki = other.rician_k;
    const double corr = steering_corr(n, i);
    cross += other.beta *
             (kn * ki * corr * corr + m * (kn + ki) + m) / (ki + 1.0);
  }
  const double denom = p_u * kn1 * cross + m * kn1 * kn1;
  return std::log2(1.0 + numer / denom);
}

}  // namespace mimoq::testing

#endif
