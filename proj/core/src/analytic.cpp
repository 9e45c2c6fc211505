#include "mimoq/analytic.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "mimoq/channel.hpp"
#include "mimoq/estimation.hpp"

namespace mimoq {

namespace {

void check_user_index(const AnalyticInputs& in, int n) {
  if (n < 0 || n >= static_cast<int>(in.users.size()))
    throw std::invalid_argument("user index out of range");
  if (in.num_antennas < 1) throw std::invalid_argument("num_antennas must be >= 1");
}

}  // namespace

double se_perfect_approx(const AnalyticInputs& in, int n) {
  check_user_index(in, n);
  const double m = static_cast<double>(in.num_antennas);
  const double kappa = in.q.kappa();
  const double rho = in.q.rho();
  const UserLink& user = in.users[static_cast<std::size_t>(n)];
  const double kn = user.rician_k;
  const double kn1 = kn + 1.0;

  const double numer =
      kappa * in.p_u * user.beta * (m * m * kn1 * kn1 + 2.0 * m * kn + m);

  double cross = 0.0;      // sum_{i!=n} beta_i * Delta_i
  double beta_sum = 0.0;   // sum_{i!=n} beta_i
  for (std::size_t i = 0; i < in.users.size(); ++i) {
    if (static_cast<int>(i) == n) continue;
    const UserLink& other = in.users[i];
    const double ki = other.rician_k;
    const double corr =
        steering_inner_product(in.num_antennas, user.theta, other.theta);
    const double delta =
        (kn * ki * corr * corr + m * (kn + ki) + m) / (ki + 1.0);
    cross += other.beta * delta;
    beta_sum += other.beta;
  }

  const double denom =
      kappa * in.p_u * kn1 * cross + m * kn1 * kn1 +
      rho * in.p_u * m *
          (user.beta * (kn * kn + 4.0 * kn + 2.0) + kn1 * kn1 * beta_sum);

  return std::log2(1.0 + numer / denom);
}

double se_imperfect_approx(const AnalyticInputs& in, int n) {
  check_user_index(in, n);
  const double m = static_cast<double>(in.num_antennas);
  const double kappa = in.q.kappa();
  const double rho = in.q.rho();
  const UserLink& user = in.users[static_cast<std::size_t>(n)];
  const double kn = user.rician_k;
  const double kn1 = kn + 1.0;
  const double eta_n = pilot_gain(user, in.p_p);

  const double numer =
      kappa * in.p_u * user.beta *
      (m * m * kn * kn + 2.0 * m * kn * eta_n * (1.0 + m) + (m * m + m) * eta_n * eta_n);

  double cross = 0.0;        // sum_{i!=n} beta_i * Delta_i (estimated channel)
  double error_var_sum = 0.0;
  double weighted_sum = 0.0;  // sum_{i!=n} beta_i/(K_i+1) * (K_i + eta_i)
  for (std::size_t i = 0; i < in.users.size(); ++i) {
    const UserLink& other = in.users[i];
    error_var_sum += estimation_error_variance(other, in.p_p);
    if (static_cast<int>(i) == n) continue;
    const double ki = other.rician_k;
    const double eta_i = pilot_gain(other, in.p_p);
    const double corr =
        steering_inner_product(in.num_antennas, user.theta, other.theta);
    const double delta = (kn * ki * corr * corr + m * ki * eta_n +
                          m * kn * eta_i + m * eta_n * eta_i) /
                         (ki + 1.0);
    cross += other.beta * delta;
    weighted_sum += other.beta / (ki + 1.0) * (ki + eta_i);
  }

  const double quant_moment =
      m * user.beta * (kn * kn + 4.0 * kn * eta_n + 2.0 * eta_n * eta_n) +
      m * kn1 * (kn + eta_n) * weighted_sum;

  const double denom = kappa * in.p_u * kn1 * cross +
                       m * (kn + eta_n) * kn1 * (in.p_u * error_var_sum + 1.0) +
                       rho * in.p_u * quant_moment;

  return std::log2(1.0 + numer / denom);
}

double se_limit_perfect_scaled(double kappa, double e_u, double beta) {
  return std::log2(1.0 + kappa * e_u * beta);
}

double se_limit_imperfect_general(double kappa, double e_u, double beta,
                                  double rician_k, double tau, double alpha,
                                  double num_antennas) {
  if (alpha <= 0.5 || alpha > 1.0)
    std::cerr << "note: power-scaling exponent " << alpha
              << " is outside the (1/2, 1] regime of this limit\n";
  const double sinr = kappa * e_u * beta *
                      (std::pow(num_antennas, alpha) * rician_k + tau * e_u * beta) /
                      (std::pow(num_antennas, 2.0 * alpha - 1.0) * (rician_k + 1.0));
  return std::log2(1.0 + sinr);
}

double se_limit_imperfect_half_scaling(double kappa, double tau, double e_u,
                                       double beta) {
  return std::log2(1.0 + kappa * tau * e_u * e_u * beta * beta);
}

double se_limit_imperfect_full_scaling(double kappa, double e_u, double beta,
                                       double rician_k) {
  return std::log2(1.0 + kappa * rician_k * e_u * beta / (rician_k + 1.0));
}

double diag_quadratic_moment(const std::vector<UserLink>& users,
                             int num_antennas, int n) {
  if (n < 0 || n >= static_cast<int>(users.size()))
    throw std::invalid_argument("user index out of range");
  const double m = static_cast<double>(num_antennas);
  const UserLink& user = users[static_cast<std::size_t>(n)];
  const double kn = user.rician_k;
  const double kn1 = kn + 1.0;
  double beta_sum = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i)
    if (static_cast<int>(i) != n) beta_sum += users[i].beta;
  return user.beta * user.beta * m * (kn * kn + 4.0 * kn + 2.0) / (kn1 * kn1) +
         m * user.beta * beta_sum;
}

double diag_quadratic_moment_estimated(const std::vector<UserLink>& users,
                                       int num_antennas, int n, double p_p) {
  if (n < 0 || n >= static_cast<int>(users.size()))
    throw std::invalid_argument("user index out of range");
  const double m = static_cast<double>(num_antennas);
  const UserLink& user = users[static_cast<std::size_t>(n)];
  const double kn = user.rician_k;
  const double kn1 = kn + 1.0;
  const double eta_n = pilot_gain(user, p_p);
  double weighted_sum = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (static_cast<int>(i) == n) continue;
    const UserLink& other = users[i];
    weighted_sum += other.beta / (other.rician_k + 1.0) *
                    (other.rician_k + pilot_gain(other, p_p));
  }
  return m * user.beta * user.beta / (kn1 * kn1) *
             (kn * kn + 4.0 * kn * eta_n + 2.0 * eta_n * eta_n) +
         m * user.beta / kn1 * (kn + eta_n) * weighted_sum;
}

}  // namespace mimoq
