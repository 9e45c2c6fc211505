#include "mimoq/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace mimoq {

Eigen::MatrixXcd steering_matrix(int num_antennas,
                                 const std::vector<double>& thetas,
                                 double d_over_lambda) {
  if (num_antennas < 1) throw std::invalid_argument("num_antennas must be >= 1");
  if (thetas.empty()) throw std::invalid_argument("thetas must be nonempty");
  if (d_over_lambda <= 0.0) throw std::invalid_argument("d_over_lambda must be > 0");

  const double k = 2.0 * std::numbers::pi * d_over_lambda;
  Eigen::MatrixXcd a(num_antennas, static_cast<Eigen::Index>(thetas.size()));
  for (Eigen::Index n = 0; n < a.cols(); ++n) {
    const double phase_step = -k * std::sin(thetas[static_cast<std::size_t>(n)]);
    for (Eigen::Index m = 0; m < num_antennas; ++m) {
      const double p = phase_step * static_cast<double>(m);
      a(m, n) = std::complex<double>(std::cos(p), std::sin(p));
    }
  }
  return a;
}

double steering_inner_product(int num_antennas, double theta_a, double theta_b) {
  const double delta = std::sin(theta_a) - std::sin(theta_b);
  const double m = static_cast<double>(num_antennas);
  constexpr double kEps = 1e-9;
  if (std::abs(delta) < kEps) return m;
  // With |theta| <= pi/2 the denominator also vanishes at delta = +-2
  // (end-fire pair); the limit there is (-1)^(M+1) * M.
  if (std::abs(std::abs(delta) - 2.0) < kEps)
    return (num_antennas % 2 == 0) ? -m : m;
  const double half = std::numbers::pi * delta / 2.0;
  return std::sin(m * half) / std::sin(half);
}

ChannelRealization draw_channel(const std::vector<UserLink>& users,
                                int num_antennas, double d_over_lambda,
                                Rng& rng) {
  std::vector<double> thetas;
  thetas.reserve(users.size());
  for (const UserLink& u : users) thetas.push_back(u.theta);
  return draw_channel(users, steering_matrix(num_antennas, thetas, d_over_lambda), rng);
}

ChannelRealization draw_channel(const std::vector<UserLink>& users,
                                const Eigen::MatrixXcd& steering, Rng& rng) {
  if (users.empty()) throw std::invalid_argument("users must be nonempty");
  if (steering.cols() != static_cast<Eigen::Index>(users.size()))
    throw std::invalid_argument("steering matrix column count != number of users");

  const Eigen::Index m_ant = steering.rows();
  const Eigen::Index n_users = steering.cols();

  ChannelRealization real;
  real.steering = steering;
  real.scatter.resize(m_ant, n_users);
  real.composite.resize(m_ant, n_users);
  real.users = users;

  for (Eigen::Index n = 0; n < n_users; ++n) {
    const UserLink& u = users[static_cast<std::size_t>(n)];
    const double k = u.rician_k;
    const double los_amp = std::sqrt(u.beta * k / (k + 1.0));
    const double scatter_amp = std::sqrt(u.beta / (k + 1.0));
    for (Eigen::Index m = 0; m < m_ant; ++m) {
      const std::complex<double> w = rng.complex_normal();
      real.scatter(m, n) = w;
      real.composite(m, n) = los_amp * steering(m, n) + scatter_amp * w;
    }
  }
  return real;
}

namespace {

void dump_matrix(const Eigen::MatrixXcd& a, std::ostream& os) {
  for (Eigen::Index m = 0; m < a.rows(); ++m) {
    for (Eigen::Index n = 0; n < a.cols(); ++n) {
      if (n > 0) os << ',';
      os << a(m, n).real() << ',' << a(m, n).imag();
    }
    os << '\n';
  }
}

}  // namespace

void dump_realization(const ChannelRealization& real, std::ostream& os) {
  os << real.composite.rows() << ',' << real.composite.cols() << '\n';
  dump_matrix(real.composite, os);
  dump_matrix(real.steering, os);
  dump_matrix(real.scatter, os);
}

}  // namespace mimoq
