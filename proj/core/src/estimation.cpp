#include "mimoq/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace mimoq {

double pilot_gain(const UserLink& user, double pilot_power) {
  if (pilot_power <= 0.0) throw std::invalid_argument("pilot_power must be > 0");
  const double pb = pilot_power * user.beta;
  return pb / (1.0 + pb);
}

double estimation_error_variance(const UserLink& user, double pilot_power) {
  if (pilot_power <= 0.0) throw std::invalid_argument("pilot_power must be > 0");
  return user.beta / ((1.0 + pilot_power * user.beta) * (user.rician_k + 1.0));
}

Eigen::MatrixXcd pilot_observe(const Eigen::MatrixXcd& channel, double pilot_power,
                               Rng& rng) {
  if (pilot_power <= 0.0) throw std::invalid_argument("pilot_power must be > 0");
  const double noise_amp = 1.0 / std::sqrt(pilot_power);
  Eigen::MatrixXcd y(channel.rows(), channel.cols());
  for (Eigen::Index n = 0; n < channel.cols(); ++n)
    for (Eigen::Index m = 0; m < channel.rows(); ++m)
      y(m, n) = channel(m, n) + noise_amp * rng.complex_normal();
  return y;
}

namespace {

void check_dims(const Eigen::MatrixXcd& channel, const std::vector<UserLink>& users,
                const Eigen::MatrixXcd& steering) {
  if (channel.cols() != static_cast<Eigen::Index>(users.size()) ||
      steering.cols() != channel.cols() || steering.rows() != channel.rows())
    throw std::invalid_argument("estimation: dimension mismatch");
}

Eigen::VectorXcd los_mean(const UserLink& u, const Eigen::MatrixXcd& steering,
                          Eigen::Index n) {
  const double amp = std::sqrt(u.rician_k * u.beta / (u.rician_k + 1.0));
  return amp * steering.col(n);
}

void fill_stats(ChannelEstimate& est, const std::vector<UserLink>& users,
                double pilot_power) {
  const Eigen::Index n_users = static_cast<Eigen::Index>(users.size());
  est.error_var.resize(n_users);
  est.pilot_gain.resize(n_users);
  for (Eigen::Index n = 0; n < n_users; ++n) {
    const UserLink& u = users[static_cast<std::size_t>(n)];
    est.error_var(n) = estimation_error_variance(u, pilot_power);
    est.pilot_gain(n) = pilot_gain(u, pilot_power);
  }
}

}  // namespace

ChannelEstimate mmse_estimate(const Eigen::MatrixXcd& observation,
                              const Eigen::MatrixXcd& channel,
                              const std::vector<UserLink>& users,
                              const Eigen::MatrixXcd& steering,
                              double pilot_power) {
  check_dims(channel, users, steering);
  if (observation.rows() != channel.rows() || observation.cols() != channel.cols())
    throw std::invalid_argument("estimation: observation dimension mismatch");

  ChannelEstimate est;
  est.estimate.resize(channel.rows(), channel.cols());
  for (Eigen::Index n = 0; n < channel.cols(); ++n) {
    const UserLink& u = users[static_cast<std::size_t>(n)];
    const Eigen::VectorXcd mean = los_mean(u, steering, n);
    const double gain = pilot_gain(u, pilot_power);
    est.estimate.col(n) = mean + gain * (observation.col(n) - mean);
  }
  est.error = est.estimate - channel;
  fill_stats(est, users, pilot_power);
  return est;
}

ChannelEstimate estimate_channel(const Eigen::MatrixXcd& channel,
                                 const std::vector<UserLink>& users,
                                 const Eigen::MatrixXcd& steering,
                                 double pilot_power, Rng& rng) {
  check_dims(channel, users, steering);

  ChannelEstimate est;
  est.estimate.resize(channel.rows(), channel.cols());
  fill_stats(est, users, pilot_power);
  for (Eigen::Index n = 0; n < channel.cols(); ++n) {
    const UserLink& u = users[static_cast<std::size_t>(n)];
    const Eigen::VectorXcd mean = los_mean(u, steering, n);
    const double gain = est.pilot_gain(n);
    const double innovation_amp = std::sqrt(gain * est.error_var(n));
    for (Eigen::Index m = 0; m < channel.rows(); ++m) {
      est.estimate(m, n) = mean(m) + gain * (channel(m, n) - mean(m)) +
                           innovation_amp * rng.complex_normal();
    }
  }
  est.error = est.estimate - channel;
  return est;
}

}  // namespace mimoq
