#include "mimoq/spectral_efficiency.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "mimoq/channel.hpp"

namespace mimoq {

namespace {

// Shared SINR kernel. `receiver` is the matrix the MRC combiner is matched
// to (the true channel or the estimate); `effective` is the matrix inside
// diag(p_u * X X^H + I); `extra_noise_factor` multiplies ||a_n||^2 (kappa
// for perfect CSI, kappa*(p_u*sum sigma^2 + 1) for imperfect).
Eigen::VectorXd sinr_kernel(const Eigen::MatrixXcd& receiver,
                            const Eigen::MatrixXcd& effective,
                            const Eigen::VectorXd& extra_noise_factor,
                            const QuantizerModel& q, double p_u) {
  const Eigen::Index n_users = receiver.cols();
  const double kappa = q.kappa();
  const double rho = q.rho();

  // Gram matrix of the receiver columns and per-antenna receive powers.
  const Eigen::MatrixXcd gram = receiver.adjoint() * receiver;
  const Eigen::VectorXd receive_power =
      (p_u * effective.cwiseAbs2().rowwise().sum()).array() + 1.0;
  // quad(n) = a_n^H diag(p_u*X X^H + I) a_n
  const Eigen::VectorXd quad = receiver.cwiseAbs2().transpose() * receive_power;

  Eigen::VectorXd out(n_users);
  for (Eigen::Index n = 0; n < n_users; ++n) {
    const double norm_sq = gram(n, n).real();
    if (norm_sq <= 0.0)
      throw std::invalid_argument("degenerate (all-zero) channel column");
    const double signal = kappa * p_u * norm_sq * norm_sq;
    const double interference =
        kappa * p_u * (gram.col(n).squaredNorm() - norm_sq * norm_sq);
    const double noise = extra_noise_factor(n) * norm_sq + rho * quad(n);
    out(n) = signal / (interference + noise);
  }
  return out;
}

}  // namespace

Eigen::VectorXd sinr_perfect_all(const Eigen::MatrixXcd& channel,
                                 const QuantizerModel& q, double p_u) {
  // The AWGN term ||a_n||^2 splits as kappa + rho; the rho part rides in
  // quad(n) through the identity inside diag(p_u*G G^H + I).
  const Eigen::VectorXd factor =
      Eigen::VectorXd::Constant(channel.cols(), q.kappa());
  return sinr_kernel(channel, channel, factor, q, p_u);
}

double sinr_perfect(const Eigen::MatrixXcd& channel, int n,
                    const QuantizerModel& q, double p_u) {
  if (n < 0 || n >= channel.cols())
    throw std::invalid_argument("user index out of range");
  return sinr_perfect_all(channel, q, p_u)(n);
}

Eigen::VectorXd sinr_imperfect_all(const ChannelEstimate& est,
                                   const QuantizerModel& q, double p_u) {
  const double sigma_sum = est.error_var.sum();
  const Eigen::VectorXd factor = Eigen::VectorXd::Constant(
      est.estimate.cols(), q.kappa() * (p_u * sigma_sum + 1.0));
  const Eigen::MatrixXcd effective = est.estimate - est.error;
  return sinr_kernel(est.estimate, effective, factor, q, p_u);
}

double sinr_imperfect(const ChannelEstimate& est, int n,
                      const QuantizerModel& q, double p_u) {
  if (n < 0 || n >= est.estimate.cols())
    throw std::invalid_argument("user index out of range");
  return sinr_imperfect_all(est, q, p_u)(n);
}

SEResult monte_carlo_se(const SystemConfig& config,
                        const std::vector<UserLink>& users,
                        const QuantizerModel& q, CsiMode csi, long trials,
                        const McOptions& options) {
  config.validate();
  if (trials < 100) throw std::invalid_argument("trials must be >= 100");
  if (static_cast<int>(users.size()) != config.num_users)
    throw std::invalid_argument("user list size != config.num_users");

  const int m_ant = config.num_antennas;
  const Eigen::Index n_users = static_cast<Eigen::Index>(users.size());
  const double p_u = effective_power(config, m_ant);
  const double p_p = static_cast<double>(config.pilot_length) * p_u;

  std::vector<double> thetas;
  thetas.reserve(users.size());
  for (const UserLink& u : users) thetas.push_back(u.theta);
  const Eigen::MatrixXcd steering =
      steering_matrix(m_ant, thetas, options.d_over_lambda);

  // Every trial fills its own row; the reduction below walks rows in trial
  // order, so scheduling cannot change the result.
  Eigen::MatrixXd se(trials, n_users);

  const auto run_range = [&](long begin, long end) {
    for (long t = begin; t < end; ++t) {
      Rng rng(config.rng_seed ^ static_cast<std::uint64_t>(t));
      const ChannelRealization real = draw_channel(users, steering, rng);
      Eigen::VectorXd sinr;
      if (csi == CsiMode::kPerfect) {
        sinr = sinr_perfect_all(real.composite, q, p_u);
      } else {
        const ChannelEstimate est =
            estimate_channel(real.composite, users, steering, p_p, rng);
        sinr = sinr_imperfect_all(est, q, p_u);
      }
      for (Eigen::Index n = 0; n < n_users; ++n)
        se(t, n) = std::log2(1.0 + sinr(n));
    }
  };

  int n_threads = options.threads;
  if (n_threads <= 0)
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
  n_threads = static_cast<int>(std::max<long>(1, std::min<long>(n_threads, trials)));

  if (n_threads == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    const long chunk = (trials + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
      const long begin = w * chunk;
      const long end = std::min(trials, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }

  SEResult result;
  result.trials = trials;
  result.per_user_se = se.colwise().mean();
  result.std_err.resize(n_users);
  for (Eigen::Index n = 0; n < n_users; ++n) {
    const double mean = result.per_user_se(n);
    double ss = 0.0;
    for (long t = 0; t < trials; ++t) {
      const double d = se(t, n) - mean;
      ss += d * d;
    }
    result.std_err(n) =
        std::sqrt(ss / (static_cast<double>(trials) * (trials - 1.0)));
  }
  result.sum_se = result.per_user_se.sum();
  const Eigen::VectorXd trial_sums = se.rowwise().sum();
  const double sum_mean = trial_sums.mean();
  double ss = 0.0;
  for (long t = 0; t < trials; ++t) {
    const double d = trial_sums(t) - sum_mean;
    ss += d * d;
  }
  result.sum_std_err =
      std::sqrt(ss / (static_cast<double>(trials) * (trials - 1.0)));
  return result;
}

}  // namespace mimoq
