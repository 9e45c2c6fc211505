#ifndef MIMOQ_ESTIMATION_HPP
#define MIMOQ_ESTIMATION_HPP

#include <Eigen/Dense>
#include <vector>

#include "mimoq/channel.hpp"
#include "mimoq/rng.hpp"
#include "mimoq/scenario.hpp"

namespace mimoq {

// MMSE channel estimate together with its error and design statistics.
// estimate - error == the true channel, exactly, per realization.
struct ChannelEstimate {
  Eigen::MatrixXcd estimate;   // G_hat
  Eigen::MatrixXcd error;      // G_hat - G
  Eigen::VectorXd error_var;   // per-user per-element error variance sigma_n^2
  Eigen::VectorXd pilot_gain;  // per-user estimator gain eta_n
};

// Estimator gain: eta_n = p_p*beta_n / (1 + p_p*beta_n).
double pilot_gain(const UserLink& user, double pilot_power);

// Per-element estimation error variance:
//   sigma_n^2 = beta_n / ((1 + p_p*beta_n) * (K_n + 1)).
// Satisfies eta_n*beta_n/(K_n+1) + sigma_n^2 == beta_n/(K_n+1): the
// scatter power splits exactly between estimate and error.
double estimation_error_variance(const UserLink& user, double pilot_power);

// De-spread pilot observation: Y = G + W/sqrt(p_p), W i.i.d. CN(0,1).
// This is the sufficient statistic after correlating the tau-symbol block
// with orthogonal unit-norm pilots (pilots bypass the ADCs). p_p = tau*p_u.
Eigen::MatrixXcd pilot_observe(const Eigen::MatrixXcd& channel, double pilot_power,
                               Rng& rng);

// Linear estimator applied to an observation Y:
//   g_hat_n = g_bar_n + eta_n * (y_n - g_bar_n),
// where g_bar_n = sqrt(K_n*beta_n/(K_n+1)) * steering.col(n) is the known
// deterministic mean. The true channel is passed alongside so the error
// matrix can be booked exactly. For K_n = 0 this is the MMSE filter for
// pilot_observe output and the reported error_var is the achieved one.
ChannelEstimate mmse_estimate(const Eigen::MatrixXcd& observation,
                              const Eigen::MatrixXcd& channel,
                              const std::vector<UserLink>& users,
                              const Eigen::MatrixXcd& steering,
                              double pilot_power);

// Draws an estimate of the given channel realization from the exact joint
// law implied by (pilot_gain, error_var):
//   g_hat_n = g_bar_n + eta_n*(g_n - g_bar_n) + sqrt(eta_n)*sigma_n*w_n,
// with w_n fresh CN(0, I). The resulting error is CN(0, sigma_n^2 I),
// independent of the estimate, and the estimate/error powers match
// error_var and pilot_gain exactly for every K. For K_n = 0 (all users)
// this coincides in law with mmse_estimate(pilot_observe(...)).
// Monte Carlo runs under imperfect CSI use this sampler.
ChannelEstimate estimate_channel(const Eigen::MatrixXcd& channel,
                                 const std::vector<UserLink>& users,
                                 const Eigen::MatrixXcd& steering,
                                 double pilot_power, Rng& rng);

}  // namespace mimoq

#endif
