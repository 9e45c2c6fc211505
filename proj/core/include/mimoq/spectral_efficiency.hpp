#ifndef MIMOQ_SPECTRAL_EFFICIENCY_HPP
#define MIMOQ_SPECTRAL_EFFICIENCY_HPP

#include <Eigen/Dense>
#include <vector>

#include "mimoq/estimation.hpp"
#include "mimoq/quantization.hpp"
#include "mimoq/scenario.hpp"

namespace mimoq {

enum class CsiMode { kPerfect, kImperfect };

struct SEResult {
  Eigen::VectorXd per_user_se;  // bits/s/Hz
  Eigen::VectorXd std_err;      // standard error of each per-user mean
  double sum_se = 0.0;          // == per_user_se.sum()
  double sum_std_err = 0.0;     // standard error of the per-trial sum
  long trials = 0;
};

// Post-combining SINR of user n for an MRC receiver matched to the true
// channel, under the linearized ADC model:
//   kappa*p_u*|g_n^H g_n|^2 /
//   (kappa*p_u*sum_{i!=n}|g_n^H g_i|^2 + ||g_n||^2
//      + rho*p_u*g_n^H diag(G G^H) g_n).
double sinr_perfect(const Eigen::MatrixXcd& channel, int n,
                    const QuantizerModel& q, double p_u);
Eigen::VectorXd sinr_perfect_all(const Eigen::MatrixXcd& channel,
                                 const QuantizerModel& q, double p_u);

// Same receiver matched to the channel estimate. The interference-plus-
// noise variance adds the estimation-error terms:
//   kappa*p_u*sum_{i!=n}|gh_n^H gh_i|^2
//   + kappa*p_u*||gh_n||^2 * sum_i sigma_i^2 + kappa*||gh_n||^2
//   + rho*gh_n^H diag(p_u*(Gh - Xi)(Gh - Xi)^H + I) gh_n.
double sinr_imperfect(const ChannelEstimate& est, int n,
                      const QuantizerModel& q, double p_u);
Eigen::VectorXd sinr_imperfect_all(const ChannelEstimate& est,
                                   const QuantizerModel& q, double p_u);

struct McOptions {
  int threads = 1;             // <= 0 selects hardware concurrency
  double d_over_lambda = 0.5;  // antenna spacing of the ULA
};

// Ergodic SE per user: average of log2(1 + SINR_n) over `trials`
// independent scatter draws (and pilot-noise draws under imperfect CSI).
// Trial t uses the stream Rng(config.rng_seed ^ t) and writes its own
// slot, so the result is bit-identical for any thread count. Requires
// trials >= 100.
SEResult monte_carlo_se(const SystemConfig& config,
                        const std::vector<UserLink>& users,
                        const QuantizerModel& q, CsiMode csi, long trials,
                        const McOptions& options = {});

}  // namespace mimoq

#endif
