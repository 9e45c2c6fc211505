#ifndef MIMOQ_CHANNEL_HPP
#define MIMOQ_CHANNEL_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "mimoq/rng.hpp"
#include "mimoq/scenario.hpp"

namespace mimoq {

// One draw of the M x N uplink channel, kept together with its
// deterministic/random decomposition:
//   composite.col(n) = sqrt(beta_n) * ( sqrt(K_n/(K_n+1)) * steering.col(n)
//                                     + sqrt(1/(K_n+1))   * scatter.col(n) )
struct ChannelRealization {
  Eigen::MatrixXcd composite;  // G
  Eigen::MatrixXcd steering;   // unit-modulus ULA response per user
  Eigen::MatrixXcd scatter;    // i.i.d. CN(0,1)
  std::vector<UserLink> users;
};

// ULA response matrix: entry (m, n) = exp(-j (m-1) 2*pi*d_over_lambda * sin theta_n).
Eigen::MatrixXcd steering_matrix(int num_antennas,
                                 const std::vector<double>& thetas,
                                 double d_over_lambda);

// Real-valued inner-product kernel of two ULA steering vectors at
// half-wavelength spacing:
//   sin(M*pi*(sin a - sin b)/2) / sin(pi*(sin a - sin b)/2),
// with the removable limits (value +-M) substituted when the denominator
// vanishes. |steering_inner_product| equals |s_a^H s_b| for d/lambda = 1/2.
double steering_inner_product(int num_antennas, double theta_a, double theta_b);

ChannelRealization draw_channel(const std::vector<UserLink>& users,
                                int num_antennas, double d_over_lambda,
                                Rng& rng);

// Same draw with a precomputed steering matrix (it is constant across
// Monte Carlo trials). Consumes the identical RNG sequence.
ChannelRealization draw_channel(const std::vector<UserLink>& users,
                                const Eigen::MatrixXcd& steering, Rng& rng);

// Debug dump. Line 1: "M,N". Then the three matrices in the order
// composite, steering, scatter, each as M rows of 2N comma-separated
// values (re, im interleaved, row-major).
void dump_realization(const ChannelRealization& real, std::ostream& os);

}  // namespace mimoq

#endif
