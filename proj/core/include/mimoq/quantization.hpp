#ifndef MIMOQ_QUANTIZATION_HPP
#define MIMOQ_QUANTIZATION_HPP

#include <Eigen/Dense>
#include <vector>

#include "mimoq/rng.hpp"
#include "mimoq/scenario.hpp"

namespace mimoq {

// Optimal (minimum-MSE) symmetric scalar quantizer for a zero-mean,
// unit-variance Gaussian input.
struct ScalarQuantizer {
  std::vector<double> levels;      // 2^b reconstruction points, ascending
  std::vector<double> thresholds;  // 2^b - 1 decision boundaries, ascending
  double distortion = 0.0;         // E[(x - Q(x))^2] for x ~ N(0,1)

  double quantize(double x) const;
};

// Lloyd-Max design for b in [1, 12]: alternate conditional-mean level
// updates and midpoint threshold updates until the largest level change
// is below 1e-12. Levels are kept exactly antisymmetric by construction.
ScalarQuantizer design_lloyd_max(int bits);

// Distortion factor of the optimal b-bit quantizer (unit-variance Gaussian
// input). Computed once per b via design_lloyd_max and cached.
double rho_for_bits(int bits);

// Linearized ADC model y_q = kappa*y + n_q with kappa = 1 - rho.
class QuantizerModel {
 public:
  static QuantizerModel for_resolution(AdcResolution res);
  static QuantizerModel infinite() { return QuantizerModel(AdcResolution::infinite(), 0.0); }
  // Synthetic distortion value, mainly for parameter sweeps in tests.
  static QuantizerModel for_distortion(double rho);

  AdcResolution resolution() const { return resolution_; }
  double rho() const { return rho_; }
  double kappa() const { return 1.0 - rho_; }

 private:
  QuantizerModel(AdcResolution res, double rho) : resolution_(res), rho_(rho) {}
  AdcResolution resolution_;
  double rho_;
};

// Quantizer output under the linear model: kappa*y + n_q, where n_q is
// drawn complex Gaussian with covariance kappa*rho*diag(p_u*G*G^H + I)
// for the given fixed channel realization. rho = 0 returns y unchanged.
Eigen::VectorXcd aqnm_output(const Eigen::VectorXcd& y, const QuantizerModel& q,
                             const Eigen::MatrixXcd& channel, double p_u,
                             Rng& rng);

// Per-antenna AGC scales for the true quantizer: std of each real
// component, sqrt((p_u * sum_i |g_mi|^2 + 1) / 2).
Eigen::VectorXd per_component_scales(const Eigen::MatrixXcd& channel, double p_u);

// True (nonlinear) quantization: each entry's real and imaginary parts are
// divided by the antenna's scale, quantized, and rescaled.
Eigen::VectorXcd quantize_vector(const Eigen::VectorXcd& y,
                                 const ScalarQuantizer& sq,
                                 const Eigen::VectorXd& per_component_scale);

}  // namespace mimoq

#endif
