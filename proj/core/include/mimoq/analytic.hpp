#ifndef MIMOQ_ANALYTIC_HPP
#define MIMOQ_ANALYTIC_HPP

#include <vector>

#include "mimoq/quantization.hpp"
#include "mimoq/scenario.hpp"

namespace mimoq {

// Inputs of the closed-form SE approximations. p_p is only read by the
// imperfect-CSI expression.
struct AnalyticInputs {
  std::vector<UserLink> users;
  int num_antennas = 1;
  QuantizerModel q = QuantizerModel::infinite();
  double p_u = 1.0;
  double p_p = 1.0;
};

// Closed-form approximation of the ergodic per-user SE for MRC with
// perfect CSI over Rician fading and a b-bit ADC front end. Exact moment
// ratio E{signal}/E{interference+noise} inside log2(1 + .).
double se_perfect_approx(const AnalyticInputs& in, int n);

// Same under MMSE-estimated CSI with unquantized pilots.
double se_imperfect_approx(const AnalyticInputs& in, int n);

// Large-array limits under power scaling p_u = E_u / M^alpha.
// Perfect CSI, alpha = 1:
double se_limit_perfect_scaled(double kappa, double e_u, double beta);
// Imperfect CSI, finite-M pre-limit form, any alpha (warns outside (1/2, 1]):
double se_limit_imperfect_general(double kappa, double e_u, double beta,
                                  double rician_k, double tau, double alpha,
                                  double num_antennas);
// Imperfect CSI, alpha = 1/2, K = 0:
double se_limit_imperfect_half_scaling(double kappa, double tau, double e_u,
                                       double beta);
// Imperfect CSI, alpha = 1:
double se_limit_imperfect_full_scaling(double kappa, double e_u, double beta,
                                       double rician_k);

// E{ g_n^H diag(G G^H) g_n } in closed form:
//   M*beta_n^2*(K_n^2 + 4K_n + 2)/(K_n+1)^2 + M*beta_n*sum_{i!=n} beta_i.
double diag_quadratic_moment(const std::vector<UserLink>& users,
                             int num_antennas, int n);

// E{ gh_n^H diag(Gh Gh^H) gh_n } for the channel estimate, with
// eta_i = p_p*beta_i/(1 + p_p*beta_i) in place of the unit scatter weight.
double diag_quadratic_moment_estimated(const std::vector<UserLink>& users,
                                       int num_antennas, int n, double p_p);

}  // namespace mimoq

#endif
