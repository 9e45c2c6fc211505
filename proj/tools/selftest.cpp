#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <vector>

#include "mimoq/analytic.hpp"
#include "mimoq/channel.hpp"
#include "mimoq/estimation.hpp"
#include "mimoq/quantization.hpp"
#include "mimoq/rng.hpp"
#include "mimoq/scenario.hpp"
#include "mimoq/spectral_efficiency.hpp"

namespace mimoq::tools {

namespace {

// Straight-line re-implementations used as oracles; deliberately loop
// based and independent of the library's vectorized paths.

double oracle_sinr_perfect(const Eigen::MatrixXcd& g, int n, double kappa,
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

double oracle_sinr_imperfect(const ChannelEstimate& est, int n, double kappa,
                             double rho, double p_u) {
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

// Rayleigh-only (all K = 0) closed form for the perfect-CSI approximation.
double oracle_rayleigh_se(const std::vector<UserLink>& users, int m,
                          double kappa, double rho, double p_u, int n) {
  double beta_sum = 0.0;
  for (int i = 0; i < static_cast<int>(users.size()); ++i)
    if (i != n) beta_sum += users[static_cast<std::size_t>(i)].beta;
  const double beta_n = users[static_cast<std::size_t>(n)].beta;
  const double sinr = kappa * p_u * beta_n * (m + 1.0) /
                      (p_u * beta_sum + 2.0 * rho * p_u * beta_n + 1.0);
  return std::log2(1.0 + sinr);
}

Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index n = 0; n < cols; ++n)
    for (Eigen::Index m = 0; m < rows; ++m) g(m, n) = rng.complex_normal();
  return g;
}

struct Reporter {
  std::ostream& os;
  int failures = 0;
  void check(const char* name, bool ok) {
    os << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  }
};

}  // namespace

int run_selftest(std::ostream& os) {
  Reporter r{os};

  // Quantizer distortion values.
  {
    const double rho1 = rho_for_bits(1);
    r.check("rho(1) equals 1 - 2/pi",
            std::abs(rho1 - (1.0 - 2.0 / std::numbers::pi)) < 1e-10);
    const double rho2 = rho_for_bits(2);
    const double rho3 = rho_for_bits(3);
    r.check("rho(2) in [0.117, 0.118]", rho2 > 0.117 && rho2 < 0.118);
    r.check("rho(3) in [0.0344, 0.0347]", rho3 > 0.0344 && rho3 < 0.0347);
    bool exact = true;
    bool monotone = true;
    double prev = 1.0;
    for (int b = 1; b <= 8; ++b) {
      const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(b));
      exact = exact && (q.kappa() + q.rho() == 1.0);
      monotone = monotone && (q.rho() < prev);
      prev = q.rho();
    }
    r.check("kappa + rho == 1 exactly for b in 1..8", exact);
    r.check("rho strictly decreasing for b in 1..8", monotone);
  }

  // Steering inner-product kernel versus the explicit inner product.
  {
    Rng rng(7);
    bool ok = true;
    for (int it = 0; it < 200 && ok; ++it) {
      const double ta = (rng.uniform() - 0.5) * std::numbers::pi;
      const double tb = (rng.uniform() - 0.5) * std::numbers::pi;
      const int m = 2 + static_cast<int>(rng.uniform() * 31);
      const Eigen::MatrixXcd s = steering_matrix(m, {ta, tb}, 0.5);
      const double direct = std::abs((s.col(0).adjoint() * s.col(1))(0, 0));
      ok = std::abs(std::abs(steering_inner_product(m, ta, tb)) - direct) < 1e-10;
    }
    r.check("steering kernel matches explicit inner product", ok);
  }

  // Vectorized SINRs versus loop oracles.
  {
    Rng rng(11);
    bool ok_p = true;
    bool ok_ip = true;
    for (int it = 0; it < 25; ++it) {
      const int m = 2 + static_cast<int>(rng.uniform() * 7);
      const int n_users = 1 + static_cast<int>(rng.uniform() * 4);
      const Eigen::MatrixXcd g = random_matrix(m, n_users, rng);
      const QuantizerModel q =
          QuantizerModel::for_resolution(AdcResolution::bits(1 + it % 3));
      const double p_u = 0.5 + rng.uniform() * 10.0;
      for (int n = 0; n < n_users; ++n) {
        const double a = sinr_perfect(g, n, q, p_u);
        const double b = oracle_sinr_perfect(g, n, q.kappa(), q.rho(), p_u);
        if (std::abs(a - b) > 1e-12 * std::abs(b)) ok_p = false;
      }
      std::vector<UserLink> users;
      for (int n = 0; n < n_users; ++n)
        users.push_back({0.5 + rng.uniform(), rng.uniform() * 4.0,
                         (rng.uniform() - 0.5) * std::numbers::pi});
      std::vector<double> thetas;
      for (const UserLink& u : users) thetas.push_back(u.theta);
      const Eigen::MatrixXcd steering = steering_matrix(m, thetas, 0.5);
      ChannelRealization real = draw_channel(users, steering, rng);
      const ChannelEstimate est =
          estimate_channel(real.composite, users, steering, 10.0, rng);
      for (int n = 0; n < n_users; ++n) {
        const double a = sinr_imperfect(est, n, q, p_u);
        const double b = oracle_sinr_imperfect(est, n, q.kappa(), q.rho(), p_u);
        if (std::abs(a - b) > 1e-12 * std::abs(b)) ok_ip = false;
      }
    }
    r.check("perfect-CSI SINR matches loop oracle", ok_p);
    r.check("imperfect-CSI SINR matches loop oracle", ok_ip);
  }

  // Rayleigh reduction of the closed-form SE.
  {
    Rng rng(13);
    bool ok = true;
    for (int it = 0; it < 20 && ok; ++it) {
      AnalyticInputs in;
      in.num_antennas = 4 + static_cast<int>(rng.uniform() * 200);
      const int n_users = 1 + static_cast<int>(rng.uniform() * 6);
      for (int n = 0; n < n_users; ++n)
        in.users.push_back({0.1 + rng.uniform(), 0.0,
                            (rng.uniform() - 0.5) * std::numbers::pi});
      in.q = QuantizerModel::for_resolution(AdcResolution::bits(1 + it % 4));
      in.p_u = 0.2 + rng.uniform() * 20.0;
      for (int n = 0; n < n_users; ++n) {
        const double general = se_perfect_approx(in, n);
        const double reduced = oracle_rayleigh_se(in.users, in.num_antennas,
                                                  in.q.kappa(), in.q.rho(),
                                                  in.p_u, n);
        if (std::abs(general - reduced) > 1e-12 * std::abs(reduced)) ok = false;
      }
    }
    r.check("K = 0 closed form reduces to the Rayleigh expression", ok);
  }

  // Power-scaling limits.
  {
    const double m_large = 1e8;
    const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(1));
    AnalyticInputs in;
    in.users = {{1.0, 1.0, 0.3}};
    in.num_antennas = static_cast<int>(m_large);
    in.q = q;
    in.p_u = 1.0 / m_large;
    in.p_p = in.p_u;  // tau = 1
    const double lim_p = se_limit_perfect_scaled(q.kappa(), 1.0, 1.0);
    r.check("perfect-CSI SE approaches its scaled-power limit",
            std::abs(se_perfect_approx(in, 0) - lim_p) < 1e-3);

    AnalyticInputs half = in;
    half.users = {{1.0, 0.0, 0.3}};
    half.p_u = 1.0 / std::sqrt(m_large);
    half.p_p = half.p_u;
    const double lim_h = se_limit_imperfect_half_scaling(q.kappa(), 1.0, 1.0, 1.0);
    r.check("imperfect-CSI SE approaches the alpha=1/2 limit",
            std::abs(se_imperfect_approx(half, 0) - lim_h) < 1e-3);

    AnalyticInputs full = in;
    full.p_u = 1.0 / m_large;
    full.p_p = full.p_u;
    const double lim_f = se_limit_imperfect_full_scaling(q.kappa(), 1.0, 1.0, 1.0);
    r.check("imperfect-CSI SE approaches the alpha=1 limit",
            std::abs(se_imperfect_approx(full, 0) - lim_f) < 1e-3);
  }

  // Estimation statistics.
  {
    const UserLink user{1.0, 1.0, 0.0};
    const double p_p = 10.0;
    const double scatter = user.beta / (user.rician_k + 1.0);
    const double split = pilot_gain(user, p_p) * scatter +
                         estimation_error_variance(user, p_p);
    r.check("estimate/error power split is exact", std::abs(split - scatter) < 1e-12);

    Rng rng(17);
    const int m = 64;
    const int reps = 4000;
    std::vector<UserLink> users = {user};
    const Eigen::MatrixXcd steering = steering_matrix(m, {user.theta}, 0.5);
    double err_power = 0.0;
    for (int i = 0; i < reps; ++i) {
      const ChannelRealization real = draw_channel(users, steering, rng);
      const ChannelEstimate est =
          estimate_channel(real.composite, users, steering, p_p, rng);
      err_power += est.error.squaredNorm();
    }
    err_power /= static_cast<double>(m) * reps;
    const double target = estimation_error_variance(user, p_p);
    r.check("empirical estimation error variance matches sigma^2",
            std::abs(err_power - target) < 0.02 * target);
  }

  // SE is nondecreasing in the ADC resolution at a fixed seed.
  {
    SystemConfig sys;
    sys.num_antennas = 32;
    sys.num_users = 4;
    sys.pilot_length = 4;
    sys.rng_seed = 5;
    CellGeometry geom;
    std::vector<UserLink> users = drop_users(geom, 4, 99);
    for (UserLink& u : users) u.rician_k = 10.0;
    Eigen::VectorXd prev;
    bool ok = true;
    for (const char* tok : {"1", "2", "3", "inf"}) {
      const QuantizerModel q =
          QuantizerModel::for_resolution(parse_adc_resolution(tok));
      const SEResult res =
          monte_carlo_se(sys, users, q, CsiMode::kPerfect, 500, {1, 0.5});
      if (prev.size() > 0 && ((res.per_user_se - prev).array() < 0.0).any())
        ok = false;
      prev = res.per_user_se;
    }
    r.check("SE nondecreasing in ADC bits at fixed seed", ok);
  }

  // Thread-count invariance of the Monte Carlo engine.
  {
    SystemConfig sys;
    sys.num_antennas = 16;
    sys.num_users = 3;
    sys.pilot_length = 4;
    sys.rng_seed = 21;
    CellGeometry geom;
    std::vector<UserLink> users = drop_users(geom, 3, 7);
    const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(2));
    const SEResult a = monte_carlo_se(sys, users, q, CsiMode::kImperfect, 400, {1, 0.5});
    const SEResult b = monte_carlo_se(sys, users, q, CsiMode::kImperfect, 400, {4, 0.5});
    r.check("Monte Carlo result independent of thread count",
            (a.per_user_se.array() == b.per_user_se.array()).all() &&
                (a.std_err.array() == b.std_err.array()).all());
  }

  os << (r.failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return r.failures;
}

}  // namespace mimoq::tools
