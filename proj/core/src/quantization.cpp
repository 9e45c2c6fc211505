#include "mimoq/quantization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace mimoq {

namespace {

constexpr int kMaxBits = 12;

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Upper tail P(X > x), full relative precision for x >= 0.
double upper_tail(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

// Mass of the cell (lo, hi) with 0 <= lo < hi. The tail difference avoids
// the cancellation that Phi(hi) - Phi(lo) suffers for far-out cells.
double cell_mass(double lo, double hi) {
  return upper_tail(lo) - upper_tail(hi);
}

// Conditional mean of N(0,1) restricted to (lo, hi), 0 <= lo < hi.
double truncated_mean(double lo, double hi) {
  return (normal_pdf(lo) - normal_pdf(hi)) / cell_mass(lo, hi);
}

// Stationarity residual of the positive half-levels and its tridiagonal
// Jacobian: F_j = c_j - E[X | cell_j], cells bounded by level midpoints
// (0 below the first cell, +inf above the last). Plain centroid/midpoint
// sweeps contract like 1 - O(4^-b) and cannot reach 1e-12 for b >= 6 in
// any reasonable iteration budget, so the fixed point is located by a
// damped Newton solve and the sweeps below only certify it.
struct NewtonSystem {
  std::vector<double> residual;
  std::vector<double> lower, diag, upper;  // tridiagonal Jacobian bands
};

void eval_system(const std::vector<double>& c, NewtonSystem& sys) {
  const std::size_t k = c.size();
  sys.residual.assign(k, 0.0);
  sys.lower.assign(k, 0.0);
  sys.diag.assign(k, 0.0);
  sys.upper.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const double a = (j == 0) ? 0.0 : 0.5 * (c[j - 1] + c[j]);
    const bool last = (j + 1 == k);
    const double b = last ? std::numeric_limits<double>::infinity()
                          : 0.5 * (c[j] + c[j + 1]);
    const double p = cell_mass(a, b);
    const double tm = (normal_pdf(a) - normal_pdf(b)) / p;
    sys.residual[j] = c[j] - tm;
    const double dtm_da = normal_pdf(a) * (tm - a) / p;
    const double dtm_db = last ? 0.0 : normal_pdf(b) * (b - tm) / p;
    sys.diag[j] = 1.0;
    if (j > 0) {
      sys.lower[j] = -0.5 * dtm_da;
      sys.diag[j] -= 0.5 * dtm_da;
    }
    if (!last) {
      sys.upper[j] = -0.5 * dtm_db;
      sys.diag[j] -= 0.5 * dtm_db;
    }
  }
}

// Thomas algorithm; bands are clobbered.
std::vector<double> solve_tridiagonal(NewtonSystem& sys) {
  const std::size_t k = sys.residual.size();
  std::vector<double> x(k);
  for (std::size_t j = 1; j < k; ++j) {
    const double w = sys.lower[j] / sys.diag[j - 1];
    sys.diag[j] -= w * sys.upper[j - 1];
    sys.residual[j] -= w * sys.residual[j - 1];
  }
  x[k - 1] = sys.residual[k - 1] / sys.diag[k - 1];
  for (std::size_t j = k - 1; j-- > 0;)
    x[j] = (sys.residual[j] - sys.upper[j] * x[j + 1]) / sys.diag[j];
  return x;
}

bool strictly_increasing_positive(const std::vector<double>& c) {
  if (c.front() <= 0.0) return false;
  for (std::size_t j = 1; j < c.size(); ++j)
    if (c[j] <= c[j - 1]) return false;
  return true;
}

// Rough inverse normal CDF (Acklam's rational approximation); used only to
// seed the Lloyd iteration near the fixed point.
double approx_normal_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) return -approx_normal_quantile(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double ScalarQuantizer::quantize(double x) const {
  const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), x);
  return levels[static_cast<std::size_t>(it - thresholds.begin())];
}

ScalarQuantizer design_lloyd_max(int bits) {
  if (bits < 1 || bits > kMaxBits)
    throw std::invalid_argument("quantizer bit count must lie in [1, 12]");

  const int n_levels = 1 << bits;
  const int half = n_levels / 2;

  // Work on the positive half; mirror afterwards. positive[j] is the level
  // for the cell (t_j, t_{j+1}) with t_0 = 0 and t_half = +inf. Seed at
  // the input quantiles, which sit close to the optimum.
  std::vector<double> positive(static_cast<std::size_t>(half));
  for (int j = 0; j < half; ++j) {
    const double p = (static_cast<double>(half + j) + 0.5) / n_levels;
    positive[static_cast<std::size_t>(j)] = approx_normal_quantile(p);
  }

  NewtonSystem sys;
  for (int iter = 0; iter < 200; ++iter) {
    eval_system(positive, sys);
    const std::vector<double> step = solve_tridiagonal(sys);
    double max_step = 0.0;
    for (double s : step) max_step = std::max(max_step, std::abs(s));
    double damping = 1.0;
    for (int halving = 0; halving < 60; ++halving) {
      std::vector<double> candidate = positive;
      for (std::size_t j = 0; j < candidate.size(); ++j)
        candidate[j] -= damping * step[j];
      if (strictly_increasing_positive(candidate)) {
        positive = std::move(candidate);
        break;
      }
      damping *= 0.5;
    }
    if (max_step < 1e-13) break;
  }

  // Certify with the centroid/midpoint alternation until the largest level
  // change drops below 1e-12 (one or two sweeps from the Newton solution).
  std::vector<double> bounds(static_cast<std::size_t>(half) + 1);
  constexpr double kTol = 1e-12;
  constexpr int kMaxIterations = 100000;
  int iter = 0;
  for (;; ++iter) {
    if (iter >= kMaxIterations)
      throw std::runtime_error("Lloyd-Max iteration failed to converge");
    bounds[0] = 0.0;
    for (int j = 1; j < half; ++j)
      bounds[static_cast<std::size_t>(j)] =
          0.5 * (positive[static_cast<std::size_t>(j - 1)] +
                 positive[static_cast<std::size_t>(j)]);
    bounds[static_cast<std::size_t>(half)] =
        std::numeric_limits<double>::infinity();

    double max_change = 0.0;
    for (int j = 0; j < half; ++j) {
      const double lo = bounds[static_cast<std::size_t>(j)];
      const double hi = bounds[static_cast<std::size_t>(j + 1)];
      const double c = truncated_mean(lo, hi);
      max_change = std::max(max_change,
                            std::abs(c - positive[static_cast<std::size_t>(j)]));
      positive[static_cast<std::size_t>(j)] = c;
    }
    if (max_change < kTol) break;
  }

  // Re-anchor the boundaries to the converged levels before reading off
  // the cell probabilities.
  bounds[0] = 0.0;
  for (int j = 1; j < half; ++j)
    bounds[static_cast<std::size_t>(j)] =
        0.5 * (positive[static_cast<std::size_t>(j - 1)] +
               positive[static_cast<std::size_t>(j)]);
  bounds[static_cast<std::size_t>(half)] = std::numeric_limits<double>::infinity();

  ScalarQuantizer sq;
  sq.levels.resize(static_cast<std::size_t>(n_levels));
  for (int j = 0; j < half; ++j) {
    sq.levels[static_cast<std::size_t>(half + j)] = positive[static_cast<std::size_t>(j)];
    sq.levels[static_cast<std::size_t>(half - 1 - j)] = -positive[static_cast<std::size_t>(j)];
  }
  sq.thresholds.resize(static_cast<std::size_t>(n_levels) - 1);
  for (std::size_t j = 0; j + 1 < sq.levels.size(); ++j)
    sq.thresholds[j] = 0.5 * (sq.levels[j] + sq.levels[j + 1]);
  sq.thresholds[static_cast<std::size_t>(half) - 1] = 0.0;  // exact by symmetry

  // D = 1 - sum_j P(cell_j) * c_j^2 for unit-variance input and centroid levels.
  double weighted_sq = 0.0;
  for (int j = 0; j < half; ++j) {
    const double lo = bounds[static_cast<std::size_t>(j)];
    const double hi = bounds[static_cast<std::size_t>(j + 1)];
    const double p = cell_mass(lo, hi);
    const double c = positive[static_cast<std::size_t>(j)];
    weighted_sq += p * c * c;
  }
  sq.distortion = 1.0 - 2.0 * weighted_sq;
  return sq;
}

double rho_for_bits(int bits) {
  if (bits < 1 || bits > kMaxBits)
    throw std::invalid_argument("quantizer bit count must lie in [1, 12]");
  static std::array<std::optional<double>, kMaxBits + 1> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(bits)];
  if (!slot) slot = design_lloyd_max(bits).distortion;
  return *slot;
}

QuantizerModel QuantizerModel::for_resolution(AdcResolution res) {
  if (res.is_infinite()) return infinite();
  return QuantizerModel(res, rho_for_bits(res.bit_count()));
}

QuantizerModel QuantizerModel::for_distortion(double rho) {
  if (rho < 0.0 || rho >= 1.0)
    throw std::invalid_argument("distortion factor must lie in [0, 1)");
  return QuantizerModel(AdcResolution::infinite(), rho);
}

Eigen::VectorXcd aqnm_output(const Eigen::VectorXcd& y, const QuantizerModel& q,
                             const Eigen::MatrixXcd& channel, double p_u,
                             Rng& rng) {
  if (y.size() != channel.rows())
    throw std::invalid_argument("aqnm_output: y length != channel row count");
  if (q.rho() == 0.0) return y;

  const double kr = q.kappa() * q.rho();
  Eigen::VectorXcd out(y.size());
  for (Eigen::Index m = 0; m < y.size(); ++m) {
    const double receive_power = p_u * channel.row(m).squaredNorm() + 1.0;
    out(m) = q.kappa() * y(m) + std::sqrt(kr * receive_power) * rng.complex_normal();
  }
  return out;
}

Eigen::VectorXd per_component_scales(const Eigen::MatrixXcd& channel, double p_u) {
  Eigen::VectorXd s(channel.rows());
  for (Eigen::Index m = 0; m < channel.rows(); ++m)
    s(m) = std::sqrt((p_u * channel.row(m).squaredNorm() + 1.0) / 2.0);
  return s;
}

Eigen::VectorXcd quantize_vector(const Eigen::VectorXcd& y,
                                 const ScalarQuantizer& sq,
                                 const Eigen::VectorXd& per_component_scale) {
  if (y.size() != per_component_scale.size())
    throw std::invalid_argument("quantize_vector: scale length != y length");
  Eigen::VectorXcd out(y.size());
  for (Eigen::Index m = 0; m < y.size(); ++m) {
    const double s = per_component_scale(m);
    if (s <= 0.0) throw std::invalid_argument("quantize_vector: scales must be > 0");
    out(m) = {s * sq.quantize(y(m).real() / s), s * sq.quantize(y(m).imag() / s)};
  }
  return out;
}

}  // namespace mimoq
