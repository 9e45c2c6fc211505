#include "mimoq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mimoq/analytic.hpp"
#include "mimoq/csv.hpp"
#include "mimoq/estimation.hpp"
#include "mimoq/quantization.hpp"
#include "mimoq/rng.hpp"
#include "mimoq/spectral_efficiency.hpp"

namespace mimoq {

const char* const kFig1Header = "M,bits,power_mode,se_sim,se_sim_stderr,se_analytic";
const char* const kFig2Header = "K_db,M,bits,power_mode,se,se_ideal,ratio";
const char* const kSweepHeader =
    "sweep_var,sweep_value,csi,power_mode,M,bits,K_db,se_sim,se_sim_stderr,se_analytic";
const char* const kRhoTableHeader = "bits,rho,kappa";
const char* const kValidateAqnmHeader = "bits,rho_model,rho_empirical,abs_error";

void ExperimentSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("experiment grid must be nonempty");
  if (trials < 100) throw std::invalid_argument("trials must be >= 100");
  if (sweep_var != "M" && sweep_var != "bits" && sweep_var != "K_db" &&
      sweep_var != "alpha")
    throw std::invalid_argument("sweep_var must be M, bits, K_db or alpha");
  if (csi != "perfect" && csi != "imperfect" && csi != "both")
    throw std::invalid_argument("csi must be perfect, imperfect or both");
  if (sweep_var != "bits") {
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (std::stod(grid[i - 1]) > std::stod(grid[i]))
        throw std::invalid_argument("experiment grid must be ascending");
  }
}

std::uint64_t user_drop_seed(std::uint64_t seed) {
  return mix_seed(seed ^ 0x44524f50ull);
}

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string power_mode_label(const PowerScaling& scaling) {
  if (scaling.mode == PowerScalingMode::kFixed) return "fixed";
  return "scaled_alpha" + csv_number(scaling.alpha);
}

std::vector<std::string> grid_tokens(const std::vector<double>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(csv_number(v));
  return out;
}

std::vector<UserLink> dropped_users(const AppConfig& cfg, int num_users,
                                    double k_linear, std::uint64_t drop_seed) {
  std::vector<UserLink> users = drop_users(cfg.geometry, num_users, drop_seed);
  for (UserLink& u : users) u.rician_k = k_linear;
  return users;
}

double analytic_sum_se(const std::vector<UserLink>& users, int m,
                       const QuantizerModel& q, double p_u, double p_p,
                       bool imperfect) {
  AnalyticInputs in;
  in.users = users;
  in.num_antennas = m;
  in.q = q;
  in.p_u = p_u;
  in.p_p = p_p;
  double sum = 0.0;
  for (int n = 0; n < static_cast<int>(users.size()); ++n)
    sum += imperfect ? se_imperfect_approx(in, n) : se_perfect_approx(in, n);
  return sum;
}

struct SimPoint {
  double se = 0.0;
  double stderr_sum = 0.0;
  double analytic = 0.0;
};

// One simulated sweep point, optionally averaged over user drops.
SimPoint simulate_point(const AppConfig& cfg, const SystemConfig& sys,
                        double k_linear, const QuantizerModel& q, CsiMode csi) {
  const McOptions opts{cfg.experiment.threads, cfg.d_over_lambda};
  const double p_u = effective_power(sys, sys.num_antennas);
  const double p_p = static_cast<double>(sys.pilot_length) * p_u;
  const int drops = cfg.experiment.drop_average ? std::max(1, cfg.experiment.drops) : 1;

  SimPoint point;
  double stderr_sq = 0.0;
  for (int d = 0; d < drops; ++d) {
    std::uint64_t drop_seed = user_drop_seed(sys.rng_seed);
    if (d > 0) drop_seed = mix_seed(drop_seed ^ static_cast<std::uint64_t>(d));
    const std::vector<UserLink> users =
        dropped_users(cfg, sys.num_users, k_linear, drop_seed);
    const SEResult res =
        monte_carlo_se(sys, users, q, csi, cfg.experiment.trials, opts);
    point.se += res.sum_se;
    stderr_sq += res.sum_std_err * res.sum_std_err;
    point.analytic += analytic_sum_se(users, sys.num_antennas, q, p_u, p_p,
                                      csi == CsiMode::kImperfect);
  }
  point.se /= drops;
  point.analytic /= drops;
  point.stderr_sum = std::sqrt(stderr_sq) / drops;
  return point;
}

}  // namespace

void run_fig1(const AppConfig& cfg, std::ostream& os) {
  constexpr int kNumUsers = 10;
  constexpr double kRicianDb = 10.0;
  const std::vector<std::string> bits_grid = {"1", "2", "inf"};

  ExperimentSpec spec;
  spec.name = "fig1";
  spec.sweep_var = "M";
  spec.grid = grid_tokens(cfg.experiment.m_grid);
  spec.trials = cfg.experiment.trials;
  spec.validate();

  SystemConfig base = cfg.system;
  base.num_users = kNumUsers;
  base.pilot_length = std::max(base.pilot_length, kNumUsers);
  const double k_linear = db_to_linear(kRicianDb);

  os << kFig1Header << '\n';
  for (const std::string& m_tok : spec.grid) {
    const int m = static_cast<int>(std::stod(m_tok));
    for (const PowerScalingMode mode :
         {PowerScalingMode::kFixed, PowerScalingMode::kScaledByM}) {
      SystemConfig sys = base;
      sys.num_antennas = m;
      sys.scaling.mode = mode;
      sys.scaling.alpha = 1.0;
      for (const std::string& b_tok : bits_grid) {
        sys.adc = parse_adc_resolution(b_tok);
        const QuantizerModel q = QuantizerModel::for_resolution(sys.adc);
        const SimPoint point =
            simulate_point(cfg, sys, k_linear, q, CsiMode::kPerfect);
        write_csv_row(os, {csv_number(m), b_tok, power_mode_label(sys.scaling),
                           csv_number(point.se), csv_number(point.stderr_sum),
                           csv_number(point.analytic)});
      }
    }
  }
}

void run_fig2(const AppConfig& cfg, std::ostream& os) {
  constexpr int kNumUsers = 10;

  ExperimentSpec spec;
  spec.name = "fig2";
  spec.sweep_var = "K_db";
  spec.grid = grid_tokens(cfg.experiment.k_db_grid);
  spec.trials = cfg.experiment.trials;
  spec.normalize_to_ideal = true;
  spec.validate();

  os << kFig2Header << '\n';
  for (const std::string& k_tok : spec.grid) {
    const double k_linear = db_to_linear(std::stod(k_tok));
    const std::vector<UserLink> users = dropped_users(
        cfg, kNumUsers, k_linear, user_drop_seed(cfg.system.rng_seed));
    for (double m_val : cfg.experiment.m_grid) {
      const int m = static_cast<int>(m_val);
      for (const PowerScalingMode mode :
           {PowerScalingMode::kFixed, PowerScalingMode::kScaledByM}) {
        SystemConfig sys = cfg.system;
        sys.num_users = kNumUsers;
        sys.pilot_length = std::max(sys.pilot_length, kNumUsers);
        sys.num_antennas = m;
        sys.scaling.mode = mode;
        sys.scaling.alpha = 1.0;
        const double p_u = effective_power(sys, m);
        const double p_p = static_cast<double>(sys.pilot_length) * p_u;
        const double ideal = analytic_sum_se(users, m, QuantizerModel::infinite(),
                                             p_u, p_p, false);
        for (const std::string& b_tok : cfg.experiment.bits_grid) {
          const QuantizerModel q =
              QuantizerModel::for_resolution(parse_adc_resolution(b_tok));
          const double se = analytic_sum_se(users, m, q, p_u, p_p, false);
          write_csv_row(os, {k_tok, csv_number(m), b_tok,
                             power_mode_label(sys.scaling), csv_number(se),
                             csv_number(ideal), csv_number(se / ideal)});
        }
      }
    }
  }
}

void run_sweep(const AppConfig& cfg, std::ostream& os) {
  const ExperimentConfig& e = cfg.experiment;

  ExperimentSpec spec;
  spec.name = e.name;
  spec.sweep_var = e.sweep_var;
  spec.csi = e.csi;
  spec.trials = e.trials;
  if (e.sweep_var == "M") spec.grid = grid_tokens(e.m_grid);
  else if (e.sweep_var == "bits") spec.grid = e.bits_grid;
  else if (e.sweep_var == "K_db") spec.grid = grid_tokens(e.k_db_grid);
  else spec.grid = grid_tokens(e.alpha_grid);
  spec.validate();

  std::vector<CsiMode> modes;
  if (spec.csi == "perfect" || spec.csi == "both") modes.push_back(CsiMode::kPerfect);
  if (spec.csi == "imperfect" || spec.csi == "both") modes.push_back(CsiMode::kImperfect);

  os << kSweepHeader << '\n';
  for (const std::string& tok : spec.grid) {
    SystemConfig sys = cfg.system;
    double k_db = e.k_db;
    if (spec.sweep_var == "M") sys.num_antennas = static_cast<int>(std::stod(tok));
    else if (spec.sweep_var == "bits") sys.adc = parse_adc_resolution(tok);
    else if (spec.sweep_var == "K_db") k_db = std::stod(tok);
    else {
      sys.scaling.mode = PowerScalingMode::kScaledByM;
      sys.scaling.alpha = std::stod(tok);
    }
    const QuantizerModel q = QuantizerModel::for_resolution(sys.adc);
    for (CsiMode csi : modes) {
      const SimPoint point =
          simulate_point(cfg, sys, db_to_linear(k_db), q, csi);
      write_csv_row(
          os, {spec.sweep_var, tok,
               csi == CsiMode::kPerfect ? "perfect" : "imperfect",
               power_mode_label(sys.scaling), csv_number(sys.num_antennas),
               sys.adc.to_string(), csv_number(k_db), csv_number(point.se),
               csv_number(point.stderr_sum), csv_number(point.analytic)});
    }
  }
}

void run_rho_table(int max_bits, std::ostream& os) {
  if (max_bits < 1 || max_bits > 12)
    throw std::invalid_argument("max_bits must lie in [1, 12]");
  os << kRhoTableHeader << '\n';
  for (int b = 1; b <= max_bits; ++b) {
    const double rho = rho_for_bits(b);
    write_csv_row(os, {csv_number(b), csv_number(rho), csv_number(1.0 - rho)});
  }
}

bool run_validate_aqnm(const std::vector<int>& bits_grid, long samples,
                       std::uint64_t seed, std::ostream& os) {
  if (bits_grid.empty()) throw std::invalid_argument("bits grid must be nonempty");
  for (int b : bits_grid)
    if (b < 1 || b > 8)
      throw std::invalid_argument("validate-aqnm bit counts must lie in [1, 8]");
  if (samples < 1000) throw std::invalid_argument("need at least 1000 samples");

  os << kValidateAqnmHeader << '\n';
  bool all_ok = true;
  constexpr Eigen::Index kChunk = 4096;
  for (int b : bits_grid) {
    const ScalarQuantizer sq = design_lloyd_max(b);
    const double rho_model = rho_for_bits(b);
    Rng rng(mix_seed(seed ^ static_cast<std::uint64_t>(b)));

    // Unit-variance complex Gaussian input; each real component has
    // variance 1/2, which is exactly the AGC scale.
    const Eigen::VectorXd scales =
        Eigen::VectorXd::Constant(kChunk, std::sqrt(0.5));
    double err_energy = 0.0;
    double signal_energy = 0.0;
    long remaining = samples;
    while (remaining > 0) {
      const Eigen::Index n = std::min<long>(kChunk, remaining);
      Eigen::VectorXcd y(n);
      for (Eigen::Index i = 0; i < n; ++i) y(i) = rng.complex_normal();
      const Eigen::VectorXcd yq =
          quantize_vector(y, sq, scales.head(n));
      err_energy += (y - yq).squaredNorm();
      signal_energy += y.squaredNorm();
      remaining -= n;
    }
    const double rho_empirical = err_energy / signal_energy;
    const double abs_error = std::abs(rho_empirical - rho_model);
    all_ok = all_ok && abs_error < 1e-3;
    write_csv_row(os, {csv_number(b), csv_number(rho_model),
                       csv_number(rho_empirical), csv_number(abs_error)});
  }
  return all_ok;
}

}  // namespace mimoq
