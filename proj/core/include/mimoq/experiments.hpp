#ifndef MIMOQ_EXPERIMENTS_HPP
#define MIMOQ_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mimoq/config_file.hpp"

namespace mimoq {

// A resolved sweep: what varies, over which grid, and how it is evaluated.
struct ExperimentSpec {
  std::string name;
  std::string sweep_var;           // M | bits | K_db | alpha
  std::vector<std::string> grid;   // nonempty; numeric grids ascending
  std::string csi = "perfect";     // perfect | imperfect | both
  long trials = 10000;
  std::string output_path;         // "" = caller-provided stream
  bool normalize_to_ideal = false;

  void validate() const;  // throws std::invalid_argument
};

// CSV headers (column names and order are stable).
extern const char* const kFig1Header;
extern const char* const kFig2Header;
extern const char* const kSweepHeader;
extern const char* const kRhoTableHeader;
extern const char* const kValidateAqnmHeader;

// SE versus antenna count, simulated and closed-form, for ADC resolutions
// {1, 2, inf} under both fixed and 1/M-scaled transmit power. Ten users
// with a common 10 dB Rician factor, perfect CSI.
// Columns: M,bits,power_mode,se_sim,se_sim_stderr,se_analytic (sum SE).
void run_fig1(const AppConfig& config, std::ostream& os);

// Normalized SE versus the Rician K-factor: closed-form sum SE of each
// resolution divided by the infinite-resolution value, for every
// (K, M, power mode) combination.
// Columns: K_db,M,bits,power_mode,se,se_ideal,ratio.
void run_fig2(const AppConfig& config, std::ostream& os);

// Generic sweep over M, bits, K_db or alpha per the [experiment] section.
// Columns: sweep_var,sweep_value,csi,power_mode,M,bits,K_db,
//          se_sim,se_sim_stderr,se_analytic.
void run_sweep(const AppConfig& config, std::ostream& os);

// Distortion-factor table of the optimal Gaussian quantizer.
// Columns: bits,rho,kappa.
void run_rho_table(int max_bits, std::ostream& os);

// Empirical distortion of the true Lloyd-Max quantizer on Gaussian input
// versus the model value. Returns false if any |error| >= 1e-3.
// Columns: bits,rho_model,rho_empirical,abs_error.
bool run_validate_aqnm(const std::vector<int>& bits_grid, long samples,
                       std::uint64_t seed, std::ostream& os);

// Stream used for user drops; distinct from the Monte Carlo trial streams
// seed ^ t.
std::uint64_t user_drop_seed(std::uint64_t seed);

}  // namespace mimoq

#endif
