#ifndef MIMOQ_SCENARIO_HPP
#define MIMOQ_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mimoq/rng.hpp"

namespace mimoq {

// ADC word length: a small positive bit count, or infinite (ideal ADC).
class AdcResolution {
 public:
  static AdcResolution infinite() { return AdcResolution(0); }
  static AdcResolution bits(int b);

  bool is_infinite() const { return b_ == 0; }
  int bit_count() const;  // throws for the infinite resolution
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(b_); }

  friend bool operator==(AdcResolution a, AdcResolution b) { return a.b_ == b.b_; }

 private:
  explicit AdcResolution(int b) : b_(b) {}
  int b_;  // 0 encodes infinite
};

AdcResolution parse_adc_resolution(const std::string& token);

enum class PowerScalingMode {
  kFixed,      // transmit power independent of the array size
  kScaledByM,  // p_u = reference_energy / M^alpha
};

struct PowerScaling {
  PowerScalingMode mode = PowerScalingMode::kFixed;
  double alpha = 1.0;              // exponent in (0, 1], kScaledByM only
  double reference_energy = 10.0;  // E_u, linear (noise-normalized)
};

// Global system parameters. Powers are linear and noise-normalized; dB
// values are converted at the CLI boundary.
struct SystemConfig {
  int num_antennas = 128;
  int num_users = 10;
  double transmit_power = 10.0;  // p_u, used in kFixed mode
  AdcResolution adc = AdcResolution::bits(2);
  int pilot_length = 10;          // tau, >= num_users
  int coherence_interval = 196;   // T, carried for bookkeeping only
  PowerScaling scaling;
  std::uint64_t rng_seed = 1;

  void validate() const;  // throws std::invalid_argument
};

// One user's large-scale link state.
struct UserLink {
  double beta = 1.0;      // large-scale gain, linear, > 0
  double rician_k = 0.0;  // Rician K-factor, linear, >= 0
  double theta = 0.0;     // arrival angle, radians in [-pi/2, pi/2]

  void validate() const;
};

struct CellGeometry {
  double radius_m = 1000.0;
  double r_min_m = 100.0;
  double pathloss_exponent = 3.8;  // > 2
  double shadow_std_db = 8.0;

  void validate() const;
};

// Per-user transmit power for an array of M antennas under the configured
// scaling mode.
double effective_power(const SystemConfig& config, int num_antennas);

// Pathloss/shadowing gain: shadow_linear * (r / r_min)^(-v).
double large_scale_gain(double distance_m, double shadow_linear,
                        const CellGeometry& geometry);

// Uniform point in the hexagonal cell (circumradius radius_m, pointy-top,
// centered on the BS), outside the r_min disc. Rejection sampled from the
// bounding box.
struct CellPoint {
  double x = 0.0;
  double y = 0.0;
};
CellPoint sample_cell_point(const CellGeometry& geometry, Rng& rng);

// Drops num_users users uniformly in the cell: beta from pathloss and
// log-normal shadowing, theta uniform on [-pi/2, pi/2]. Deterministic in
// the seed. Rician K-factors are not part of the geometry; the returned
// links carry rician_k = 0 and the caller assigns the experiment's K.
std::vector<UserLink> drop_users(const CellGeometry& geometry, int num_users,
                                 std::uint64_t seed);

}  // namespace mimoq

#endif
