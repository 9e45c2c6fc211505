#include "mimoq/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mimoq {

AdcResolution AdcResolution::bits(int b) {
  if (b <= 0) throw std::invalid_argument("ADC bit count must be positive");
  return AdcResolution(b);
}

int AdcResolution::bit_count() const {
  if (is_infinite()) throw std::logic_error("infinite ADC resolution has no bit count");
  return b_;
}

AdcResolution parse_adc_resolution(const std::string& token) {
  if (token == "inf" || token == "infinite") return AdcResolution::infinite();
  return AdcResolution::bits(std::stoi(token));
}

void SystemConfig::validate() const {
  if (num_antennas < 1) throw std::invalid_argument("num_antennas must be >= 1");
  if (num_users < 1) throw std::invalid_argument("num_users must be >= 1");
  if (pilot_length < num_users)
    throw std::invalid_argument("pilot_length must be >= num_users (orthogonal pilots)");
  if (coherence_interval < 1)
    throw std::invalid_argument("coherence_interval must be >= 1");
  if (scaling.mode == PowerScalingMode::kFixed) {
    if (transmit_power <= 0.0) throw std::invalid_argument("transmit_power must be > 0");
  } else {
    if (scaling.alpha <= 0.0 || scaling.alpha > 1.0)
      throw std::invalid_argument("power-scaling exponent must lie in (0, 1]");
    if (scaling.reference_energy <= 0.0)
      throw std::invalid_argument("reference_energy must be > 0");
  }
}

void UserLink::validate() const {
  if (beta <= 0.0) throw std::invalid_argument("beta must be > 0");
  if (rician_k < 0.0) throw std::invalid_argument("rician_k must be >= 0");
  if (std::abs(theta) > std::numbers::pi / 2)
    throw std::invalid_argument("theta must lie in [-pi/2, pi/2]");
}

void CellGeometry::validate() const {
  if (!(0.0 < r_min_m && r_min_m < radius_m))
    throw std::invalid_argument("require 0 < r_min < radius");
  if (pathloss_exponent <= 2.0)
    throw std::invalid_argument("pathloss_exponent must be > 2");
  if (shadow_std_db < 0.0)
    throw std::invalid_argument("shadow_std_db must be >= 0");
}

double effective_power(const SystemConfig& config, int num_antennas) {
  if (num_antennas < 1) throw std::invalid_argument("num_antennas must be >= 1");
  if (config.scaling.mode == PowerScalingMode::kFixed) return config.transmit_power;
  return config.scaling.reference_energy /
         std::pow(static_cast<double>(num_antennas), config.scaling.alpha);
}

double large_scale_gain(double distance_m, double shadow_linear,
                        const CellGeometry& geometry) {
  return shadow_linear *
         std::pow(distance_m / geometry.r_min_m, -geometry.pathloss_exponent);
}

namespace {

// Pointy-top hexagon with circumradius R: |x| <= sqrt(3)/2 R and
// |y| <= R - |x|/sqrt(3).
bool inside_hexagon(double x, double y, double circumradius) {
  const double half_width = std::numbers::sqrt3 / 2.0 * circumradius;
  if (std::abs(x) > half_width) return false;
  return std::abs(y) <= circumradius - std::abs(x) / std::numbers::sqrt3;
}

}  // namespace

CellPoint sample_cell_point(const CellGeometry& geometry, Rng& rng) {
  geometry.validate();
  const double R = geometry.radius_m;
  const double half_width = std::numbers::sqrt3 / 2.0 * R;
  for (;;) {
    const double x = (2.0 * rng.uniform() - 1.0) * half_width;
    const double y = (2.0 * rng.uniform() - 1.0) * R;
    if (!inside_hexagon(x, y, R)) continue;
    if (x * x + y * y < geometry.r_min_m * geometry.r_min_m) continue;
    return {x, y};
  }
}

std::vector<UserLink> drop_users(const CellGeometry& geometry, int num_users,
                                 std::uint64_t seed) {
  geometry.validate();
  if (num_users < 1) throw std::invalid_argument("num_users must be >= 1");

  Rng rng(seed);
  std::vector<UserLink> users;
  users.reserve(static_cast<std::size_t>(num_users));
  for (int n = 0; n < num_users; ++n) {
    const CellPoint p = sample_cell_point(geometry, rng);
    const double r = std::hypot(p.x, p.y);
    const double shadow =
        std::pow(10.0, geometry.shadow_std_db * rng.normal() / 10.0);
    UserLink u;
    u.beta = large_scale_gain(r, shadow, geometry);
    u.rician_k = 0.0;
    u.theta = (rng.uniform() - 0.5) * std::numbers::pi;
    u.validate();
    users.push_back(u);
  }
  return users;
}

}  // namespace mimoq
