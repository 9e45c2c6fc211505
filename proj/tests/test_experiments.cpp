#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "mimoq/analytic.hpp"
#include "mimoq/config_file.hpp"
#include "mimoq/experiments.hpp"
#include "mimoq/scenario.hpp"

using namespace mimoq;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream is(line);
  std::string cell;
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  return cells;
}

AppConfig small_config() {
  AppConfig cfg;
  cfg.experiment.trials = 200;
  cfg.experiment.m_grid = {16, 32};
  cfg.experiment.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("config defaults and parsing") {
  const AppConfig def = default_config();
  CHECK(def.system.num_antennas == 128);
  CHECK(def.system.transmit_power == doctest::Approx(10.0));
  CHECK(def.d_over_lambda == 0.5);

  const AppConfig cfg = parse_config_text(
      "# comment\n"
      "[system]\n"
      "num_antennas = 64\n"
      "transmit_power_db = 0\n"
      "power_scaling = scaled\n"
      "alpha = 0.5\n"
      "reference_energy_db = 3\n"
      "rng_seed = 99\n"
      "[geometry]\n"
      "radius_m = 500   ; trailing comment\n"
      "d_over_lambda = 0.25\n"
      "[quantizer]\n"
      "adc_bits = inf\n"
      "[experiment]\n"
      "trials = 500\n"
      "bits_grid = 1,2,3,inf\n"
      "csi = both\n");
  CHECK(cfg.system.num_antennas == 64);
  CHECK(cfg.system.transmit_power == doctest::Approx(1.0));
  CHECK(cfg.system.scaling.mode == PowerScalingMode::kScaledByM);
  CHECK(cfg.system.scaling.alpha == 0.5);
  CHECK(cfg.system.scaling.reference_energy == doctest::Approx(1.9952623149688795));
  CHECK(cfg.system.rng_seed == 99);
  CHECK(cfg.geometry.radius_m == 500.0);
  CHECK(cfg.d_over_lambda == 0.25);
  CHECK(cfg.system.adc.is_infinite());
  CHECK(cfg.experiment.trials == 500);
  CHECK(cfg.experiment.bits_grid.size() == 4);
  CHECK(cfg.experiment.csi == "both");
}

TEST_CASE("config rejects unknown keys, sections and bad values") {
  CHECK_THROWS_AS(parse_config_text("[system]\nnot_a_key = 1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[nope]\nx = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[system]\nnum_antennas = many\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("stray = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("[experiment]\ncsi = sideways\n"),
                  std::invalid_argument);
}

TEST_CASE("experiment spec invariants") {
  ExperimentSpec spec;
  spec.sweep_var = "M";
  spec.grid = {"32", "64"};
  spec.trials = 1000;
  CHECK_NOTHROW(spec.validate());
  spec.trials = 99;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.trials = 1000;
  spec.grid = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.grid = {"64", "32"};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.grid = {"32", "64"};
  spec.sweep_var = "frequency";
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("CSV headers are stable") {
  CHECK(std::string(kFig1Header) ==
        "M,bits,power_mode,se_sim,se_sim_stderr,se_analytic");
  CHECK(std::string(kFig2Header) == "K_db,M,bits,power_mode,se,se_ideal,ratio");
  CHECK(std::string(kSweepHeader) ==
        "sweep_var,sweep_value,csi,power_mode,M,bits,K_db,se_sim,se_sim_stderr,"
        "se_analytic");
  CHECK(std::string(kRhoTableHeader) == "bits,rho,kappa");
  CHECK(std::string(kValidateAqnmHeader) ==
        "bits,rho_model,rho_empirical,abs_error");
}

TEST_CASE("antenna sweep: layout, reproducibility and qualitative shape") {
  AppConfig cfg = small_config();
  cfg.experiment.m_grid = {16, 32, 64, 256};
  std::ostringstream a;
  run_fig1(cfg, a);
  std::ostringstream b;
  run_fig1(cfg, b);
  CHECK(a.str() == b.str());  // bit-for-bit reproducible

  const auto lines = lines_of(a.str());
  REQUIRE(lines.size() == 1 + 4 * 2 * 3);
  CHECK(lines[0] == kFig1Header);

  // Collect the closed-form column by (mode, bits) across M.
  struct Curve {
    std::vector<double> values;
  };
  std::vector<double> fixed_inf, scaled_inf, fixed_b1;
  double fixed_b2_at_m256 = 0.0, fixed_inf_at_m256 = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = cells_of(lines[i]);
    REQUIRE(cells.size() == 6);
    const double analytic = std::stod(cells[5]);
    if (cells[2] == "fixed" && cells[1] == "inf") fixed_inf.push_back(analytic);
    if (cells[2] == "scaled_alpha1" && cells[1] == "inf")
      scaled_inf.push_back(analytic);
    if (cells[2] == "fixed" && cells[1] == "1") fixed_b1.push_back(analytic);
    if (cells[0] == "256" && cells[2] == "fixed" && cells[1] == "2")
      fixed_b2_at_m256 = analytic;
    if (cells[0] == "256" && cells[2] == "fixed" && cells[1] == "inf")
      fixed_inf_at_m256 = analytic;
  }
  // Fixed power grows with M; scaled power flattens against its limit.
  for (std::size_t i = 1; i < fixed_inf.size(); ++i) {
    CHECK(fixed_inf[i] > fixed_inf[i - 1]);
    CHECK(fixed_b1[i] > fixed_b1[i - 1]);
  }
  const double last_step = std::abs(scaled_inf.back() - scaled_inf[scaled_inf.size() - 2]);
  CHECK(last_step < 0.02 * scaled_inf.back());
  // Two bits sit within 10% of the ideal ADC at M = 256.
  CHECK(std::abs(fixed_b2_at_m256 - fixed_inf_at_m256) / fixed_inf_at_m256 <
        0.10);
}

TEST_CASE("normalized-SE table: self-normalization and K trend") {
  AppConfig cfg = small_config();
  cfg.experiment.m_grid = {64};
  cfg.experiment.k_db_grid = {-10, 0, 10, 20, 30};
  std::ostringstream os;
  run_fig2(cfg, os);
  const auto lines = lines_of(os.str());
  CHECK(lines[0] == kFig2Header);

  std::vector<double> fixed_b1_ratio;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = cells_of(lines[i]);
    REQUIRE(cells.size() == 7);
    if (cells[2] == "inf") CHECK(cells[6] == "1");
    if (cells[2] == "1" && cells[3] == "fixed")
      fixed_b1_ratio.push_back(std::stod(cells[6]));
  }
  REQUIRE(fixed_b1_ratio.size() == 5);
  for (std::size_t i = 1; i < fixed_b1_ratio.size(); ++i)
    CHECK(fixed_b1_ratio[i] < fixed_b1_ratio[i - 1]);
}

TEST_CASE("normalized SE under scaled power approaches the limit ratio") {
  AppConfig cfg = small_config();
  cfg.experiment.m_grid = {10000};
  cfg.experiment.k_db_grid = {10};
  cfg.experiment.bits_grid = {"1", "2"};
  std::ostringstream os;
  run_fig2(cfg, os);
  const auto lines = lines_of(os.str());

  // Per-user limit ratio uses each user's own beta; compare at the sum
  // level by recomputing the closed-form sums from the same drop.
  const double e_u = cfg.system.scaling.reference_energy;
  std::vector<UserLink> users =
      drop_users(cfg.geometry, 10, user_drop_seed(cfg.system.rng_seed));
  for (UserLink& u : users) u.rician_k = 10.0;
  for (const std::string& bits : {"1", "2"}) {
    double se_limit_sum = 0.0;
    double se_ideal_limit_sum = 0.0;
    const QuantizerModel q =
        QuantizerModel::for_resolution(parse_adc_resolution(bits));
    for (const UserLink& u : users) {
      se_limit_sum += se_limit_perfect_scaled(q.kappa(), e_u, u.beta);
      se_ideal_limit_sum += se_limit_perfect_scaled(1.0, e_u, u.beta);
    }
    const double limit_ratio = se_limit_sum / se_ideal_limit_sum;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto cells = cells_of(lines[i]);
      if (cells[3] == "scaled_alpha1" && cells[2] == bits)
        CHECK(std::stod(cells[6]) ==
              doctest::Approx(limit_ratio).epsilon(0.05));
    }
  }
}

TEST_CASE("generic sweep emits simulated and closed-form columns that agree") {
  AppConfig cfg = small_config();
  cfg.experiment.sweep_var = "M";
  cfg.experiment.m_grid = {32, 64};
  cfg.experiment.csi = "both";
  cfg.experiment.trials = 400;
  std::ostringstream os;
  run_sweep(cfg, os);
  const auto lines = lines_of(os.str());
  CHECK(lines[0] == kSweepHeader);
  REQUIRE(lines.size() == 1 + 2 * 2);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = cells_of(lines[i]);
    REQUIRE(cells.size() == 10);
    const double sim = std::stod(cells[7]);
    const double analytic = std::stod(cells[9]);
    CHECK(std::abs(sim - analytic) / sim < 0.05);
  }
}

TEST_CASE("rho table layout") {
  std::ostringstream os;
  run_rho_table(4, os);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == kRhoTableHeader);
  const auto row1 = cells_of(lines[1]);
  CHECK(row1[0] == "1");
  CHECK(std::stod(row1[1]) == doctest::Approx(0.3633802276).epsilon(1e-9));
  CHECK_THROWS_AS(run_rho_table(13, os), std::invalid_argument);
}

TEST_CASE("quantizer validation stays inside the tolerance band") {
  std::ostringstream os;
  const bool ok = run_validate_aqnm({1, 2, 3}, 400000, 7, os);
  CHECK(ok);
  const auto lines = lines_of(os.str());
  CHECK(lines[0] == kValidateAqnmHeader);
  REQUIRE(lines.size() == 4);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = cells_of(lines[i]);
    CHECK(std::stod(cells[3]) < 1e-3);
  }
  CHECK_THROWS_AS(run_validate_aqnm({9}, 400000, 7, os), std::invalid_argument);
  CHECK_THROWS_AS(run_validate_aqnm({}, 400000, 7, os), std::invalid_argument);
}

TEST_CASE("empirical distortion error shrinks as samples grow 4x") {
  auto mean_abs_error = [](long samples) {
    std::ostringstream os;
    run_validate_aqnm({1, 2, 3, 4}, samples, 11, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);  // header
    double sum = 0.0;
    int count = 0;
    while (std::getline(is, line)) {
      const auto cells = cells_of(line);
      sum += std::stod(cells[3]);
      ++count;
    }
    return sum / count;
  };
  CHECK(mean_abs_error(1000000) < mean_abs_error(250000));
}

TEST_CASE("alpha sweep drives the scaled power mode") {
  AppConfig cfg = small_config();
  cfg.system.num_antennas = 32;
  cfg.experiment.sweep_var = "alpha";
  cfg.experiment.alpha_grid = {0.6, 1.0};
  cfg.experiment.csi = "imperfect";
  std::ostringstream os;
  run_sweep(cfg, os);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(cells_of(lines[1])[3] == "scaled_alpha0.6");
  CHECK(cells_of(lines[2])[3] == "scaled_alpha1");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = cells_of(lines[i]);
    const double sim = std::stod(cells[7]);
    const double analytic = std::stod(cells[9]);
    CHECK(std::abs(sim - analytic) / sim < 0.05);
  }
}

TEST_CASE("drop-averaged sweep stays reproducible") {
  AppConfig cfg = small_config();
  cfg.experiment.m_grid = {16};
  cfg.experiment.drop_average = true;
  cfg.experiment.drops = 3;
  std::ostringstream a, b;
  run_fig1(cfg, a);
  run_fig1(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(lines_of(a.str()).size() == 1 + 6);
}
