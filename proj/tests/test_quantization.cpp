#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mimoq/quantization.hpp"
#include "mimoq/rng.hpp"

using namespace mimoq;

TEST_CASE("one-bit quantizer in closed form") {
  const ScalarQuantizer sq = design_lloyd_max(1);
  const double level = std::sqrt(2.0 / std::numbers::pi);
  REQUIRE(sq.levels.size() == 2);
  CHECK(sq.levels[0] == doctest::Approx(-level).epsilon(1e-12));
  CHECK(sq.levels[1] == doctest::Approx(level).epsilon(1e-12));
  REQUIRE(sq.thresholds.size() == 1);
  CHECK(sq.thresholds[0] == 0.0);
  CHECK(rho_for_bits(1) ==
        doctest::Approx(1.0 - 2.0 / std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("two- and three-bit distortion against the classical table") {
  CHECK(rho_for_bits(2) > 0.117);
  CHECK(rho_for_bits(2) < 0.118);
  CHECK(rho_for_bits(3) > 0.0344);
  CHECK(rho_for_bits(3) < 0.0347);
  CHECK(rho_for_bits(4) == doctest::Approx(0.009497).epsilon(2e-3));
  CHECK(rho_for_bits(5) == doctest::Approx(0.002499).epsilon(2e-3));

  const ScalarQuantizer sq2 = design_lloyd_max(2);
  CHECK(sq2.levels[2] == doctest::Approx(0.4528).epsilon(2e-4));
  CHECK(sq2.levels[3] == doctest::Approx(1.5104).epsilon(2e-4));
}

TEST_CASE("levels are exactly antisymmetric and interleaved by thresholds") {
  for (int b = 1; b <= 8; ++b) {
    const ScalarQuantizer sq = design_lloyd_max(b);
    const std::size_t n = sq.levels.size();
    REQUIRE(n == (1u << b));
    REQUIRE(sq.thresholds.size() == n - 1);
    for (std::size_t j = 0; j < n; ++j)
      CHECK(sq.levels[j] == -sq.levels[n - 1 - j]);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      CHECK(sq.levels[j] < sq.thresholds[j]);
      CHECK(sq.thresholds[j] < sq.levels[j + 1]);
    }
  }
}

TEST_CASE("rho is strictly decreasing in the bit count") {
  for (int b = 1; b < 12; ++b) CHECK(rho_for_bits(b + 1) < rho_for_bits(b));
}

TEST_CASE("quantizer model invariants") {
  for (int b = 1; b <= 8; ++b) {
    const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(b));
    CHECK(q.kappa() + q.rho() == 1.0);
  }
  const QuantizerModel ideal = QuantizerModel::infinite();
  CHECK(ideal.rho() == 0.0);
  CHECK(ideal.kappa() == 1.0);
  CHECK_THROWS_AS(rho_for_bits(0), std::invalid_argument);
  CHECK_THROWS_AS(rho_for_bits(13), std::invalid_argument);
  CHECK_THROWS_AS(QuantizerModel::for_distortion(1.0), std::invalid_argument);
}

TEST_CASE("a reconstruction level is a fixed point of quantization") {
  const ScalarQuantizer sq = design_lloyd_max(3);
  for (double level : sq.levels) CHECK(sq.quantize(level) == level);
}

TEST_CASE("empirical distortion of the true quantizer matches rho") {
  Rng rng(41);
  for (int b : {1, 2}) {
    const ScalarQuantizer sq = design_lloyd_max(b);
    const double rho = rho_for_bits(b);
    double err = 0.0;
    double sig = 0.0;
    const int n = 1000000;
    const Eigen::VectorXd scales = Eigen::VectorXd::Constant(1, std::sqrt(0.5));
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXcd y(1);
      y(0) = rng.complex_normal();
      const Eigen::VectorXcd yq = quantize_vector(y, sq, scales);
      err += std::norm(y(0) - yq(0));
      sig += std::norm(y(0));
    }
    CHECK(std::abs(err / sig - rho) < 1e-3);
  }
}

TEST_CASE("linear-model output is exact for an ideal ADC") {
  Rng rng(5);
  Eigen::MatrixXcd g(3, 2);
  for (Eigen::Index n = 0; n < 2; ++n)
    for (Eigen::Index m = 0; m < 3; ++m) g(m, n) = rng.complex_normal();
  Eigen::VectorXcd y(3);
  for (Eigen::Index m = 0; m < 3; ++m) y(m) = rng.complex_normal();
  const Eigen::VectorXcd out = aqnm_output(y, QuantizerModel::infinite(), g, 2.0, rng);
  CHECK((out - y).norm() == 0.0);
}

TEST_CASE("linear-model noise covariance") {
  Rng rng(6);
  const int m_ant = 3;
  Eigen::MatrixXcd g(m_ant, 2);
  for (Eigen::Index n = 0; n < 2; ++n)
    for (Eigen::Index m = 0; m < m_ant; ++m) g(m, n) = rng.complex_normal();
  const double p_u = 1.7;
  const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(2));

  Eigen::VectorXcd y(m_ant);
  for (Eigen::Index m = 0; m < m_ant; ++m) y(m) = rng.complex_normal();

  const int draws = 100000;
  Eigen::VectorXd var = Eigen::VectorXd::Zero(m_ant);
  Eigen::VectorXcd cross = Eigen::VectorXcd::Zero(m_ant);
  for (int i = 0; i < draws; ++i) {
    const Eigen::VectorXcd noise = aqnm_output(y, q, g, p_u, rng) - q.kappa() * y;
    var += noise.cwiseAbs2();
    cross += noise.cwiseProduct(y.conjugate());
  }
  var /= draws;
  cross /= draws;
  for (Eigen::Index m = 0; m < m_ant; ++m) {
    const double target =
        q.kappa() * q.rho() * (p_u * g.row(m).squaredNorm() + 1.0);
    CHECK(var(m) == doctest::Approx(target).epsilon(0.03));
    // Noise uncorrelated with the input across draws.
    CHECK(std::abs(cross(m)) <
          3.0 * std::sqrt(target / draws) * std::abs(y(m)));
  }
}

TEST_CASE("single-antenna noise variance value") {
  // G = [1], p_u = 1, b = 1: variance = kappa*rho*2.
  Rng rng(8);
  Eigen::MatrixXcd g(1, 1);
  g(0, 0) = 1.0;
  const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(1));
  Eigen::VectorXcd y(1);
  y(0) = {0.3, -0.8};
  const int draws = 200000;
  double var = 0.0;
  for (int i = 0; i < draws; ++i)
    var += std::norm(aqnm_output(y, q, g, 1.0, rng)(0) - q.kappa() * y(0));
  var /= draws;
  CHECK(var == doctest::Approx(0.46265).epsilon(0.02));
}

TEST_CASE("per-antenna AGC scales follow the receive statistics") {
  Rng rng(44);
  const int m_ant = 4;
  Eigen::MatrixXcd g(m_ant, 2);
  for (Eigen::Index n = 0; n < 2; ++n)
    for (Eigen::Index m = 0; m < m_ant; ++m) g(m, n) = rng.complex_normal();
  const double p_u = 3.0;
  const Eigen::VectorXd scales = per_component_scales(g, p_u);
  for (Eigen::Index m = 0; m < m_ant; ++m) {
    const double expected =
        std::sqrt((p_u * g.row(m).squaredNorm() + 1.0) / 2.0);
    CHECK(scales(m) == doctest::Approx(expected).epsilon(1e-12));
  }

  // Quantizing receive vectors y = sqrt(p_u) G x + n with these scales
  // reproduces the model distortion on every antenna.
  const ScalarQuantizer sq = design_lloyd_max(2);
  const double rho = rho_for_bits(2);
  const int draws = 200000;
  Eigen::VectorXd err = Eigen::VectorXd::Zero(m_ant);
  Eigen::VectorXd sig = Eigen::VectorXd::Zero(m_ant);
  for (int i = 0; i < draws; ++i) {
    Eigen::VectorXcd x(2);
    x(0) = rng.complex_normal();
    x(1) = rng.complex_normal();
    Eigen::VectorXcd y = std::sqrt(p_u) * (g * x);
    for (Eigen::Index m = 0; m < m_ant; ++m) y(m) += rng.complex_normal();
    const Eigen::VectorXcd yq = quantize_vector(y, sq, scales);
    err += (y - yq).cwiseAbs2();
    sig += y.cwiseAbs2();
  }
  for (Eigen::Index m = 0; m < m_ant; ++m)
    CHECK(err(m) / sig(m) == doctest::Approx(rho).epsilon(0.02));
}

TEST_CASE("dimension mismatches are rejected") {
  Rng rng(1);
  Eigen::MatrixXcd g(4, 1);
  g.setOnes();
  Eigen::VectorXcd y(3);
  y.setZero();
  CHECK_THROWS_AS(aqnm_output(y, QuantizerModel::for_resolution(AdcResolution::bits(1)),
                              g, 1.0, rng),
                  std::invalid_argument);
  const ScalarQuantizer sq = design_lloyd_max(1);
  CHECK_THROWS_AS(quantize_vector(y, sq, Eigen::VectorXd::Ones(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(quantize_vector(y, sq, Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
}
