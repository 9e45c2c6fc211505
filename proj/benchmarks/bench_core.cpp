#include <benchmark/benchmark.h>

#include "mimoq/channel.hpp"
#include "mimoq/estimation.hpp"
#include "mimoq/quantization.hpp"
#include "mimoq/rng.hpp"
#include "mimoq/scenario.hpp"
#include "mimoq/spectral_efficiency.hpp"

namespace {

using namespace mimoq;

std::vector<UserLink> bench_users(int n, double k) {
  CellGeometry geom;
  std::vector<UserLink> users = drop_users(geom, n, 1234);
  for (UserLink& u : users) u.rician_k = k;
  return users;
}

void BM_draw_channel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto users = bench_users(10, 10.0);
  std::vector<double> thetas;
  for (const auto& u : users) thetas.push_back(u.theta);
  const Eigen::MatrixXcd steering = steering_matrix(m, thetas, 0.5);
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_channel(users, steering, rng));
  }
}
BENCHMARK(BM_draw_channel)->Arg(64)->Arg(256)->Arg(512);

void BM_sinr_perfect_all(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto users = bench_users(10, 10.0);
  Rng rng(7);
  const ChannelRealization real = draw_channel(users, m, 0.5, rng);
  const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sinr_perfect_all(real.composite, q, 10.0));
  }
}
BENCHMARK(BM_sinr_perfect_all)->Arg(64)->Arg(256)->Arg(512);

void BM_estimate_channel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto users = bench_users(10, 10.0);
  std::vector<double> thetas;
  for (const auto& u : users) thetas.push_back(u.theta);
  const Eigen::MatrixXcd steering = steering_matrix(m, thetas, 0.5);
  Rng rng(7);
  const ChannelRealization real = draw_channel(users, steering, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_channel(real.composite, users, steering, 100.0, rng));
  }
}
BENCHMARK(BM_estimate_channel)->Arg(64)->Arg(256);

void BM_monte_carlo_se(benchmark::State& state) {
  SystemConfig cfg;
  cfg.num_antennas = static_cast<int>(state.range(0));
  cfg.num_users = 10;
  cfg.pilot_length = 10;
  cfg.rng_seed = 3;
  const auto users = bench_users(10, 10.0);
  const QuantizerModel q = QuantizerModel::for_resolution(AdcResolution::bits(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        monte_carlo_se(cfg, users, q, CsiMode::kPerfect, 200, {1, 0.5}));
  }
}
BENCHMARK(BM_monte_carlo_se)->Arg(64)->Arg(256);

void BM_design_lloyd_max(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(design_lloyd_max(bits));
  }
}
BENCHMARK(BM_design_lloyd_max)->Arg(2)->Arg(6)->Arg(10);

void BM_quantize_vector(benchmark::State& state) {
  const Eigen::Index n = 4096;
  Rng rng(5);
  Eigen::VectorXcd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = rng.complex_normal();
  const ScalarQuantizer sq = design_lloyd_max(static_cast<int>(state.range(0)));
  const Eigen::VectorXd scales = Eigen::VectorXd::Constant(n, std::sqrt(0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantize_vector(y, sq, scales));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_quantize_vector)->Arg(1)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
