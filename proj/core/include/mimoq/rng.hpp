#ifndef MIMOQ_RNG_HPP
#define MIMOQ_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace mimoq {

// Deterministic random source. Gaussian variates are produced by an
// explicit Box-Muller transform (not std::normal_distribution, whose
// output sequence is implementation-defined), so a given seed yields the
// same stream on every platform. Monte Carlo trial t of a run seeded with
// s uses the stream Rng(s ^ t); results are therefore independent of how
// trials are scheduled across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal N(0, 1).
  double normal();

  // Circularly symmetric complex Gaussian CN(0, 1).
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * kInvSqrt2, im * kInvSqrt2};
  }

 private:
  static constexpr double kInvSqrt2 = 0.70710678118654752440;

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 mixer, used to derive auxiliary streams (e.g. the user-drop
// stream) that must not alias the trial streams seed ^ t.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace mimoq

#endif
