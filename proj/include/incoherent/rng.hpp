#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace incoherent {

/// SplitMix64 mixing step (Vigna). Used to derive independent substream
/// seeds from a master seed: substream k gets splitmix64(seed + (k+1)*gamma).
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for the k-th substream of a master seed (k = 0, 1, ...).
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t k);

/// Seedable random stream with fixed, portable conversions on top of
/// std::mt19937_64 (the engine's output sequence is pinned by the C++
/// standard). Uniform doubles take the top 53 bits; Gaussians use the
/// Marsaglia polar method with the spare value cached in the stream state.
/// The whole pipeline is identified by kGeneratorId.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate.
  double next_gaussian();

  /// Uniform integer in [0, n). Unbiased via rejection of the low chunk
  /// (arc4random_uniform construction). n must be >= 1.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Fills y with a uniform random unit vector (independent standard normals,
/// normalized). Redraws if the pre-normalization norm falls below 1e-8;
/// throws after 100 consecutive redraws. Allocation-free for callers that
/// reuse a buffer across many draws.
void fill_unit_vector(Rng& rng, Eigen::Ref<Eigen::VectorXd> y);

/// Uniform random unit vector in dimension m.
Eigen::VectorXd sample_unit_vector(Rng& rng, int m);

}  // namespace incoherent
