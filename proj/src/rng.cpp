#include "incoherent/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace incoherent {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t k) {
  // k-th output of the SplitMix64 sequence started at master_seed.
  return splitmix64(master_seed + k * 0x9e3779b97f4a7c15ULL);
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, w;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    w = u * u + v * v;
  } while (w >= 1.0 || w == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(w) / w);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below: n must be >= 1");
  const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x < min);
  return x % n;
}

void fill_unit_vector(Rng& rng, Eigen::Ref<Eigen::VectorXd> y) {
  const Eigen::Index m = y.size();
  if (m < 1) throw std::invalid_argument("fill_unit_vector: dimension must be >= 1");
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (Eigen::Index i = 0; i < m; ++i) y[i] = rng.next_gaussian();
    const double norm = y.norm();
    if (norm >= 1e-8) {
      y /= norm;
      return;
    }
  }
  throw std::runtime_error("fill_unit_vector: degenerate draws exhausted retry limit");
}

Eigen::VectorXd sample_unit_vector(Rng& rng, int m) {
  if (m < 1) throw std::invalid_argument("sample_unit_vector: m must be >= 1");
  Eigen::VectorXd y(m);
  fill_unit_vector(rng, y);
  return y;
}

}  // namespace incoherent
