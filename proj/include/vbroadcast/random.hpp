#pragma once

#include <cstdint>
#include <random>

#include "vbroadcast/operator.hpp"

namespace vbroadcast {

/// Stateless mix used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for substream `index` of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic random stream. All floating-point draws are built from raw
/// 64-bit engine output with fixed arithmetic, so sequences are reproducible
/// across platforms and standard-library versions.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in (0, 1]; safe under log().
  double uniform();
  /// Standard normal via Box-Muller (pairwise, second value cached).
  double normal();
  /// Uniform integer in [0, n), rejection-sampled (unbiased).
  std::uint64_t uniform_int(std::uint64_t n);
  /// +1 with probability p, -1 otherwise.
  int sign_with_probability(double p);

  /// Independent stream derived from this stream's seed and an index.
  RngStream substream(std::uint64_t index) const { return RngStream(derive_seed(seed_, index)); }

private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Matrix with i.i.d. entries (x + i y)/sqrt(2), x,y standard normal,
/// drawn row-major.
Matrix complex_gaussian(long rows, long cols, RngStream& rng);

/// Haar-random unitary: QR of a complex Gaussian matrix with the R diagonal
/// phases absorbed into Q.
Operator haar_unitary(int d, RngStream& rng);
Operator haar_unitary(int d, std::uint64_t seed);

/// Full-rank random state G G^dag / tr(G G^dag), G complex Gaussian.
DensityMatrix ginibre_state(int d, RngStream& rng);
DensityMatrix ginibre_state(int d, std::uint64_t seed);

}  // namespace vbroadcast
