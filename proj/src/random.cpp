#include "vbroadcast/random.hpp"

#include <cmath>
#include <numbers>

namespace vbroadcast {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index + 1) * 0x9e3779b97f4a7c15ULL);
}

double RngStream::uniform() {
  // 53-bit mantissa, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
  if (n == 0) throw argument_error("uniform_int: n must be positive");
  const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = next_u64();
  while (x >= bound) x = next_u64();
  return x % n;
}

int RngStream::sign_with_probability(double p) { return uniform() <= p ? +1 : -1; }

Matrix complex_gaussian(long rows, long cols, RngStream& rng) {
  Matrix m(rows, cols);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = Complex(re * inv_sqrt2, im * inv_sqrt2);
    }
  }
  return m;
}

Operator haar_unitary(int d, RngStream& rng) {
  if (d < 1) throw argument_error("haar_unitary: dimension must be >= 1");
  Matrix g = complex_gaussian(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the R diagonal phases makes the distribution Haar.
  Eigen::VectorXcd phases(d);
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    const double mag = std::abs(rii);
    phases(i) = mag > 0.0 ? rii / mag : Complex(1.0, 0.0);
  }
  Matrix u = q * phases.asDiagonal();
  return Operator(SubsystemShape::single(d), std::move(u));
}

Operator haar_unitary(int d, std::uint64_t seed) {
  RngStream rng(seed);
  return haar_unitary(d, rng);
}

DensityMatrix ginibre_state(int d, RngStream& rng) {
  if (d < 1) throw argument_error("ginibre_state: dimension must be >= 1");
  Matrix g = complex_gaussian(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  return DensityMatrix(Operator(SubsystemShape::single(d), std::move(rho)));
}

DensityMatrix ginibre_state(int d, std::uint64_t seed) {
  RngStream rng(seed);
  return ginibre_state(d, rng);
}

}  // namespace vbroadcast
