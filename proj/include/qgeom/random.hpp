#pragma once

#include <cstdint>
#include <random>

#include "qgeom/matrix.hpp"

namespace qgeom {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64).
///
/// Stream splitting: the generator for sub-stream k of a run seeded with s is
/// seeded with derive_seed(s, k) = splitmix64(s + 0x9E3779B97F4A7C15 * (k + 1)).
/// Trial i of every suite uses stream i, so results do not depend on the
/// order in which trials execute.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  /// Standard complex Gaussian: E|z|^2 = 1, real and imaginary parts N(0, 1/2).
  cplx complex_normal();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// (G + G^dagger)/2 with G a standard complex Gaussian matrix. Exactly Hermitian.
Observable random_hermitian(std::size_t n, std::uint64_t seed);
Observable random_hermitian(std::size_t n, Rng& rng);
ComplexMatrix random_complex_matrix(std::size_t n, Rng& rng);
StateVector random_state_vector(std::size_t n, Rng& rng);
/// exp(-i H) for a random Hermitian H: Haar-like enough for conjugation tests.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

}  // namespace qgeom
