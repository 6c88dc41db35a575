#include "qgeom/random.hpp"

#include <cmath>

#include "qgeom/linalg.hpp"

namespace qgeom {

cplx Rng::complex_normal() {
  const double s = std::sqrt(0.5);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

ComplexMatrix random_complex_matrix(std::size_t n, Rng& rng) {
  ComplexMatrix g(n);
  for (auto& z : g.data()) z = rng.complex_normal();
  return g;
}

Observable random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_complex_matrix(n, rng);
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return Observable::unchecked(std::move(h));
}

Observable random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(n, rng);
}

StateVector random_state_vector(std::size_t n, Rng& rng) {
  StateVector v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = rng.complex_normal();
  return v;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  return unitary_exp(random_hermitian(n, rng), 1.0, 1.0);
}

}  // namespace qgeom
