#include "qgeom/kernels.hpp"

#include <omp.h>

namespace qgeom::kernels {

void matmul_serial(std::size_t n, std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> c) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = cplx{};
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      const cplx* brow = b.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

// Same loop order as the serial kernel, rows split across threads, so each
// output entry sees the identical sequence of floating-point operations.
void matmul_parallel(std::size_t n, std::span<const cplx> a, std::span<const cplx> b,
                     std::span<cplx> c) {
  const auto rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    cplx* crow = c.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = cplx{};
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      const cplx* brow = b.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void matvec_serial(std::size_t n, std::span<const cplx> a, std::span<const cplx> x,
                   std::span<cplx> y) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc{};
    for (std::size_t k = 0; k < n; ++k) acc += a[i * n + k] * x[k];
    y[i] = acc;
  }
}

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace qgeom::kernels
