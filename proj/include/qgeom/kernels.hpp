#pragma once

// Dense complex kernels. Every kernel has a serial reference implementation
// and an OpenMP implementation; tests require the two to agree bit-for-bit.

#include <complex>
#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace qgeom {

using cplx = std::complex<double>;

enum class Execution { serial, parallel };

namespace kernels {

/// Matrices at or above this dimension use the OpenMP matmul path.
inline constexpr std::size_t kParallelMatmulThreshold = 48;

/// c = a * b for n x n row-major matrices.
void matmul_serial(std::size_t n, std::span<const cplx> a, std::span<const cplx> b,
                   std::span<cplx> c);
void matmul_parallel(std::size_t n, std::span<const cplx> a, std::span<const cplx> b,
                     std::span<cplx> c);

/// y = a * x for an n x n row-major matrix.
void matvec_serial(std::size_t n, std::span<const cplx> a, std::span<const cplx> x,
                   std::span<cplx> y);

/// Number of OpenMP threads the parallel paths will use.
int thread_count();
void set_thread_count(int threads);

/// Runs body(i) for i in [0, count). The parallel path distributes indices
/// over OpenMP threads; body must only write to per-index storage. The first
/// exception (lowest index) is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  if (exec == Execution::parallel) {
    const auto total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < total; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace kernels
}  // namespace qgeom
