#pragma once

#include <cstddef>
#include <span>

#include "tinvit/parallel.hpp"

// Level-1/2 kernels used by the orthogonalization backends.
//
// Matrices are column-major views (pointer + leading dimension). Every kernel
// accepts an optional pool; with nullptr, or when the problem is below the
// parallel grain, it runs on the calling thread. Results are bitwise
// independent of the pool size: each output element is produced by the same
// sequence of operations whichever block computes it, and reductions combine
// fixed-size chunks in a fixed order.
namespace tinvit::kernels {

/// Work (in matrix elements touched) below which kernels stay serial.
inline constexpr std::size_t kParallelGrain = std::size_t{1} << 15;

enum class Uplo { upper, lower };
enum class Trans { no, yes };

double dot(ThreadPool* pool, std::span<const double> x, std::span<const double> y);
double nrm2(ThreadPool* pool, std::span<const double> x);

/// y += alpha * x
void axpy(ThreadPool* pool, double alpha, std::span<const double> x, std::span<double> y);

/// y = A^T x + beta * y for A (rows x cols). x has `rows` entries, y has `cols`.
void gemv_t(ThreadPool* pool, const double* a, std::size_t ld, std::size_t rows,
            std::size_t cols, std::span<const double> x, double beta, std::span<double> y);

/// y += alpha * A x for A (rows x cols). x has `cols` entries, y has `rows`.
void gemv_n(ThreadPool* pool, const double* a, std::size_t ld, std::size_t rows,
            std::size_t cols, double alpha, std::span<const double> x, std::span<double> y);

/// x = op(A) x for a k x k triangular A (diagonal included, not unit).
void trmv(ThreadPool* pool, Uplo uplo, Trans trans, const double* a, std::size_t ld,
          std::span<double> x);

}  // namespace tinvit::kernels
