#include "tinvit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tinvit::kernels {

namespace {

constexpr std::size_t kDotChunk = 4096;
constexpr std::size_t kRowBlock = 256;

// Four independent partial sums; fixed combination order.
double dot_serial(const double* x, const double* y, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    for (; i < n; ++i) s0 += x[i] * y[i];
    return (s0 + s1) + (s2 + s3);
}

// dot_serial for two columns sharing x; each result is bitwise equal to
// dot_serial on its own column.
void dot2_serial(const double* a0, const double* a1, const double* x, std::size_t n, double& r0, double& r1) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    double t0 = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a0[i] * x[i];
        s1 += a0[i + 1] * x[i + 1];
        s2 += a0[i + 2] * x[i + 2];
        s3 += a0[i + 3] * x[i + 3];
        t0 += a1[i] * x[i];
        t1 += a1[i + 1] * x[i + 1];
        t2 += a1[i + 2] * x[i + 2];
        t3 += a1[i + 3] * x[i + 3];
    }
    for (; i < n; ++i) {
        s0 += a0[i] * x[i];
        t0 += a1[i] * x[i];
    }
    r0 = (s0 + s1) + (s2 + s3);
    r1 = (t0 + t1) + (t2 + t3);
}

bool go_parallel(ThreadPool* pool, std::size_t work) {
    return pool != nullptr && pool->size() > 1 && work >= kParallelGrain;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Calls body(begin, end) over [0, count) in blocks of `block`.
template <class Body>
void for_blocks(ThreadPool* pool, bool parallel, std::size_t count, std::size_t block, Body&& body) {
    const std::size_t nblocks = ceil_div(count, block);
    if (!parallel || nblocks <= 1) {
        body(std::size_t{0}, count);
        return;
    }
    pool->run(nblocks, [&](std::size_t b) {
        const std::size_t begin = b * block;
        body(begin, std::min(count, begin + block));
    });
}

std::size_t column_block(ThreadPool* pool, std::size_t cols) {
    const std::size_t target = pool ? 4 * pool->size() : 1;
    return std::max<std::size_t>(1, ceil_div(cols, target));
}

}  // namespace

double dot(ThreadPool* pool, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    const std::size_t n = x.size();
    const std::size_t chunks = std::max<std::size_t>(1, ceil_div(n, kDotChunk));
    if (chunks == 1) return dot_serial(x.data(), y.data(), n);

    std::vector<double> partial(chunks);
    auto chunk = [&](std::size_t c) {
        const std::size_t begin = c * kDotChunk;
        const std::size_t len = std::min(n, begin + kDotChunk) - begin;
        partial[c] = dot_serial(x.data() + begin, y.data() + begin, len);
    };
    if (go_parallel(pool, n))
        pool->run(chunks, chunk);
    else
        for (std::size_t c = 0; c < chunks; ++c) chunk(c);

    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double nrm2(ThreadPool* pool, std::span<const double> x) { return std::sqrt(dot(pool, x, x)); }

void axpy(ThreadPool* pool, double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
    for_blocks(pool, go_parallel(pool, x.size()), x.size(), kDotChunk,
               [&](std::size_t b, std::size_t e) {
                   for (std::size_t i = b; i < e; ++i) y[i] += alpha * x[i];
               });
}

void gemv_t(ThreadPool* pool, const double* a, std::size_t ld, std::size_t rows,
            std::size_t cols, std::span<const double> x, double beta, std::span<double> y) {
    if (x.size() != rows || y.size() != cols) throw std::invalid_argument("gemv_t: size mismatch");
    const bool par = go_parallel(pool, rows * cols);
    for_blocks(pool, par, cols, column_block(par ? pool : nullptr, cols),
               [&](std::size_t b, std::size_t e) {
                   auto store = [&](std::size_t c, double s) { y[c] = (beta == 0.0 ? 0.0 : beta * y[c]) + s; };
                   std::size_t c = b;
                   for (; c + 2 <= e; c += 2) {
                       double s0, s1;
                       dot2_serial(a + c * ld, a + (c + 1) * ld, x.data(), rows, s0, s1);
                       store(c, s0);
                       store(c + 1, s1);
                   }
                   if (c < e) store(c, dot_serial(a + c * ld, x.data(), rows));
               });
}

void gemv_n(ThreadPool* pool, const double* a, std::size_t ld, std::size_t rows,
            std::size_t cols, double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != cols || y.size() != rows) throw std::invalid_argument("gemv_n: size mismatch");
    const bool par = go_parallel(pool, rows * cols);
    // Columns go in groups of four from column 0, so every y[i] sees the
    // same operations whatever the row blocking.
    for_blocks(pool, par, rows, kRowBlock, [&](std::size_t b, std::size_t e) {
        std::size_t c = 0;
        for (; c + 4 <= cols; c += 4) {
            const double s0 = alpha * x[c], s1 = alpha * x[c + 1];
            const double s2 = alpha * x[c + 2], s3 = alpha * x[c + 3];
            const double* c0 = a + c * ld;
            const double* c1 = c0 + ld;
            const double* c2 = c1 + ld;
            const double* c3 = c2 + ld;
            for (std::size_t i = b; i < e; ++i) y[i] += (s0 * c0[i] + s1 * c1[i]) + (s2 * c2[i] + s3 * c3[i]);
        }
        for (; c < cols; ++c) {
            const double s = alpha * x[c];
            const double* col = a + c * ld;
            for (std::size_t i = b; i < e; ++i) y[i] += s * col[i];
        }
    });
}

void trmv(ThreadPool* pool, Uplo uplo, Trans trans, const double* a, std::size_t ld,
          std::span<double> x) {
    const std::size_t k = x.size();
    if (k == 0) return;
    std::vector<double> out(k, 0.0);
    const bool par = go_parallel(pool, k * k / 2);

    if (trans == Trans::yes) {
        // out_c = column c of A (its stored triangle) dotted with x.
        const std::size_t block = column_block(par ? pool : nullptr, k);
        for_blocks(pool, par, k, block, [&](std::size_t b, std::size_t e) {
            for (std::size_t c = b; c < e; ++c) {
                const double* col = a + c * ld;
                out[c] = uplo == Uplo::upper ? dot_serial(col, x.data(), c + 1)
                                             : dot_serial(col + c, x.data() + c, k - c);
            }
        });
    } else if (uplo == Uplo::upper) {
        for_blocks(pool, par, k, kRowBlock, [&](std::size_t b, std::size_t e) {
            for (std::size_t c = b; c < k; ++c) {
                const double xc = x[c];
                const double* col = a + c * ld;
                const std::size_t stop = std::min(e, c + 1);
                for (std::size_t i = b; i < stop; ++i) out[i] += col[i] * xc;
            }
        });
    } else {
        for_blocks(pool, par, k, kRowBlock, [&](std::size_t b, std::size_t e) {
            for (std::size_t c = 0; c < e; ++c) {
                const double xc = x[c];
                const double* col = a + c * ld;
                for (std::size_t i = std::max(b, c); i < e; ++i) out[i] += col[i] * xc;
            }
        });
    }
    std::copy(out.begin(), out.end(), x.begin());
}

}  // namespace tinvit::kernels
