#include <algorithm>
#include <stdexcept>

#include "reflector_detail.hpp"
#include "tinvit/kernels.hpp"
#include "tinvit/ortho.hpp"

namespace tinvit {

using kernels::Trans;
using kernels::Uplo;

namespace {

std::uint64_t u64(std::size_t v) { return static_cast<std::uint64_t>(v); }

}  // namespace

ReflectorAccumulator::ReflectorAccumulator(std::size_t n, std::size_t capacity, CwyVariant variant,
                                           ThreadPool* pool)
    : n_(n), capacity_(capacity), variant_(variant), pool_(pool) {
    if (n == 0) throw std::invalid_argument("ReflectorAccumulator: n must be positive");
    if (capacity > n) throw std::invalid_argument("ReflectorAccumulator: capacity exceeds n");
    if (variant_ == CwyVariant::ordinary) {
        ybuf_.assign(n * capacity, 0.0);
        tbuf_.assign(capacity * capacity, 0.0);
    } else {
        ybuf_.assign((n + 1) * capacity, 0.0);
    }
}

std::size_t ReflectorAccumulator::storage_size() const noexcept { return ybuf_.size() + tbuf_.size(); }

double ReflectorAccumulator::y(std::size_t i, std::size_t c) const {
    if (i >= n_ || c >= count_) throw std::out_of_range("ReflectorAccumulator::y");
    if (variant_ == CwyVariant::ordinary) return ybuf_[c * n_ + i];
    return i < c ? 0.0 : ybuf_[c * (n_ + 1) + i + 1];
}

double ReflectorAccumulator::t(std::size_t r, std::size_t c) const {
    if (r >= count_ || c >= count_) throw std::out_of_range("ReflectorAccumulator::t");
    if (r > c) return 0.0;
    if (variant_ == CwyVariant::ordinary) return tbuf_[c * capacity_ + r];
    return ybuf_[c * (n_ + 1) + r];
}

std::vector<double> ReflectorAccumulator::apply_transpose_tail(std::span<const double> v) {
    if (v.size() != n_) throw std::invalid_argument("apply_transpose_tail: dimension mismatch");
    if (count_ == 0) throw std::logic_error("apply_transpose_tail: empty accumulator");
    const std::size_t k = count_;
    const std::size_t n = n_;
    std::vector<double> w(k);

    if (variant_ == CwyVariant::ordinary) {
        // u = v - Y T^T Y^T v over all n rows, then keep rows k..n-1.
        std::vector<double> u(v.begin(), v.end());
        kernels::gemv_t(pool_, ybuf_.data(), n, n, k, u, 0.0, w);
        kernels::trmv(pool_, Uplo::upper, Trans::yes, tbuf_.data(), capacity_, w);
        kernels::gemv_n(pool_, ybuf_.data(), n, n, k, -1.0, w, u);
        tally(4 * u64(n) * k + u64(k) * k, 3);
        return {u.begin() + static_cast<std::ptrdiff_t>(k), u.end()};
    }

    // Packed: Y = [L; Yhat], v = [vc; vh].
    // uh = vh - Yhat T^T (L^T vc + Yhat^T vh)
    const std::size_t ld = n + 1;
    const double* tmat = ybuf_.data();
    const double* lmat = ybuf_.data() + 1;
    const double* yhat = ybuf_.data() + 1 + k;
    const std::size_t rows = n - k;
    std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), w.begin());
    std::vector<double> uh(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    kernels::trmv(pool_, Uplo::lower, Trans::yes, lmat, ld, w);
    kernels::gemv_t(pool_, yhat, ld, rows, k, uh, 1.0, w);
    kernels::trmv(pool_, Uplo::upper, Trans::yes, tmat, ld, w);
    kernels::gemv_n(pool_, yhat, ld, rows, k, -1.0, w, uh);
    tally(4 * u64(rows) * k + 2 * u64(k) * k, 4);
    return uh;
}

ReflectorParts ReflectorAccumulator::make(std::span<const double> u_tail, double degenerate_below) {
    if (u_tail.size() + count_ != n_) throw std::invalid_argument("make: tail length must be n - count");
    const std::uint64_t len = u_tail.size();
    if (variant_ == CwyVariant::ordinary) {
        auto h = detail::make_reflector_on(pool_, u_tail, count_, TFormula::two_over_norm, degenerate_below);
        tally(4 * len + 4, 2);
        return h;
    }
    auto h = detail::make_reflector_on(pool_, u_tail, count_, TFormula::reduced, degenerate_below);
    tally(2 * len + 5, 1);
    return h;
}

void ReflectorAccumulator::append(const ReflectorParts& parts) {
    if (count_ >= capacity_) throw std::length_error("append: accumulator capacity exceeded");
    if (parts.index != count_ || parts.tail.size() + count_ != n_)
        throw std::invalid_argument("append: reflector does not fit the next slot");
    const std::size_t k = count_;
    const std::size_t n = n_;
    std::vector<double> col(k);

    if (variant_ == CwyVariant::ordinary) {
        double* ycol = ybuf_.data() + k * n;
        std::fill(ycol, ycol + k, 0.0);
        std::copy(parts.tail.begin(), parts.tail.end(), ycol + k);
        tbuf_[k * capacity_ + k] = parts.t;
        if (k > 0) {
            kernels::gemv_t(pool_, ybuf_.data(), n, n, k, std::span<const double>(ycol, n), 0.0, col);
            for (double& x : col) x *= -parts.t;
            kernels::trmv(pool_, Uplo::upper, Trans::no, tbuf_.data(), capacity_, col);
            std::copy(col.begin(), col.end(), tbuf_.begin() + static_cast<std::ptrdiff_t>(k * capacity_));
            tally(2 * u64(n) * k + u64(k) * k + k, 2);
        }
    } else {
        const std::size_t ld = n + 1;
        double* bcol = ybuf_.data() + k * ld;
        bcol[k] = parts.t;
        std::copy(parts.tail.begin(), parts.tail.end(), bcol + k + 1);
        if (k > 0) {
            // Y^T y = Yhat^T yhat: the leading zeros of y meet L.
            kernels::gemv_t(pool_, ybuf_.data() + 1 + k, ld, n - k, k, parts.tail, 0.0, col);
            for (double& x : col) x *= -parts.t;
            kernels::trmv(pool_, Uplo::upper, Trans::no, ybuf_.data(), ld, col);
            std::copy(col.begin(), col.end(), bcol);
            tally(2 * u64(n - k) * k + u64(k) * k + k, 2);
        }
    }
    ++count_;
}

void ReflectorAccumulator::pop() {
    if (count_ == 0) throw std::logic_error("pop: empty accumulator");
    --count_;
    if (variant_ == CwyVariant::ordinary) {
        std::fill_n(ybuf_.begin() + static_cast<std::ptrdiff_t>(count_ * n_), n_, 0.0);
        std::fill_n(tbuf_.begin() + static_cast<std::ptrdiff_t>(count_ * capacity_), capacity_, 0.0);
    }
}

std::vector<double> ReflectorAccumulator::extract_column(std::size_t j) {
    if (j >= count_) throw std::out_of_range("extract_column: index out of range");
    const std::size_t k = j + 1;  // H_{j+1..} leave e_j alone
    const std::size_t n = n_;
    std::vector<double> x(k);
    std::vector<double> q(n, 0.0);

    if (variant_ == CwyVariant::ordinary) {
        // q = e_j - Y T (Y^T e_j); Y^T e_j is row j of Y.
        for (std::size_t c = 0; c < k; ++c) x[c] = ybuf_[c * n + j];
        kernels::trmv(pool_, Uplo::upper, Trans::no, tbuf_.data(), capacity_, x);
        q[j] = 1.0;
        kernels::gemv_n(pool_, ybuf_.data(), n, n, k, -1.0, x, q);
        tally(u64(k) * k + 2 * u64(n) * k, 2);
        return q;
    }

    // q = (Y T Y^T - I) e_j = [L x; Yhat x] - e_j with x = T (Y^T e_j).
    const std::size_t ld = n + 1;
    for (std::size_t c = 0; c < k; ++c) x[c] = ybuf_[c * ld + j + 1];
    kernels::trmv(pool_, Uplo::upper, Trans::no, ybuf_.data(), ld, x);
    std::copy(x.begin(), x.end(), q.begin());
    kernels::trmv(pool_, Uplo::lower, Trans::no, ybuf_.data() + 1, ld, std::span<double>(q.data(), k));
    const std::size_t rows = n - k;
    kernels::gemv_n(pool_, ybuf_.data() + 1 + k, ld, rows, k, 1.0, x,
                    std::span<double>(q.data() + k, rows));
    q[j] -= 1.0;
    tally(2 * u64(k) * k + 2 * u64(rows) * k + 1, 3);
    return q;
}

}  // namespace tinvit
