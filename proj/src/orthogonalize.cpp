#include <cmath>
#include <limits>

#include "reflector_detail.hpp"
#include "tinvit/kernels.hpp"
#include "tinvit/ortho.hpp"

namespace tinvit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double degenerate_threshold(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return static_cast<double>(v.size()) * kEps * std::sqrt(s);
}

void check_shape(const Matrix& v, const char* who) {
    if (v.cols() > v.rows()) throw std::invalid_argument(std::string(who) + ": more columns than rows");
    if (v.rows() == 0) throw std::invalid_argument(std::string(who) + ": empty matrix");
}

// Drives any reflector store (accumulator or plain sequence) over the columns.
template <class Store>
Matrix orthogonalize_with(Store& store, const Matrix& v) {
    const std::size_t m = v.cols();
    Matrix q(v.rows(), m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto vj = v.col(j);
        ReflectorParts h;
        if (j == 0) {
            h = store.make(vj, degenerate_threshold(vj));
        } else {
            h = store.make(store.apply_transpose_tail(vj), degenerate_threshold(vj));
        }
        store.append(h);
        q.set_col(j, store.extract_column(j));
    }
    return q;
}

}  // namespace

std::vector<double> mgs_project(std::span<const double> v, const Matrix& basis, std::size_t first,
                                std::size_t count, OpCounters* counters, ThreadPool* pool) {
    if (v.size() != basis.rows()) throw std::invalid_argument("mgs_project: dimension mismatch");
    if (first + count > basis.cols()) throw std::out_of_range("mgs_project: basis range");
    std::vector<double> w(v.begin(), v.end());
    for (std::size_t i = first; i < first + count; ++i) {
        const auto qi = basis.col(i);
        const double s = kernels::dot(pool, w, qi);
        kernels::axpy(pool, -s, qi, w);
    }
    if (counters) {
        counters->flops += 4 * static_cast<std::uint64_t>(v.size()) * count;
        counters->sync_events += count;
    }
    return w;
}

Matrix mgs_orthogonalize(const Matrix& v, OpCounters* counters, ThreadPool* pool) {
    check_shape(v, "mgs_orthogonalize");
    Matrix q(v.rows(), v.cols());
    for (std::size_t j = 0; j < v.cols(); ++j) {
        auto w = mgs_project(v.col(j), q, 0, j, counters, pool);
        const double norm = kernels::nrm2(nullptr, w);
        if (!(norm > degenerate_threshold(v.col(j))))
            throw DegenerateVectorError(j, "mgs_orthogonalize: rank-deficient input");
        for (double& x : w) x /= norm;
        q.set_col(j, w);
    }
    return q;
}

HouseholderSequence::HouseholderSequence(std::size_t n, std::size_t capacity, ThreadPool* pool)
    : n_(n), capacity_(capacity), pool_(pool) {
    if (n == 0) throw std::invalid_argument("HouseholderSequence: n must be positive");
    if (capacity > n) throw std::invalid_argument("HouseholderSequence: capacity exceeds n");
    reflectors_.reserve(capacity);
}

void HouseholderSequence::reflect(const ReflectorParts& h, std::span<double> x) {
    auto seg = x.subspan(h.index);
    const double s = kernels::dot(pool_, h.tail, seg);
    kernels::axpy(pool_, -h.t * s, h.tail, seg);
    counters_.flops += 4 * static_cast<std::uint64_t>(seg.size()) + 1;
    counters_.sync_events += 1;
}

std::vector<double> HouseholderSequence::apply_transpose_tail(std::span<const double> v) {
    if (v.size() != n_) throw std::invalid_argument("apply_transpose_tail: dimension mismatch");
    if (reflectors_.empty()) throw std::logic_error("apply_transpose_tail: empty sequence");
    std::vector<double> u(v.begin(), v.end());
    for (const auto& h : reflectors_) reflect(h, u);
    return {u.begin() + static_cast<std::ptrdiff_t>(count()), u.end()};
}

ReflectorParts HouseholderSequence::make(std::span<const double> u_tail, double degenerate_below) {
    if (u_tail.size() + count() != n_) throw std::invalid_argument("make: tail length must be n - count");
    auto h = detail::make_reflector_on(pool_, u_tail, count(), TFormula::two_over_norm, degenerate_below);
    counters_.flops += 4 * static_cast<std::uint64_t>(u_tail.size()) + 4;
    counters_.sync_events += 2;
    return h;
}

void HouseholderSequence::append(const ReflectorParts& parts) {
    if (count() >= capacity_) throw std::length_error("append: sequence capacity exceeded");
    if (parts.index != count() || parts.tail.size() + count() != n_)
        throw std::invalid_argument("append: reflector does not fit the next slot");
    reflectors_.push_back(parts);
}

void HouseholderSequence::pop() {
    if (reflectors_.empty()) throw std::logic_error("pop: empty sequence");
    reflectors_.pop_back();
}

std::vector<double> HouseholderSequence::extract_column(std::size_t j) {
    if (j >= count()) throw std::out_of_range("extract_column: index out of range");
    std::vector<double> q(n_, 0.0);
    q[j] = 1.0;
    for (std::size_t i = j + 1; i-- > 0;) reflect(reflectors_[i], q);
    return q;
}

Matrix householder_orthogonalize(const Matrix& v, OpCounters* counters, ThreadPool* pool) {
    check_shape(v, "householder_orthogonalize");
    HouseholderSequence seq(v.rows(), v.cols(), pool);
    Matrix q = orthogonalize_with(seq, v);
    if (counters) *counters += seq.counters();
    return q;
}

Matrix cwy_orthogonalize(const Matrix& v, CwyVariant variant, OpCounters* counters, ThreadPool* pool) {
    check_shape(v, "cwy_orthogonalize");
    ReflectorAccumulator acc(v.rows(), v.cols(), variant, pool);
    Matrix q = orthogonalize_with(acc, v);
    if (counters) *counters += acc.counters();
    return q;
}

}  // namespace tinvit
