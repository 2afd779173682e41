#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinvit/dense.hpp"
#include "tinvit/parallel.hpp"

namespace tinvit {

/// Floating-point operation and synchronization tallies.
///
/// Flops are counted per kernel from its dimensions (gemv r x c = 2rc,
/// k x k trmv = k^2, dot/nrm2/axpy of length L = 2L). One sync event is one
/// parallel kernel launch: a matrix-vector product or a reduction. The counts
/// are logical, so they do not depend on the thread count.
struct OpCounters {
    std::uint64_t flops = 0;
    std::uint64_t sync_events = 0;

    OpCounters& operator+=(const OpCounters& o) noexcept {
        flops += o.flops;
        sync_events += o.sync_events;
        return *this;
    }
    bool operator==(const OpCounters&) const = default;
};

/// A vector to be orthogonalized has (numerically) no component outside the
/// span of the previous ones.
class DegenerateVectorError : public std::runtime_error {
public:
    DegenerateVectorError(std::size_t index, const std::string& what)
        : std::runtime_error(what + " (column " + std::to_string(index) + ")"), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// How t = 2/||y||^2 is evaluated. `reduced` uses 1/(c^2 - u_1 c) and needs no
/// second norm; `two_over_norm` forms ||y||^2 explicitly.
enum class TFormula { reduced, two_over_norm };

/// Householder reflector H = I - t y y^T mapping u onto [u_1..u_{j-1}, c, 0..0].
///
/// Only the nonzero part of y is kept: `tail` holds rows index..n-1 (0-based),
/// `tail[0] = u_index - c`, with c = -sgn(u_index) ||u_tail||_2 and sgn(0) = +1.
/// The target vector w = u - y is never formed.
struct ReflectorParts {
    std::size_t index = 0;
    std::vector<double> tail;
    double t = 0.0;
    double c = 0.0;
};

/// Builds the reflector for u_tail = rows index..n-1 of u. Throws
/// DegenerateVectorError when ||u_tail||_2 <= degenerate_below or is zero.
ReflectorParts make_reflector(std::span<const double> u_tail, std::size_t index,
                              TFormula formula = TFormula::reduced, double degenerate_below = 0.0);

/// Modified Gram-Schmidt: removes from v, one at a time, its component along
/// basis columns [first, first + count). One sync event per basis vector.
std::vector<double> mgs_project(std::span<const double> v, const Matrix& basis, std::size_t first,
                                std::size_t count, OpCounters* counters = nullptr,
                                ThreadPool* pool = nullptr);

enum class CwyVariant { ordinary, packed };

/// Compact WY store of H_1 ... H_k = I - Y T Y^T.
///
/// Ordinary layout: Y is n x capacity with explicit zeros above each
/// reflector's first row, T is capacity x capacity.
///
/// Packed layout: one (n+1) x capacity column-major buffer. Column c holds
///   rows 0..c-1   : T(0..c-1, c), the strictly upper part of T's column
///   row  c        : t_c = T(c, c)
///   rows c+1..n   : y_c rows c..n-1 (the nonzero tail, shifted down by one)
/// so T is the upper triangle of the buffer and Y (L on top of Y-hat) is its
/// strict lower part. No zero of Y or T is stored; the buffer has (n+1)m
/// entries for m = capacity, which is at most n(m+1).
///
/// The accumulator is single-writer. Kernels run on `pool` when given.
class ReflectorAccumulator {
public:
    ReflectorAccumulator(std::size_t n, std::size_t capacity, CwyVariant variant,
                         ThreadPool* pool = nullptr);

    std::size_t n() const noexcept { return n_; }
    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t count() const noexcept { return count_; }
    CwyVariant variant() const noexcept { return variant_; }
    const OpCounters& counters() const noexcept { return counters_; }
    std::size_t storage_size() const noexcept;

    /// Rows count..n-1 of (I - Y T^T Y^T) v, the part of the next u that the
    /// next reflector needs. Throws if count == 0 or v has the wrong length.
    std::vector<double> apply_transpose_tail(std::span<const double> v);

    /// make_reflector for index == count, with this variant's t formula and
    /// its flop/sync accounting.
    ReflectorParts make(std::span<const double> u_tail, double degenerate_below = 0.0);

    /// Appends y and t and forms the new T column -t T Y^T y.
    void append(const ReflectorParts& parts);

    /// Drops the most recent reflector.
    void pop();

    /// Column j (0-based, j < count) of H_1 ... H_count. The packed variant
    /// returns it negated.
    std::vector<double> extract_column(std::size_t j);

    /// Element (i, c) of Y, zeros included.
    double y(std::size_t i, std::size_t c) const;
    /// Element (r, c) of T, zeros included.
    double t(std::size_t r, std::size_t c) const;

private:
    void tally(std::uint64_t flops, std::uint64_t syncs) noexcept {
        counters_.flops += flops;
        counters_.sync_events += syncs;
    }

    std::size_t n_;
    std::size_t capacity_;
    std::size_t count_ = 0;
    CwyVariant variant_;
    ThreadPool* pool_;
    OpCounters counters_;
    std::vector<double> ybuf_;  // ordinary: Y (n x cap); packed: (n+1) x cap
    std::vector<double> tbuf_;  // ordinary: T (cap x cap); packed: unused
};

/// Unblocked product H_1 ... H_k kept as a list of reflectors and applied one
/// reflector at a time. Same interface as ReflectorAccumulator.
class HouseholderSequence {
public:
    HouseholderSequence(std::size_t n, std::size_t capacity, ThreadPool* pool = nullptr);

    std::size_t n() const noexcept { return n_; }
    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t count() const noexcept { return reflectors_.size(); }
    const OpCounters& counters() const noexcept { return counters_; }

    std::vector<double> apply_transpose_tail(std::span<const double> v);
    ReflectorParts make(std::span<const double> u_tail, double degenerate_below = 0.0);
    void append(const ReflectorParts& parts);
    void pop();
    std::vector<double> extract_column(std::size_t j);

private:
    void reflect(const ReflectorParts& h, std::span<double> x);

    std::size_t n_;
    std::size_t capacity_;
    ThreadPool* pool_;
    OpCounters counters_;
    std::vector<ReflectorParts> reflectors_;
};

/// Orthonormalizes the columns of v left to right with MGS. The counters see
/// only the projections (m(m-1)/2 sync events for m columns).
Matrix mgs_orthogonalize(const Matrix& v, OpCounters* counters = nullptr, ThreadPool* pool = nullptr);

/// Householder orthogonalization, one reflector at a time. Reference for the
/// compact WY variants. Throws DegenerateVectorError with the column index.
Matrix householder_orthogonalize(const Matrix& v, OpCounters* counters = nullptr,
                                 ThreadPool* pool = nullptr);

/// Compact WY orthogonalization. Column signs of the packed variant are the
/// opposite of the ordinary one.
Matrix cwy_orthogonalize(const Matrix& v, CwyVariant variant, OpCounters* counters = nullptr,
                         ThreadPool* pool = nullptr);

}  // namespace tinvit
