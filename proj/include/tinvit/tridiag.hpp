#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tinvit {

/// Real symmetric tridiagonal matrix: diagonal a_1..a_n and the shared
/// sub/super-diagonal b_1..b_{n-1}.
///
/// Immutable after construction; the constructor rejects empty input,
/// mismatched lengths and non-finite entries.
class SymTridiagonal {
public:
    SymTridiagonal(std::vector<double> diag, std::vector<double> offdiag);

    std::size_t n() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> offdiag() const noexcept { return offdiag_; }

private:
    std::vector<double> diag_;
    std::vector<double> offdiag_;
};

/// 1-norm of T (max column absolute sum); equals the infinity norm by symmetry.
double norm_estimate(const SymTridiagonal& t);

/// y = T x.
std::vector<double> matvec(const SymTridiagonal& t, std::span<const double> x);

/// P (T - shift I) = L U with partial pivoting.
///
/// `lower[i]` is the multiplier eliminating row i+1 at step i; `pivot_flags[i]`
/// records whether rows i and i+1 were swapped first. U is upper triangular with
/// bandwidth 2: `upper_d` (main), `upper_e` (first super), `upper_f` (second
/// super, nonzero only where a swap caused fill-in).
struct PivotedTriFactor {
    std::size_t n = 0;
    double shift = 0.0;
    std::vector<double> lower;
    std::vector<double> upper_d;
    std::vector<double> upper_e;
    std::vector<double> upper_f;
    std::vector<bool> pivot_flags;
};

/// Factors T - shift I. Pivots smaller than eps*||T||_1 in magnitude are
/// replaced by +-eps*||T||_1 (sign kept, +1 for an exact zero), so the factor
/// is usable even at an exact eigenvalue.
PivotedTriFactor factor_shifted(const SymTridiagonal& t, double shift);

/// Solves (T - shift I) x = b with a factor from factor_shifted.
std::vector<double> solve_shifted(const PivotedTriFactor& f, std::span<const double> b);

}  // namespace tinvit
