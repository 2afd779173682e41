#include "tinvit/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace tinvit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

SymTridiagonal::SymTridiagonal(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    if (diag_.empty()) throw std::invalid_argument("SymTridiagonal: n must be >= 1");
    if (offdiag_.size() + 1 != diag_.size())
        throw std::invalid_argument("SymTridiagonal: offdiag must have n-1 entries");
    if (!all_finite(diag_) || !all_finite(offdiag_))
        throw std::invalid_argument("SymTridiagonal: entries must be finite");
}

double norm_estimate(const SymTridiagonal& t) {
    const auto a = t.diag();
    const auto b = t.offdiag();
    const std::size_t n = t.n();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = std::abs(a[i]);
        if (i > 0) s += std::abs(b[i - 1]);
        if (i + 1 < n) s += std::abs(b[i]);
        best = std::max(best, s);
    }
    return best;
}

std::vector<double> matvec(const SymTridiagonal& t, std::span<const double> x) {
    const std::size_t n = t.n();
    if (x.size() != n) throw std::invalid_argument("matvec: dimension mismatch");
    const auto a = t.diag();
    const auto b = t.offdiag();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = a[i] * x[i];
        if (i > 0) s += b[i - 1] * x[i - 1];
        if (i + 1 < n) s += b[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

PivotedTriFactor factor_shifted(const SymTridiagonal& t, double shift) {
    if (!std::isfinite(shift)) throw std::invalid_argument("factor_shifted: shift must be finite");
    const std::size_t n = t.n();
    const auto a = t.diag();
    const auto b = t.offdiag();

    double floor = kEps * norm_estimate(t);
    if (floor == 0.0) floor = kEps * std::max(std::abs(shift), 1.0);
    auto guard = [floor](double p) {
        if (std::abs(p) >= floor) return p;
        return p < 0.0 ? -floor : floor;
    };

    PivotedTriFactor f;
    f.n = n;
    f.shift = shift;
    f.lower.assign(n > 0 ? n - 1 : 0, 0.0);
    f.upper_d.resize(n);
    f.upper_e.assign(n > 0 ? n - 1 : 0, 0.0);
    f.upper_f.assign(n > 1 ? n - 2 : 0, 0.0);
    f.pivot_flags.assign(n > 0 ? n - 1 : 0, false);

    for (std::size_t i = 0; i < n; ++i) f.upper_d[i] = a[i] - shift;
    std::copy(b.begin(), b.end(), f.upper_e.begin());

    // Same elimination as LAPACK dgttrf; the subdiagonal of T - shift I is b.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double sub = b[i];
        if (std::abs(f.upper_d[i]) >= std::abs(sub)) {
            f.upper_d[i] = guard(f.upper_d[i]);
            const double l = sub / f.upper_d[i];
            f.lower[i] = l;
            f.upper_d[i + 1] -= l * f.upper_e[i];
        } else {
            const double pivot = guard(sub);
            const double l = f.upper_d[i] / pivot;
            f.lower[i] = l;
            f.pivot_flags[i] = true;
            f.upper_d[i] = pivot;
            const double below = f.upper_d[i + 1];
            f.upper_d[i + 1] = f.upper_e[i] - l * below;
            f.upper_e[i] = below;
            if (i + 2 < n) {
                f.upper_f[i] = f.upper_e[i + 1];
                f.upper_e[i + 1] = -l * f.upper_f[i];
            }
        }
    }
    if (n > 0) f.upper_d[n - 1] = guard(f.upper_d[n - 1]);
    return f;
}

std::vector<double> solve_shifted(const PivotedTriFactor& f, std::span<const double> b) {
    const std::size_t n = f.n;
    if (b.size() != n) throw std::invalid_argument("solve_shifted: dimension mismatch");
    std::vector<double> x(b.begin(), b.end());

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (f.pivot_flags[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= f.lower[i] * x[i];
    }

    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        if (k + 1 < n) s -= f.upper_e[k] * x[k + 1];
        if (k + 2 < n) s -= f.upper_f[k] * x[k + 2];
        x[k] = s / f.upper_d[k];
    }
    return x;
}

}  // namespace tinvit
