#include "tinvit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tinvit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double zero_pivot_replacement(const SymTridiagonal& t) {
    return std::max(kEps * norm_estimate(t), std::numeric_limits<double>::min());
}

std::size_t sturm_count_with(const SymTridiagonal& t, double x, double pivmin) {
    const auto a = t.diag();
    const auto b = t.offdiag();
    std::size_t count = 0;
    double d = a[0] - x;
    if (d == 0.0) d = pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < t.n(); ++i) {
        d = (a[i] - x) - b[i - 1] * b[i - 1] / d;
        if (d == 0.0) d = pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& t, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("sturm_count: x must be finite");
    return sturm_count_with(t, x, zero_pivot_replacement(t));
}

double default_bisection_tolerance(const SymTridiagonal& t) {
    const double tol = kEps * norm_estimate(t) * static_cast<double>(t.n());
    return tol > 0.0 ? tol : std::numeric_limits<double>::min();
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
    const auto a = t.diag();
    const auto b = t.offdiag();
    const std::size_t n = t.n();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(b[i - 1]);
        if (i + 1 < n) r += std::abs(b[i]);
        lo = std::min(lo, a[i] - r);
        hi = std::max(hi, a[i] + r);
    }
    return {lo, hi};
}

EigenvalueEstimates bisect_eigenvalues(const SymTridiagonal& t, std::size_t m,
                                       std::optional<double> tol_opt) {
    const std::size_t n = t.n();
    if (m < 1 || m > n) throw std::invalid_argument("bisect_eigenvalues: need 1 <= m <= n");
    const double tol = tol_opt.value_or(default_bisection_tolerance(t));
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("bisect_eigenvalues: tol must be positive");

    const double pivmin = zero_pivot_replacement(t);
    auto [glo, ghi] = gershgorin_bounds(t);
    const double scale = std::max({norm_estimate(t), std::abs(glo), std::abs(ghi)});
    const double pad = 2.0 * kEps * scale * static_cast<double>(n) + tol;
    glo -= pad;
    ghi += pad;

    EigenvalueEstimates out;
    out.n = n;
    out.m = m;
    out.values.resize(m);
    out.half_widths.resize(m);

    // Invariant per index k: count(lo) <= k < count(hi).
    double floor_lo = glo;
    for (std::size_t k = 0; k < m; ++k) {
        double lo = floor_lo;
        double hi = ghi;
        while (0.5 * (hi - lo) > tol) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) break;
            if (sturm_count_with(t, mid, pivmin) > k)
                hi = mid;
            else
                lo = mid;
        }
        out.values[k] = lo + 0.5 * (hi - lo);
        out.half_widths[k] = 0.5 * (hi - lo);
        floor_lo = lo;
    }
    return out;
}

}  // namespace tinvit
