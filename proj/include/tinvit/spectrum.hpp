#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tinvit/tridiag.hpp"

namespace tinvit {

/// Approximate eigenvalues from bisection, ascending.
struct EigenvalueEstimates {
    std::vector<double> values;
    std::vector<double> half_widths;
    std::size_t n = 0;
    std::size_t m = 0;
};

/// Number of eigenvalues of T below x (Sturm sequence sign count). A zero
/// pivot is replaced by -eps*||T||_1, which counts an eigenvalue sitting
/// exactly at x as below it.
std::size_t sturm_count(const SymTridiagonal& t, double x);

/// eps * ||T||_1 * n.
double default_bisection_tolerance(const SymTridiagonal& t);

/// Gershgorin interval [min(a_i - r_i), max(a_i + r_i)].
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t);

/// The m smallest eigenvalues, each bracketed to half-width <= tol.
/// Throws std::invalid_argument unless 1 <= m <= n and tol > 0.
EigenvalueEstimates bisect_eigenvalues(const SymTridiagonal& t, std::size_t m,
                                       std::optional<double> tol = std::nullopt);

}  // namespace tinvit
