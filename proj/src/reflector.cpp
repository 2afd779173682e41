#include <cmath>

#include "reflector_detail.hpp"
#include "tinvit/kernels.hpp"

namespace tinvit {

namespace detail {

ReflectorParts make_reflector_on(ThreadPool* pool, std::span<const double> u_tail, std::size_t index,
                                 TFormula formula, double degenerate_below) {
    if (u_tail.empty()) throw std::invalid_argument("make_reflector: empty vector");
    const double norm = kernels::nrm2(pool, u_tail);
    if (!(norm > 0.0) || norm <= degenerate_below)
        throw DegenerateVectorError(index, "make_reflector: vector has no usable component");

    ReflectorParts h;
    h.index = index;
    const double u1 = u_tail[0];
    h.c = u1 >= 0.0 ? -norm : norm;
    h.tail.assign(u_tail.begin(), u_tail.end());
    h.tail[0] = u1 - h.c;
    if (formula == TFormula::reduced) {
        h.t = 1.0 / (h.c * h.c - u1 * h.c);
    } else {
        const double ynorm = kernels::nrm2(pool, h.tail);
        h.t = 2.0 / (ynorm * ynorm);
    }
    return h;
}

}  // namespace detail

ReflectorParts make_reflector(std::span<const double> u_tail, std::size_t index, TFormula formula,
                              double degenerate_below) {
    return detail::make_reflector_on(nullptr, u_tail, index, formula, degenerate_below);
}

}  // namespace tinvit
