#pragma once

#include <span>

#include "tinvit/ortho.hpp"

namespace tinvit::detail {

// make_reflector with the norm evaluated on `pool`.
ReflectorParts make_reflector_on(ThreadPool* pool, std::span<const double> u_tail, std::size_t index,
                                 TFormula formula, double degenerate_below);

}  // namespace tinvit::detail
