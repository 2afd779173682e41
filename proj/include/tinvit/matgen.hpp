#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "tinvit/tridiag.hpp"

namespace tinvit {

enum class MatrixFamily { type1, type2, glued_wilkinson };

std::string_view to_string(MatrixFamily f) noexcept;
MatrixFamily parse_family(std::string_view name);

/// Which benchmark matrix to build. `size` is n for type1/type2 and the
/// number of 21 x 21 blocks for glued_wilkinson.
struct MatrixSpec {
    MatrixFamily family = MatrixFamily::type2;
    std::size_t size = 1;
    std::uint64_t seed = 1;
    double delta = 1e-4;

    std::size_t dimension() const noexcept {
        return family == MatrixFamily::glued_wilkinson ? 21 * size : size;
    }
};

/// Diagonal then off-diagonal entries, i.i.d. uniform on [0, 1) from one
/// counter-based stream.
SymTridiagonal gen_type1(std::size_t n, std::uint64_t seed);

/// All ones on the three diagonals.
SymTridiagonal gen_type2(std::size_t n);

/// Blocks W21 (diagonal 10, 9, ..., 1, 0, 1, ..., 10, off-diagonal 1) glued
/// by delta on the off-diagonal entries that join consecutive blocks.
SymTridiagonal gen_glued_wilkinson(std::size_t num_blocks, double delta);

SymTridiagonal generate(const MatrixSpec& spec);

}  // namespace tinvit
