#include "tinvit/matgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinvit/rng.hpp"

namespace tinvit {

namespace {

constexpr std::size_t kBlock = 21;

void require_positive(std::size_t n, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": size must be >= 1");
}

}  // namespace

std::string_view to_string(MatrixFamily f) noexcept {
    switch (f) {
        case MatrixFamily::type1: return "type1";
        case MatrixFamily::type2: return "type2";
        case MatrixFamily::glued_wilkinson: return "glued";
    }
    return "?";
}

MatrixFamily parse_family(std::string_view name) {
    if (name == "type1") return MatrixFamily::type1;
    if (name == "type2") return MatrixFamily::type2;
    if (name == "glued" || name == "glued_wilkinson") return MatrixFamily::glued_wilkinson;
    throw std::invalid_argument("unknown matrix family: " + std::string(name));
}

SymTridiagonal gen_type1(std::size_t n, std::uint64_t seed) {
    require_positive(n, "gen_type1");
    CounterRng rng(seed, 0);
    std::vector<double> d(n), e(n - 1);
    for (double& x : d) x = rng.uniform01();
    for (double& x : e) x = rng.uniform01();
    return {std::move(d), std::move(e)};
}

SymTridiagonal gen_type2(std::size_t n) {
    require_positive(n, "gen_type2");
    return {std::vector<double>(n, 1.0), std::vector<double>(n - 1, 1.0)};
}

SymTridiagonal gen_glued_wilkinson(std::size_t num_blocks, double delta) {
    require_positive(num_blocks, "gen_glued_wilkinson");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("gen_glued_wilkinson: delta must lie in (0, 1)");
    const std::size_t n = kBlock * num_blocks;
    std::vector<double> d(n), e(n - 1, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto local = static_cast<long>(i % kBlock);
        d[i] = static_cast<double>(std::abs(local - 10));
    }
    for (std::size_t b = 1; b < num_blocks; ++b) e[b * kBlock - 1] = delta;
    return {std::move(d), std::move(e)};
}

SymTridiagonal generate(const MatrixSpec& spec) {
    switch (spec.family) {
        case MatrixFamily::type1: return gen_type1(spec.size, spec.seed);
        case MatrixFamily::type2: return gen_type2(spec.size);
        case MatrixFamily::glued_wilkinson: return gen_glued_wilkinson(spec.size, spec.delta);
    }
    throw std::invalid_argument("generate: unknown family");
}

}  // namespace tinvit
