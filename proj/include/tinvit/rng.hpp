#pragma once

#include <cstdint>

namespace tinvit {

/// Counter-based generator: the k-th draw of stream (seed, stream) is a pure
/// function of (seed, stream, k), so results do not depend on draw order
/// across streams or on the platform's <random> distributions.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() noexcept { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [-1, 1).
    double uniform_pm1() noexcept { return 2.0 * uniform01() - 1.0; }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace tinvit
