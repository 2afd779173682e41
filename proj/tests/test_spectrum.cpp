#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "tinvit/matgen.hpp"
#include "tinvit/spectrum.hpp"

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

TEST_CASE("Sturm count matches the dense spectrum") {
    const auto t = tinvit::gen_type1(60, 4);
    const auto ev = oracle::eig(t).eigenvalues();
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-1.5, 2.5);
    for (int i = 0; i < 200; ++i) {
        const double x = u(gen);
        std::size_t below = 0;
        for (Eigen::Index k = 0; k < ev.size(); ++k) below += ev(k) < x ? 1 : 0;
        CHECK(tinvit::sturm_count(t, x) == below);
    }
    CHECK(tinvit::sturm_count(t, -100.0) == 0);
    CHECK(tinvit::sturm_count(t, 100.0) == 60);
    CHECK_THROWS_AS(tinvit::sturm_count(t, NAN), std::invalid_argument);
}

TEST_CASE("Sturm count survives an exact zero pivot") {
    // a_1 - x = 0 at x = 0.
    const tinvit::SymTridiagonal t({0.0, 2.0}, {1.0});
    const auto ev = oracle::eig(t).eigenvalues();
    CHECK(tinvit::sturm_count(t, 0.0) == (ev(0) < 0.0 ? 1u : 0u) + (ev(1) < 0.0 ? 1u : 0u));
}

TEST_CASE("Gershgorin bounds enclose the spectrum") {
    const auto t = tinvit::gen_type1(40, 9);
    const auto [lo, hi] = tinvit::gershgorin_bounds(t);
    const auto ev = oracle::eig(t).eigenvalues();
    CHECK(lo <= ev.minCoeff());
    CHECK(hi >= ev.maxCoeff());
}

TEST_CASE("bisection brackets every eigenvalue within tol") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto t = tinvit::gen_type1(80, seed);
        const auto e = tinvit::bisect_eigenvalues(t, 80);
        const auto ev = oracle::eig(t).eigenvalues();
        const double tol = tinvit::default_bisection_tolerance(t);
        CHECK(tol == doctest::Approx(kEps * tinvit::norm_estimate(t) * 80));
        REQUIRE(e.values.size() == 80);
        CHECK(e.n == 80);
        CHECK(e.m == 80);
        for (std::size_t k = 0; k < 80; ++k) {
            CHECK(e.half_widths[k] <= tol);
            // Dense solver error is a few eps ||T||, well inside tol.
            CHECK(std::abs(e.values[k] - ev(static_cast<Eigen::Index>(k))) <= 2.0 * tol);
            if (k > 0) CHECK(e.values[k] >= e.values[k - 1]);
        }
    }
}

TEST_CASE("bisection returns the m smallest eigenvalues") {
    const auto t = tinvit::gen_type2(30);
    const auto e = tinvit::bisect_eigenvalues(t, 5, 1e-12);
    REQUIRE(e.values.size() == 5);
    for (std::size_t k = 0; k < 5; ++k)
        CHECK(std::abs(e.values[k] - oracle::type2_eigenvalue(30, k + 1)) <= 1e-12 + 4 * kEps * 3);
}

TEST_CASE("bisection resolves a repeated eigenvalue") {
    // Direct sum of two identical blocks.
    const tinvit::SymTridiagonal t({2.0, 1.0, 2.0, 1.0}, {0.5, 0.0, 0.5});
    const auto e = tinvit::bisect_eigenvalues(t, 4);
    const auto ev = oracle::eig(t).eigenvalues();
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::abs(e.values[k] - ev(static_cast<Eigen::Index>(k))) <= 1e-14);
}

TEST_CASE("bisection argument checks") {
    const auto t = tinvit::gen_type2(5);
    CHECK_THROWS_AS(tinvit::bisect_eigenvalues(t, 0), std::invalid_argument);
    CHECK_THROWS_AS(tinvit::bisect_eigenvalues(t, 6), std::invalid_argument);
    CHECK_THROWS_AS(tinvit::bisect_eigenvalues(t, 5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tinvit::bisect_eigenvalues(t, 5, -1.0), std::invalid_argument);
}

TEST_CASE("1x1 and zero matrices") {
    const auto one = tinvit::bisect_eigenvalues(tinvit::SymTridiagonal({-3.5}, {}), 1);
    CHECK(one.values[0] == doctest::Approx(-3.5));
    const auto zero = tinvit::bisect_eigenvalues(tinvit::SymTridiagonal({0.0, 0.0}, {0.0}), 2);
    CHECK(std::abs(zero.values[0]) < 1e-300);
    CHECK(std::abs(zero.values[1]) < 1e-300);
}

TEST_CASE("hand-checked Sturm counts and small spectra") {
    const tinvit::SymTridiagonal zero({0.0}, {});
    CHECK(tinvit::sturm_count(zero, 1.0) == 1);
    CHECK(tinvit::sturm_count(zero, -1.0) == 0);
    const auto t3 = tinvit::gen_type2(3);
    CHECK(tinvit::sturm_count(t3, 1.0) == 1);

    CHECK(tinvit::bisect_eigenvalues(tinvit::SymTridiagonal({3.0}, {}), 1, 1e-12).values[0] ==
          doctest::Approx(3.0).epsilon(1e-12));
    const auto e = tinvit::bisect_eigenvalues(t3, 3, 1e-12);
    CHECK(e.values[0] == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values[2] == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("two glued blocks give 21 pairs near the single-block eigenvalues") {
    const auto t = tinvit::gen_glued_wilkinson(2, 1e-4);
    const auto e = tinvit::bisect_eigenvalues(t, 42);
    const auto w = oracle::eig(tinvit::gen_glued_wilkinson(1, 1e-4)).eigenvalues();
    for (std::size_t p = 0; p < 21; ++p) {
        CHECK(std::abs(e.values[2 * p] - w(static_cast<Eigen::Index>(p))) <= 1e-3);
        CHECK(std::abs(e.values[2 * p + 1] - w(static_cast<Eigen::Index>(p))) <= 1e-3);
    }
}
