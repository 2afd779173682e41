#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "tinvit/matgen.hpp"
#include "tinvit/rng.hpp"

TEST_CASE("type1 entries are uniform on [0,1) and reproducible") {
    const auto a = tinvit::gen_type1(500, 42);
    const auto b = tinvit::gen_type1(500, 42);
    const auto c = tinvit::gen_type1(500, 43);
    double mean = 0.0;
    for (double x : a.diag()) {
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        mean += x;
    }
    for (double x : a.offdiag()) {
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(mean / 500.0 == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::equal(a.diag().begin(), a.diag().end(), b.diag().begin()));
    CHECK(std::equal(a.offdiag().begin(), a.offdiag().end(), b.offdiag().begin()));
    CHECK_FALSE(std::equal(a.diag().begin(), a.diag().end(), c.diag().begin()));
}

TEST_CASE("type1 draws the diagonal, then the off-diagonal, from stream 0") {
    const auto t = tinvit::gen_type1(10, 7);
    tinvit::CounterRng rng(7, 0);
    for (double x : t.diag()) CHECK(x == rng.uniform01());
    for (double x : t.offdiag()) CHECK(x == rng.uniform01());
}

TEST_CASE("type2 is all ones with known spectrum") {
    const auto t = tinvit::gen_type2(12);
    for (double x : t.diag()) CHECK(x == 1.0);
    for (double x : t.offdiag()) CHECK(x == 1.0);
    const auto ev = oracle::eig(t).eigenvalues();
    for (std::size_t k = 1; k <= 12; ++k)
        CHECK(ev(static_cast<Eigen::Index>(k - 1)) == doctest::Approx(oracle::type2_eigenvalue(12, k)));
}

TEST_CASE("glued Wilkinson layout") {
    const auto t = tinvit::gen_glued_wilkinson(3, 1e-4);
    REQUIRE(t.n() == 63);
    for (std::size_t blk = 0; blk < 3; ++blk) {
        CHECK(t.diag()[blk * 21] == 10.0);
        CHECK(t.diag()[blk * 21 + 10] == 0.0);
        CHECK(t.diag()[blk * 21 + 20] == 10.0);
    }
    for (std::size_t i = 0; i < 62; ++i) {
        const bool glue = i == 20 || i == 41;
        CHECK(t.offdiag()[i] == (glue ? 1e-4 : 1.0));
    }
    CHECK_THROWS_AS(tinvit::gen_glued_wilkinson(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(tinvit::gen_glued_wilkinson(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tinvit::gen_glued_wilkinson(0, 0.5), std::invalid_argument);
}

TEST_CASE("W21 block eigenvalues come in close pairs") {
    const auto ev = oracle::eig(tinvit::gen_glued_wilkinson(1, 1e-4)).eigenvalues();
    CHECK(ev(20) == doctest::Approx(10.746194182903393));
    CHECK(ev(19) == doctest::Approx(10.746194182903322));
    CHECK(ev(20) - ev(19) < 1e-12);
}

TEST_CASE("generate dispatches on the family") {
    tinvit::MatrixSpec s;
    s.family = tinvit::MatrixFamily::glued_wilkinson;
    s.size = 2;
    CHECK(s.dimension() == 42);
    CHECK(tinvit::generate(s).n() == 42);
    s.family = tinvit::MatrixFamily::type1;
    s.size = 9;
    s.seed = 5;
    CHECK(s.dimension() == 9);
    const auto t = tinvit::generate(s);
    CHECK(t.diag()[0] == tinvit::gen_type1(9, 5).diag()[0]);
    CHECK(tinvit::parse_family("type2") == tinvit::MatrixFamily::type2);
    CHECK(tinvit::parse_family("glued") == tinvit::MatrixFamily::glued_wilkinson);
    CHECK(tinvit::to_string(tinvit::MatrixFamily::type1) == "type1");
    CHECK_THROWS_AS(tinvit::parse_family("type3"), std::invalid_argument);
    CHECK_THROWS_AS(tinvit::gen_type2(0), std::invalid_argument);
}
