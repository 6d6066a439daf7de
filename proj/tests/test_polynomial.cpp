#include <doctest.h>

#include <random>

#include "growthforge/polynomial.hpp"
#include "oracles.hpp"

using namespace growthforge;

TEST_CASE("division by a monic divisor, synthetic-division fixtures") {
    IntPolynomial p = IntPolynomial::from_coeffs_desc({1, -3, 1});
    IntPolynomial q = IntPolynomial::from_coeffs_desc({1, -1});
    auto d = poly_divide(p, q);
    CHECK(d.quotient == IntPolynomial::from_coeffs_desc({1, -2}));
    CHECK(d.remainder == IntPolynomial::constant(-1));
}

TEST_CASE("self-division gives quotient one") {
    IntPolynomial p = IntPolynomial::from_coeffs_desc({1, 4, -7, 2});
    auto d = poly_divide(p, p);
    CHECK(d.quotient == IntPolynomial::one());
    CHECK(d.remainder.is_zero());
}

TEST_CASE("x^4 - 1 factors through x^2 + 1") {
    IntPolynomial p = IntPolynomial::from_coeffs_desc({1, 0, 0, 0, -1});
    IntPolynomial q = IntPolynomial::from_coeffs_desc({1, 0, 1});
    auto d = poly_divide(p, q);
    CHECK(d.quotient == IntPolynomial::from_coeffs_desc({1, 0, -1}));
    CHECK(d.remainder.is_zero());
}

TEST_CASE("division error cases") {
    IntPolynomial p = IntPolynomial::from_coeffs_desc({1, 0, 1});
    CHECK_THROWS_AS(poly_divide(p, IntPolynomial::zero()), DivisorZero);
    CHECK_THROWS_AS(poly_divide(p, IntPolynomial::from_coeffs_desc({2, 1})),
                    DivisorNotMonic);
}

TEST_CASE("division round trip on randomized inputs") {
    std::mt19937_64 rng(987654321);
    std::uniform_int_distribution<long> coeff(-1000000, 1000000);
    for (int trial = 0; trial < 300; ++trial) {
        IntPolynomial q = oracles::random_monic(rng, 5, 1000000);
        std::uniform_int_distribution<int> deg(0, 8);
        std::vector<Int> desc;
        int n = deg(rng);
        for (int i = 0; i <= n; ++i) desc.emplace_back(coeff(rng));
        IntPolynomial p = IntPolynomial::from_coeffs_desc(desc);
        auto d = poly_divide(p, q);
        CHECK(d.remainder.degree() < q.degree());
        CHECK(q * d.quotient + d.remainder == p);
    }
}

TEST_CASE("pretty printing") {
    CHECK(IntPolynomial::from_coeffs_desc({1, -3, 1}).to_string() == "x^2 - 3x + 1");
    CHECK(IntPolynomial::from_coeffs_desc({1, 0, -1}).to_string() == "x^2 - 1");
    CHECK(IntPolynomial::zero().to_string() == "0");
    CHECK(IntPolynomial::constant(-7).to_string() == "-7");
}

TEST_CASE("argument scaling clears denominators") {
    // 2^2 * p((3/2) x) for p = x^2 - 3x + 1 is 9x^2 - 18x + 4.
    IntPolynomial p = IntPolynomial::from_coeffs_desc({1, -3, 1});
    CHECK(p.scaled_argument(3, 2) == IntPolynomial::from_coeffs_desc({9, -18, 4}));
}
