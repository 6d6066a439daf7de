#include <doctest.h>

#include <random>

#include "growthforge/matrix.hpp"
#include "oracles.hpp"

using namespace growthforge;

TEST_CASE("matrix powers match hand multiplication") {
    IntMatrix a{{2, 1}, {1, 1}};
    IntMatrix expected{{5, 3}, {3, 2}};
    CHECK(pow(a, 2) == expected);
    CHECK(pow(a, 0) == IntMatrix::identity(2));
    CHECK(pow(IntMatrix{{1, 1}, {0, 1}}, 0) == IntMatrix::identity(2));
}

TEST_CASE("inverse of a unimodular matrix is its adjugate") {
    IntMatrix a{{2, 1}, {1, 1}};
    IntMatrix expected{{1, -1}, {-1, 2}};
    CHECK(inverse(a) == expected);
    CHECK(inverse(a) * a == IntMatrix::identity(2));
}

TEST_CASE("inverse rejects non-unimodular matrices") {
    IntMatrix a{{2, 0}, {0, 1}};
    CHECK_THROWS_AS(inverse(a), NotUnimodular);
    CHECK_THROWS_AS(pow(a, -1), NotUnimodular);
}

TEST_CASE("addition and subtraction are entrywise") {
    IntMatrix a{{2, 1}, {1, 1}};
    IntMatrix b{{1, -1}, {0, 2}};
    CHECK(a + b == IntMatrix{{3, 0}, {1, 3}});
    CHECK(a - b == IntMatrix{{1, 2}, {1, -1}});
}

TEST_CASE("dimension mismatches are reported") {
    IntMatrix a{{1, 0}, {0, 1}};
    IntMatrix b(3, 2);
    CHECK_THROWS_AS(a * b, DimensionMismatch);
    CHECK_THROWS_AS(a + b, DimensionMismatch);
}

TEST_CASE("determinant by Bareiss elimination") {
    CHECK(det(IntMatrix{{2, 1}, {1, 1}}) == 1);
    CHECK(det(IntMatrix{{1, 1}, {1, 0}}) == -1);
    CHECK(det(IntMatrix{{2, 0}, {0, 3}}) == 6);
    CHECK(det(IntMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}) == 1);
    CHECK(det(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("power(A,k) * power(A,-k) = identity for random unimodular A") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + trial % 3;
        IntMatrix a = oracles::random_unimodular(rng, n);
        long long k = 1 + trial % 7;
        CHECK(pow(a, k) * pow(a, -k) == IntMatrix::identity(n));
    }
}
