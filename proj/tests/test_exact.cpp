#include <doctest.h>

#include "ifock/exact.hpp"
#include "ifock/rng.hpp"

using namespace ifock;
using exact::Int;
using exact::Rational;

TEST_SUITE_BEGIN("exact");

TEST_CASE("double to rational conversion is exact")
{
    CHECK(exact::rational_from_double(0.5) == Rational(1, 2));
    CHECK(exact::rational_from_double(-3.0) == Rational(-3));
    CHECK(exact::rational_from_double(0.0) == Rational(0));

    // 0.1 is the nearest dyadic, not 1/10
    const Rational q = exact::rational_from_double(0.1);
    CHECK(q != Rational(1, 10));
    CHECK(exact::to_double(q) == 0.1);

    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(-1e6, 1e6) * std::pow(2.0, int(rng.uniform(-30, 30)));
        CHECK(exact::to_double(exact::rational_from_double(x)) == x);
    }
    CHECK_THROWS_AS(exact::rational_from_double(1.0 / 0.0), NonFiniteValue);
}

TEST_CASE("hankel elimination pivots are the leading minors")
{
    // standard normal moments 1, 0, 1, 0, 3, 0, 15, 0, 105, 0:
    // minor of order n is prod_{k<=n} lambda_k with lambda_k = k!
    std::vector<Rational> m = {1, 0, 1, 0, 3, 0, 15, 0, 105, 0};
    const auto elim = exact::eliminate_hankel_exact(m, 5);
    REQUIRE(elim.usable == 5);
    CHECK(elim.pivot[0] == 1);
    CHECK(elim.pivot[1] == 1);
    CHECK(elim.pivot[2] == 2);
    CHECK(elim.pivot[3] == 12);
    CHECK(elim.pivot[4] == 288);
    for (int n = 0; n < 5; ++n)
        CHECK(elim.shifted[n] == 0); // symmetric measure
}

TEST_CASE("elimination stops at the first nonpositive minor")
{
    std::vector<Rational> m = {1, 0, -1, 0, 3, 0, 15, 0}; // m2 < m1^2
    const auto elim = exact::eliminate_hankel_exact(m, 4);
    CHECK(elim.usable == 1);
    CHECK(elim.pivot[1] == -1);
}

TEST_CASE("elimination scale invariance")
{
    // moments of a mean-1/2, variance-3/4 normal via the exact recurrence
    std::vector<Rational> m1(8);
    const Rational mean(1, 2), var(3, 4);
    for (int k = 0; k < 8; ++k) {
        if (k == 0)
            m1[k] = 1;
        else if (k == 1)
            m1[k] = mean;
        else
            m1[k] = mean * m1[k - 1] + Rational(k - 1) * var * m1[k - 2];
    }
    const auto e = exact::eliminate_hankel_exact(m1, 4);
    REQUIRE(e.usable == 4);
    // independent check of the order-2 minor by cofactor expansion
    const Rational d2 = m1[0] * (m1[2] * m1[4] - m1[3] * m1[3]) -
                        m1[1] * (m1[1] * m1[4] - m1[3] * m1[2]) +
                        m1[2] * (m1[1] * m1[3] - m1[2] * m1[2]);
    Int den = 1;
    for (int k = 0; k < 8; ++k)
        den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(m1[k])));
    // pivot of the scaled integer matrix = den^3 * d2
    Rational scaled = d2;
    for (int i = 0; i < 3; ++i)
        scaled *= Rational(den);
    CHECK(Rational(e.pivot[2]) == scaled);
}

TEST_CASE("too few moments")
{
    std::vector<Rational> m = {1, 0, 1};
    CHECK_THROWS_AS(exact::eliminate_hankel_exact(m, 2), DepthUnavailable);
}

TEST_SUITE_END();
