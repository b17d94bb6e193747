#include <doctest.h>

#include <cmath>

#include "ifock/fock.hpp"
#include "ifock/rng.hpp"
#include "oracle.hpp"

using namespace ifock;
using namespace ifock::fock;
using measures::gaussian;
using measures::poisson;
using measures::raw_moments;

TEST_SUITE_BEGIN("fock");

TEST_CASE("ladder matrices")
{
    const auto tf = truncate(gaussian(0, 1), 3);
    const auto l = build_ladders(tf);
    CHECK(l.annihilation(0, 1) == std::complex<double>(1.0));
    CHECK(l.annihilation(1, 2) == std::complex<double>(2.0)); // A Phi_2 = 2 Phi_1
    CHECK((l.annihilation * FockVector::Unit(3, 0)).norm() == 0.0); // vacuum
    CHECK(l.creation(1, 0) == std::complex<double>(1.0));
    CHECK(l.creation.col(2).norm() == 0.0); // truncation projection
    CHECK(l.number(2, 2) == std::complex<double>(2.0));

    const auto lp = build_ladders(truncate(poisson(2.0), 4));
    for (int n = 0; n < 4; ++n)
        CHECK(lp.alpha_op(n, n) == std::complex<double>(n + 2.0));
}

TEST_CASE("field matrix structure")
{
    const auto l = build_ladders(truncate(gaussian(0.4, 1.2), 5));
    const auto f = field_matrix(l);
    for (int n = 0; n < 5; ++n) {
        CHECK(f(n, n) == std::complex<double>(0.4));
        if (n >= 1)
            CHECK(f(n - 1, n) == std::complex<double>(1.2 * n));
        if (n + 1 < 5)
            CHECK(f(n + 1, n) == std::complex<double>(1.0));
    }

    // multiplication by x on the vacuum for the counting family
    const auto lp = build_ladders(truncate(poisson(1.5), 4));
    const FockVector v = field_matrix(lp) * FockVector::Unit(4, 0);
    CHECK(v(0) == std::complex<double>(1.5)); // a Phi_0
    CHECK(v(1) == std::complex<double>(1.0)); // + Phi_1
    CHECK(v(2) == std::complex<double>(0.0));

    // symmetric measure: zero diagonal
    const auto ls = build_ladders(truncate(gaussian(0, 2.0), 4));
    for (int n = 0; n < 4; ++n)
        CHECK(field_matrix(ls)(n, n) == std::complex<double>(0.0));
}

TEST_CASE("basis isomorphism")
{
    const auto tf = truncate(gaussian(0.8, 1.4), 7);

    const auto one = u_isomorphism(tf, FockVector::Unit(7, 0));
    REQUIRE(one.size() == 7);
    CHECK(one[0] == std::complex<double>(1.0));
    for (int k = 1; k < 7; ++k)
        CHECK(std::abs(one[k]) == 0.0);

    // Phi_n maps to the shifted Hermite polynomial; compare values on a grid
    for (int n = 0; n < 7; ++n) {
        const auto poly = u_isomorphism(tf, FockVector::Unit(7, n));
        for (double x : {-2.0, -0.3, 0.8, 1.9, 3.4}) {
            std::complex<double> v = 0.0;
            for (int k = static_cast<int>(poly.size()) - 1; k >= 0; --k)
                v = v * x + poly[k];
            const double want = static_cast<double>(oracle::hermite_monic(n, x - 0.8, 1.4));
            CHECK(std::abs(v - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
    }

    // norm carried across the isomorphism: lambda_2 = a^2 2! at a = 3
    const auto tfp = truncate(poisson(3.0), 5);
    const double n2 = lambda_norm(tfp, FockVector::Unit(5, 2));
    CHECK(n2 == doctest::Approx(std::sqrt(18.0)).epsilon(1e-15));
    const double l2 = oracle::poisson_sum(
        [&](double x) {
            const double c2 = static_cast<double>(orthopoly::charlier(2, x, 3.0));
            return c2 * c2;
        },
        3.0);
    CHECK(std::sqrt(l2) == doctest::Approx(n2).epsilon(1e-12));

    CHECK_THROWS_AS(u_inverse(tfp, std::vector<std::complex<double>>(6, 1.0)), DegreeOverflow);
}

TEST_CASE("unitarity of the isomorphism under quadrature")
{
    const auto tf = truncate(poisson(1.3), 8);
    const auto q = measures::make_quadrature(poisson(1.3), 16);
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        FockVector v(8);
        for (int n = 0; n < 8; ++n)
            v(n) = rng.complex_in_box(1.0);
        const auto poly = u_isomorphism(tf, v);
        const double l2 = measures::integrate(q, [&](double x) {
                              std::complex<double> p = 0.0;
                              for (int k = static_cast<int>(poly.size()) - 1; k >= 0; --k)
                                  p = p * x + poly[k];
                              return p * std::conj(p);
                          }).real();
        CHECK(std::sqrt(l2) == doctest::Approx(lambda_norm(tf, v)).epsilon(1e-10));
    }
}

TEST_CASE("adjointness and commutator on the interior")
{
    const auto tf = truncate(gaussian(0.2, 1.7), 9);
    const auto l = build_ladders(tf);
    Rng rng(6);
    for (int trial = 0; trial < 5; ++trial) {
        FockVector u = FockVector::Zero(9), v = FockVector::Zero(9);
        for (int n = 0; n < 8; ++n) { // supported below the boundary
            u(n) = rng.complex_in_box(1.0);
            v(n) = rng.complex_in_box(1.0);
        }
        const auto lhs = lambda_inner(tf, l.creation * u, v);
        const auto rhs = lambda_inner(tf, u, l.annihilation * v);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }

    const Eigen::MatrixXcd comm =
        l.annihilation * l.creation - l.creation * l.annihilation;
    for (int n = 0; n <= 9 - 3; ++n)
        CHECK(std::abs(comm(n, n) - std::complex<double>(1.7)) <= 1e-13); // omega_{n+1}-omega_n

    // the truncation boundary is reported, not hidden: the corner defect is
    // exactly -omega_{D-1} - (omega_n gap)
    CHECK(std::abs(comm(8, 8).real() + 1.7 * 8) <= 1e-12);
}

TEST_CASE("shifted-ladder factorization for the counting family")
{
    const auto l = build_ladders(truncate(poisson(1.0), 11));
    const auto rep = verify_poisson_factorization(l, 1.0);
    CHECK(rep.interior_dim == 9);
    CHECK(rep.max_interior_defect() == 0.0); // small integer entries, exact
    CHECK(rep.full_product == 0.0);
    CHECK(rep.pass());

    // diagonal identity alpha = N + a, entrywise exact
    const auto l4 = build_ladders(truncate(poisson(4.0), 9));
    const auto rep4 = verify_poisson_factorization(l4, 4.0);
    CHECK(rep4.full_alpha_vs_number == 0.0);

    // a Gaussian family fails identity (i) by at least the rate at index 1
    const auto lg = build_ladders(truncate(gaussian(0, 1), 8));
    const auto repg = verify_poisson_factorization(lg, 1.0);
    CHECK(repg.interior_alpha_vs_ladder >= 1.0);
    CHECK_FALSE(repg.pass());
}

TEST_CASE("hand-expanded factorization at dimension 4")
{
    // ((1/sqrt a)A* + sqrt a)((1/sqrt a)A + sqrt a) expanded by hand for a=2:
    // row n, col n: omega_n/a + a; col n+1: omega_{n+1}/sqrt(a)*(1/sqrt a) = omega_{n+1}/a * a ...
    // = tridiagonal [a + n, omega_{n+1}, 1] pattern matching A + A* + alpha
    const double a = 2.0;
    const auto l = build_ladders(truncate(poisson(a), 4));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
    const double ra = std::sqrt(a);
    const Eigen::MatrixXcd prod =
        ((1.0 / ra) * l.creation + ra * id) * ((1.0 / ra) * l.annihilation + ra * id);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
    for (int n = 0; n < 4; ++n) {
        want(n, n) = n + a;
        if (n >= 1)
            want(n - 1, n) = a * n;
        if (n + 1 < 4)
            want(n + 1, n) = 1.0;
    }
    CHECK((prod - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("ladder identities mirror exactly in rational data")
{
    // alpha_n = omega_n / a + a = n + a over the extraction-derived rationals
    const auto mom = measures::moments_exact(poisson(2.0), 16);
    const auto j = orthopoly::jacobi_from_moments_exact(mom, 8);
    const exact::Rational a(2);
    for (int n = 1; n < 8; ++n) {
        CHECK(j.alpha[n] == j.omega[n] / a + a);
        CHECK(j.alpha[n] == exact::Rational(n) + a);
    }
}

TEST_CASE("multiplication operator intertwines through the isomorphism")
{
    const measures::MeasureSpec specs[] = {
        gaussian(0.6, 1.1), poisson(1.7),
        raw_moments(measures::moments(poisson(1.0), 16))};
    Rng rng(7);
    for (const auto& spec : specs) {
        const auto tf = truncate(spec, 8);
        const auto f = field_matrix(build_ladders(tf));
        for (int trial = 0; trial < 5; ++trial) {
            // random polynomial of degree <= 6, as monomial coefficients
            std::vector<std::complex<double>> p(7);
            for (auto& c : p)
                c = rng.complex_in_box(1.0);
            const FockVector v = u_inverse(tf, p);
            const auto got = u_isomorphism(tf, FockVector(f * v));
            for (std::size_t k = 0; k < got.size(); ++k) {
                const std::complex<double> want = k >= 1 && k - 1 < p.size() ? p[k - 1] : 0.0;
                CHECK(std::abs(got[k] - want) <= 1e-9);
            }
        }
    }
}

TEST_CASE("creation shifts the polynomial family")
{
    const auto tf = truncate(poisson(2.1), 8);
    const auto l = build_ladders(tf);
    for (int n = 0; n + 1 < 8; ++n) {
        const auto poly = u_isomorphism(tf, FockVector(l.creation * FockVector::Unit(8, n)));
        for (double x : {-1.0, 0.5, 2.0, 4.5}) {
            std::complex<double> v = 0.0;
            for (int k = static_cast<int>(poly.size()) - 1; k >= 0; --k)
                v = v * x + poly[k];
            const double want = orthopoly::eval_P(tf.jacobi(), n + 1, x);
            CHECK(std::abs(v - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_SUITE_END();
