#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "ifock/exact.hpp"
#include "ifock/measures.hpp"

namespace ifock::orthopoly {

// Recurrence data of the monic orthogonal polynomials of a measure:
//
//   (x - alpha_n) P_n = P_{n+1} + omega_n P_{n-1},   omega_0 P_{-1} = 0,
//   <P_n, P_m> = delta_{nm} lambda_n,  lambda_0 = 1,  lambda_n = omega_1...omega_n.
//
// Depth N holds alpha_0..alpha_{N-1}, omega_1..omega_{N-1} and
// lambda_0..lambda_{N-1}. omega[0] stores the conventional omega_0 = 0, so
// all arrays index by the subscript above. lambda is stored as the exact
// cumulative product of the stored omegas.
struct JacobiData {
    std::vector<double> alpha;
    std::vector<double> omega;
    std::vector<double> lambda;
    bool condition_warning = false;       // floating extraction lost accuracy
    double condition_error_estimate = 0.0;

    int depth() const { return static_cast<int>(alpha.size()); }
};

struct JacobiExact {
    std::vector<exact::Rational> alpha;
    std::vector<exact::Rational> omega;
    std::vector<exact::Rational> lambda;

    int depth() const { return static_cast<int>(alpha.size()); }
    JacobiData to_double() const;
};

// Gaussian(mean, var): alpha_n = mean, omega_n = var*n. Poisson(a):
// alpha_n = n + a, omega_n = a*n. Raw moment input goes through the exact
// rational Hankel elimination (all finite doubles convert exactly).
JacobiData jacobi_from_measure(const measures::MeasureSpec& spec, int depth);

// Moment-matrix extraction. Requires m[0..2*depth-1], m0 = 1 and strictly
// positive leading Hankel minors up to order depth-1.
JacobiExact jacobi_from_moments_exact(const std::vector<exact::Rational>& m, int depth);

// Same elimination in extended precision. Sets condition_warning (with an
// error estimate from a second reduced-precision pass) when the Hankel
// conditioning visibly degrades the result; kept for cross-validation of the
// exact path.
JacobiData jacobi_from_moments_fp(const std::vector<double>& m, int depth);

// Order of the first non-positive leading Hankel minor, -1 if all minors of
// order <= floor(m.size()/2) - 1 are positive. Exact arithmetic.
int hankel_first_nonpositive(const std::vector<double>& m);

// Cumulative products lambda_n = omega_1...omega_n recomputed from omega.
std::vector<double> lambda_sequence(const JacobiData& j);

// Finite-depth witness for inf_{n>=1} lambda_n^{1/n} > 0. No finite
// computation can certify the infimum; the report says so.
struct ConditionStarReport {
    double inf_estimate = 0.0;
    bool satisfied = false;
    bool decreasing_tail = false; // estimates still falling at max depth
    double threshold = 1e-6;
    int depth = 0;

    static constexpr std::string_view witness_note =
        "finite-depth witness, not a proof";
};
ConditionStarReport check_condition_star(const std::vector<double>& lambda, int n_max,
                                         double threshold = 1e-6);

// Monomial coefficient table of P_0..P_depth (one row more than depth, since
// P_depth needs only alpha_{depth-1}, omega_{depth-1}). Rows are monic.
struct PolynomialFamily {
    JacobiData jacobi;
    std::vector<std::vector<long double>> coeff; // coeff[n][k] = [x^k] P_n

    int depth() const { return jacobi.depth(); }
};
PolynomialFamily make_family(const JacobiData& j);
PolynomialFamily make_family(const measures::MeasureSpec& spec, int depth);

// Forward three-term recurrence; the coefficient table is not used.
double eval_P(const JacobiData& j, int n, double x);
double eval_P(const PolynomialFamily& fam, int n, double x);

// Monic Hermite (variance parameter) and Charlier closed-family recurrences,
//   H_{n+1} = x H_n - var*n H_{n-1},
//   C_{n+1} = (x - n - a) C_n - a*n C_{n-1};
// independent oracles for eval_P on the named families.
double hermite(int n, double x, double var);
double charlier(int n, double x, double a);

// Basis changes between monomial coefficients (degree ≤ depth) and
// coefficients in the P_n basis. Both are exact linear maps computed in
// extended precision; the _ld variants keep extended precision end to end
// for verification pipelines where intermediate rounding matters.
std::vector<std::complex<long double>>
pbasis_to_monomial_ld(const PolynomialFamily& fam,
                      const std::vector<std::complex<long double>>& pc);
std::vector<std::complex<long double>>
monomial_to_pbasis_ld(const PolynomialFamily& fam,
                      const std::vector<std::complex<long double>>& mono);
std::vector<std::complex<double>>
pbasis_to_monomial(const PolynomialFamily& fam, const std::vector<std::complex<double>>& pc);
std::vector<std::complex<double>>
monomial_to_pbasis(const PolynomialFamily& fam, const std::vector<std::complex<double>>& mono);

// Exact coefficient table of P_0..P_depth for rational recurrence data.
std::vector<std::vector<exact::Rational>> family_coeffs_exact(const JacobiExact& j);

} // namespace ifock::orthopoly
