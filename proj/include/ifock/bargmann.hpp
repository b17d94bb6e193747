#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ifock/fock.hpp"

namespace ifock::bargmann {

using Complex = std::complex<double>;

// F(z) = sum a_n z^n carrying its weight sequence; ||F||^2 = sum lambda_n |a_n|^2.
struct AnalyticSeries {
    Eigen::VectorXcd coeffs;
    std::vector<double> lambda;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double norm_sq() const;
    double norm() const;
    Complex eval(Complex z) const;
};

// Convergence data of sum z^n / lambda_n. r_lambda is a finite-depth
// estimate of liminf lambda_n^{1/n} (taken over the deeper half of the
// sequence) unless the weights come from a family with a known entire limit.
struct DomainInfo {
    double r_lambda = 0.0;
    double omega_radius = 0.0; // sqrt(r_lambda); series in x-space converge on |z| < this
    bool known_infinite = false;
    bool is_estimate = true;
};
DomainInfo domain_info(const std::vector<double>& lambda);

struct SeriesValue {
    Complex value;
    double tail_bound = 0.0; // geometric bound on the dropped tail
    bool certified = false;  // tail_bound <= 1e-12 * |value|
};

// Partial sum of G(z) = sum z^n / lambda_n. Throws OutsideDomain when |z|
// reaches 99% of the estimated radius.
SeriesValue G_lambda_detailed(const std::vector<double>& lambda, Complex z);
Complex G_lambda(const std::vector<double>& lambda, Complex z);

enum class KernelMethod { Series, ClosedFormGaussian, ClosedFormPoisson };

// Generating kernel E(x, z) = sum_n P_n(x) z^n / lambda_n, truncated at the
// family depth. Named families default to their closed forms
//   Gaussian: exp[z (x - m)/var - z^2/(2 var)],
//   Poisson:  e^{-z} (1 + z/a)^x  (integer lattice points),
// and must agree with the series evaluation wherever both apply.
struct CoherentKernel {
    measures::MeasureSpec spec;
    orthopoly::PolynomialFamily family;
    KernelMethod method = KernelMethod::Series;
    DomainInfo domain;

    int depth() const { return family.depth(); }
};

CoherentKernel make_kernel(const measures::MeasureSpec& spec, int depth = 64);
CoherentKernel make_kernel(const measures::MeasureSpec& spec, int depth, KernelMethod method);

SeriesValue coherent_detailed(const CoherentKernel& k, double x, Complex z);
Complex coherent(const CoherentKernel& k, double x, Complex z);

// (S f)(z) = integral of E(x, z) f(x) dmu(x), evaluated with the given rule.
// The rule must integrate the truncated kernel against f exactly:
// exactness >= depth - 1 + f_degree.
Complex sb_transform(const CoherentKernel& k, const measures::RealQuadrature& q,
                     const std::function<Complex(double)>& f, int f_degree, Complex z);

// Same integral for a polynomial f in monomial form, with node products kept
// in extended precision; the kernel values grow large on wide rules and
// plain double products cost digits the identity checks need.
Complex sb_transform_poly(const CoherentKernel& k, const measures::RealQuadrature& q,
                          const std::vector<Complex>& monomial, Complex z);

// Pointwise transform of f = sum c_n P_n given in the P basis, evaluating f
// by the recurrence at each node (no monomial expansion, whose coefficients
// can dwarf the polynomial values).
Complex sb_transform_pbasis(const CoherentKernel& k, const measures::RealQuadrature& q,
                            const std::vector<Complex>& pcoeffs, Complex z);

// Series form of the transform: P_n goes to z^n, so P-basis coefficients map
// unchanged; monomial input is re-expanded first.
AnalyticSeries sb_series_pbasis(const std::vector<double>& lambda,
                                const std::vector<Complex>& pcoeffs);
AnalyticSeries sb_series_monomial(const orthopoly::PolynomialFamily& fam,
                                  const std::vector<Complex>& mono);

// Coefficient-space images of the ladder operators on power series: same
// matrix shapes as on the sequence space, with omega_n recovered as
// lambda_n / lambda_{n-1}.
using TildeOps = fock::LadderMatrices;
TildeOps tilde_ops(const std::vector<double>& lambda, const std::vector<double>& alpha,
                   int depth);
TildeOps tilde_ops(const orthopoly::JacobiData& j);
Eigen::MatrixXcd tilde_field(const TildeOps& t);

// Poisson shifted-ladder factorization on the series side; same interior
// block contract as the sequence-space check.
fock::FactorizationReport verify_poisson_factorization_tilde(const TildeOps& t, double a);

// Largest n whose coefficient rows stay small enough for the monomial
// round-trip to hold 1e-9 in extended precision. The rows grow
// combinatorially, so this route is conditioning-capped by nature.
int monomial_route_depth(const orthopoly::PolynomialFamily& fam, int hard_cap);

// Transform identities of the named families, n <= depth-2:
//   (a) S P_n = z^n
//   (b) S(U A U* P_n)  = omega_n z^{n-1}
//   (c) S(U A* U* P_n) = z^{n+1}
//   (d) S((x - m) P_n) = z^{n+1} + var*n z^{n-1}          (Gaussian)
//       S(x P_n)       = z^{n+1} + (n+a) z^n + a*n z^{n-1} (Poisson)
// checked two ways: pointwise by quadrature at sample z, and coefficientwise
// by pushing the sequence-space ladder images through the series map and
// comparing against the series-side operators and the closed-form patterns.
// A monomial round-trip re-derives the expansions from the coefficient table
// up to the conditioning cap. Raw-moment input checks the general pattern
// z^{n+1} + alpha_n z^n + omega_n z^{n-1}.
struct PropositionReport {
    double pointwise_a = 0.0, pointwise_b = 0.0, pointwise_c = 0.0, pointwise_d = 0.0;
    double coeff_a = 0.0, coeff_b = 0.0, coeff_c = 0.0, coeff_d = 0.0;
    double monomial_roundtrip = 0.0;
    bool pattern_ok = false; // item (d) support and closed-form values match
    int max_n = 0;
    int monomial_max_n = 0;

    double max_pointwise() const;
    double max_coeff() const;
};
PropositionReport verify_propositions(const measures::MeasureSpec& spec, int depth);

// S(x p) = (At + At* + alpha_t) S(p) for every polynomial p of degree
// <= depth-2, column by column: the P-basis expansion of x P_n obtained by
// quadrature projection must match column n of the series-side field matrix.
struct IntertwiningReport {
    double max_coeff_defect_projection = 0.0; // all n <= depth-2
    double max_coeff_defect_monomial = 0.0;   // monomial route, n <= monomial_max_n
    int max_n = 0;
    int monomial_max_n = 0;
};
IntertwiningReport verify_intertwining(const measures::MeasureSpec& spec, int depth);

// || E(., z) || = G(|z|^2)^{1/2} under quadrature at the given points.
double verify_coherent_norm(const CoherentKernel& k, const std::vector<Complex>& zs);

// <E(., conj z), E(., conj w)> = sum (z w)^n / lambda_n at the given pairs.
double verify_reproducing_kernel(const CoherentKernel& k,
                                 const std::vector<std::pair<Complex, Complex>>& zw);

} // namespace ifock::bargmann
