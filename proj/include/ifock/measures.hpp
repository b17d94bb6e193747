#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ifock/exact.hpp"

namespace ifock::measures {

enum class Kind { Gaussian, Poisson, RawMoments };

// Probability measure on the real line, given either as a named family or as
// a raw moment sequence m_0, m_1, ... (m_0 = 1). Immutable after construction.
struct MeasureSpec {
    Kind kind = Kind::Gaussian;
    double mean = 0.0;       // Gaussian
    double variance = 1.0;   // Gaussian
    double a = 1.0;          // Poisson rate
    std::vector<double> raw; // RawMoments, m_0 first
};

MeasureSpec gaussian(double mean, double variance);
MeasureSpec poisson(double a);
MeasureSpec raw_moments(std::vector<double> moments);

// Text form: gaussian:m=<float>,var=<float> | poisson:a=<float> | raw:[m0,m1,...]
MeasureSpec parse_measure_spec(std::string_view text);
std::string format_measure_spec(const MeasureSpec& spec);

// Moments m_0..m_{count-1}. Named families use their closed recurrences
// (Gaussian: m_k = mean*m_{k-1} + (k-1)*var*m_{k-2}; Poisson: the Touchard
// recurrence in the rate), never quadrature.
std::vector<double> moments(const MeasureSpec& spec, int count);
double moment(const MeasureSpec& spec, int k);

// Same recurrences over exact rationals (parameters converted exactly).
std::vector<exact::Rational> moments_exact(const MeasureSpec& spec, int count);

// Finitely supported positive rule integrating against the source measure.
struct RealQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness_degree = 0;
};

// Gaussian/RawMoments: Gauss rule with ceil((degree+1)/2) nodes from the
// eigen-decomposition of the Jacobi matrix. Poisson: the integer lattice with
// weights e^{-a} a^k / k!, truncated once both the dropped mass is < 1e-16
// and the dropped tail of x^degree is negligible.
RealQuadrature make_quadrature(const MeasureSpec& spec, int degree);

// Generic Gauss rule from monic three-term recurrence data
// (x - diag[k]) p_k = p_{k+1} + offdiag[k-1] p_{k-1}; offdiag[k] > 0 holds
// omega_{k+1} for k = 0..n-2. Weights sum to total_mass.
RealQuadrature gauss_rule_from_recurrence(const std::vector<double>& diag,
                                          const std::vector<double>& offdiag,
                                          double total_mass);

std::complex<double> integrate(const RealQuadrature& q,
                               const std::function<std::complex<double>(double)>& f);
double integrate_real(const RealQuadrature& q, const std::function<double(double)>& f);

} // namespace ifock::measures
