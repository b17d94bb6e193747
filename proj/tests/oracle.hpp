#pragma once

// Test-only oracles. Deliberately independent of the library's numerical
// routes: Gauss rules from interlacing bisection plus Lagrange-basis moment
// integrals (no eigensolver, no weight formula), direct lattice sums, and
// Stirling asymptotics.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline long double hermite_monic(int n, long double x, long double var)
{
    long double p = 0.0L, c = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double nx = x * c - var * k * p;
        p = c;
        c = nx;
    }
    return c;
}

inline std::vector<long double> gaussian_moments(int count, long double mean, long double var)
{
    std::vector<long double> m(count);
    for (int k = 0; k < count; ++k) {
        if (k == 0)
            m[k] = 1.0L;
        else if (k == 1)
            m[k] = mean;
        else
            m[k] = mean * m[k - 1] + (k - 1) * var * m[k - 2];
    }
    return m;
}

// roots of the degree-n monic Hermite polynomial (variance var), found level
// by level: the roots of each degree bracket the roots of the next
inline std::vector<long double> hermite_roots(int n, long double var)
{
    std::vector<long double> roots; // degree-1 root
    roots.push_back(0.0L);
    for (int deg = 2; deg <= n; ++deg) {
        const long double outer = 2.0L * std::sqrt(var * deg) + 2.0L;
        std::vector<long double> brackets;
        brackets.push_back(-outer);
        for (const long double r : roots)
            brackets.push_back(r);
        brackets.push_back(outer);

        std::vector<long double> next;
        for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
            long double lo = brackets[i], hi = brackets[i + 1];
            long double flo = hermite_monic(deg, lo, var);
            if (flo == 0.0L) {
                next.push_back(lo);
                continue;
            }
            for (int it = 0; it < 200; ++it) {
                const long double mid = 0.5L * (lo + hi);
                const long double fm = hermite_monic(deg, mid, var);
                if ((flo < 0) == (fm < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            next.push_back(0.5L * (lo + hi));
        }
        if (static_cast<int>(next.size()) != deg)
            throw std::runtime_error("oracle: bisection lost a root");
        roots = std::move(next);
    }
    return roots;
}

struct Rule {
    std::vector<double> nodes, weights;
};

// n-node Gauss rule for Gaussian(mean, var): bisection roots, weights from
// integrating the Lagrange basis against the moment sequence
inline Rule gauss_hermite_rule(int n, double mean, double var)
{
    const auto roots = hermite_roots(n, var);
    const auto mom = gaussian_moments(n + 1, 0.0L, var); // centered measure

    Rule rule;
    for (int i = 0; i < n; ++i) {
        // numerator polynomial prod_{j != i} (x - r_j), low-to-high coefficients
        std::vector<long double> c{1.0L};
        long double denom = 1.0L;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            std::vector<long double> nc(c.size() + 1, 0.0L);
            for (std::size_t k = 0; k < c.size(); ++k) {
                nc[k + 1] += c[k];
                nc[k] -= roots[j] * c[k];
            }
            c = std::move(nc);
            denom *= roots[i] - roots[j];
        }
        long double w = 0.0L;
        for (std::size_t k = 0; k < c.size(); ++k)
            w += c[k] * mom[k];
        rule.nodes.push_back(static_cast<double>(roots[i] + mean));
        rule.weights.push_back(static_cast<double>(w / denom));
    }
    return rule;
}

inline double apply(const Rule& r, const std::function<double(double)>& f)
{
    long double s = 0.0L;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        s += static_cast<long double>(r.weights[i]) * f(r.nodes[i]);
    return static_cast<double>(s);
}

// direct sum of f against the Poisson(a) lattice
inline double poisson_sum(const std::function<double(double)>& f, double a, int terms = 500)
{
    long double s = 0.0L;
    long double w = std::exp(static_cast<long double>(-a));
    for (int k = 0; k < terms; ++k) {
        s += w * f(static_cast<double>(k));
        w *= a / (k + 1);
    }
    return static_cast<double>(s);
}

// (n!)^{1/n} with the next-order Stirling correction
inline double stirling_root_factorial(int n)
{
    return std::exp(std::lgamma(n + 1.0) / n);
}

} // namespace oracle
