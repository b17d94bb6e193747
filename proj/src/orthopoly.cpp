#include "ifock/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ifock::orthopoly {

using exact::Rational;

JacobiData JacobiExact::to_double() const
{
    JacobiData j;
    j.alpha.reserve(alpha.size());
    j.omega.reserve(omega.size());
    for (const auto& a : alpha)
        j.alpha.push_back(exact::to_double(a));
    for (const auto& w : omega)
        j.omega.push_back(exact::to_double(w));
    // keep lambda_n = lambda_{n-1} * omega_n exact in double as stored
    j.lambda.resize(j.alpha.size());
    if (!j.lambda.empty())
        j.lambda[0] = 1.0;
    for (std::size_t n = 1; n < j.lambda.size(); ++n)
        j.lambda[n] = j.lambda[n - 1] * j.omega[n];
    return j;
}

namespace {

template <class T>
struct ExtractedSeqs {
    std::vector<T> alpha, omega;
};

// alpha_n = S_n/D_n - S_{n-1}/D_{n-1}, omega_n = D_n D_{n-2} / D_{n-1}^2
// with D_{-1} = 1 and S_{-1}/D_{-1} = 0, where D_n, S_n are the elimination
// pivots and first superdiagonal entries. Both ratios are invariant under
// the common input scaling used by the exact path.
template <class T>
ExtractedSeqs<T> sequences_from_elimination(const std::vector<T>& pivot,
                                            const std::vector<T>& shifted, int depth)
{
    ExtractedSeqs<T> r;
    r.alpha.resize(depth);
    r.omega.resize(depth);
    r.omega[0] = T(0);
    for (int n = 0; n < depth; ++n) {
        T a = shifted[n] / pivot[n];
        if (n > 0)
            a -= shifted[n - 1] / pivot[n - 1];
        r.alpha[n] = a;
        if (n >= 1) {
            const T prev2 = (n >= 2) ? pivot[n - 2] : T(1);
            r.omega[n] = pivot[n] * prev2 / (pivot[n - 1] * pivot[n - 1]);
        }
    }
    return r;
}

} // namespace

JacobiExact jacobi_from_moments_exact(const std::vector<Rational>& m, int depth)
{
    if (depth < 1)
        throw Error("jacobi_from_moments_exact: depth must be >= 1");
    if (static_cast<int>(m.size()) < 2 * depth)
        throw DepthUnavailable("jacobi_from_moments_exact: need " + std::to_string(2 * depth) +
                               " moments for depth " + std::to_string(depth));
    if (m[0] != 1)
        throw InvalidMeasure("jacobi_from_moments_exact: m0 must be 1");

    const auto elim = exact::eliminate_hankel_exact(m, depth);
    if (elim.usable < depth)
        throw PositivityViolation("Hankel minor of order " + std::to_string(elim.usable) +
                                  " is not strictly positive");

    std::vector<Rational> pivot(elim.pivot.size()), shifted(elim.shifted.size());
    for (std::size_t i = 0; i < pivot.size(); ++i) {
        pivot[i] = Rational(elim.pivot[i]);
        shifted[i] = Rational(elim.shifted[i]);
    }
    const auto seqs = sequences_from_elimination<Rational>(pivot, shifted, depth);

    JacobiExact j;
    j.alpha = seqs.alpha;
    j.omega = seqs.omega;
    j.lambda.resize(depth);
    j.lambda[0] = 1;
    for (int n = 1; n < depth; ++n)
        j.lambda[n] = j.lambda[n - 1] * j.omega[n];
    return j;
}

JacobiData jacobi_from_moments_fp(const std::vector<double>& m, int depth)
{
    if (depth < 1)
        throw Error("jacobi_from_moments_fp: depth must be >= 1");
    if (static_cast<int>(m.size()) < 2 * depth)
        throw DepthUnavailable("jacobi_from_moments_fp: need " + std::to_string(2 * depth) +
                               " moments for depth " + std::to_string(depth));
    if (m[0] != 1.0)
        throw InvalidMeasure("jacobi_from_moments_fp: m0 must be 1");

    const std::vector<long double> mld(m.begin(), m.end());
    const auto elim = exact::eliminate_hankel<long double>(mld, depth);
    if (elim.usable < depth)
        throw PositivityViolation("Hankel minor of order " + std::to_string(elim.usable) +
                                  " is not strictly positive (extended precision)");
    const auto seqs = sequences_from_elimination<long double>(elim.pivot, elim.shifted, depth);

    JacobiData j;
    j.alpha.assign(seqs.alpha.begin(), seqs.alpha.end());
    j.omega.assign(seqs.omega.begin(), seqs.omega.end());
    j.lambda.resize(depth);
    j.lambda[0] = 1.0;
    for (int n = 1; n < depth; ++n)
        j.lambda[n] = j.lambda[n - 1] * j.omega[n];

    // error estimate: rerun in plain double and compare; Hankel conditioning
    // makes the two passes drift apart well before either produces garbage
    double err = 0.0;
    const auto elim_d = exact::eliminate_hankel<double>(m, depth);
    if (elim_d.usable < depth) {
        err = std::numeric_limits<double>::infinity();
    } else {
        const auto seqs_d = sequences_from_elimination<double>(elim_d.pivot, elim_d.shifted, depth);
        for (int n = 1; n < depth; ++n) {
            const double wl = static_cast<double>(seqs.omega[n]);
            err = std::max(err, std::abs(wl - seqs_d.omega[n]) / std::abs(wl));
        }
    }
    j.condition_error_estimate = err;
    j.condition_warning = !(err < 1e-9);
    return j;
}

int hankel_first_nonpositive(const std::vector<double>& m)
{
    const int rows = static_cast<int>(m.size()) / 2;
    if (rows < 1)
        return -1;
    std::vector<Rational> mr;
    mr.reserve(m.size());
    for (double v : m)
        mr.push_back(exact::rational_from_double(v));
    const auto elim = exact::eliminate_hankel_exact(mr, rows);
    return elim.usable < rows ? elim.usable : -1;
}

JacobiData jacobi_from_measure(const measures::MeasureSpec& spec, int depth)
{
    if (depth < 1)
        throw Error("jacobi_from_measure: depth must be >= 1");

    JacobiData j;
    switch (spec.kind) {
    case measures::Kind::Gaussian: {
        j.alpha.assign(depth, spec.mean);
        j.omega.resize(depth);
        for (int n = 0; n < depth; ++n)
            j.omega[n] = spec.variance * n;
        break;
    }
    case measures::Kind::Poisson: {
        j.alpha.resize(depth);
        j.omega.resize(depth);
        for (int n = 0; n < depth; ++n) {
            j.alpha[n] = n + spec.a;
            j.omega[n] = spec.a * n;
        }
        break;
    }
    case measures::Kind::RawMoments: {
        if (static_cast<int>(spec.raw.size()) < 2 * depth)
            throw DepthUnavailable("jacobi_from_measure: need " + std::to_string(2 * depth) +
                                   " raw moments for depth " + std::to_string(depth) + ", have " +
                                   std::to_string(spec.raw.size()));
        const auto m = measures::moments_exact(spec, 2 * depth);
        return jacobi_from_moments_exact(m, depth).to_double();
    }
    }
    j.lambda.resize(depth);
    j.lambda[0] = 1.0;
    for (int n = 1; n < depth; ++n)
        j.lambda[n] = j.lambda[n - 1] * j.omega[n];
    return j;
}

std::vector<double> lambda_sequence(const JacobiData& j)
{
    std::vector<double> lam(j.depth());
    if (lam.empty())
        return lam;
    lam[0] = 1.0;
    for (int n = 1; n < j.depth(); ++n)
        lam[n] = lam[n - 1] * j.omega[n];
    return lam;
}

ConditionStarReport check_condition_star(const std::vector<double>& lambda, int n_max,
                                         double threshold)
{
    ConditionStarReport rep;
    rep.threshold = threshold;
    const int top = std::min<int>(n_max, static_cast<int>(lambda.size()) - 1);
    rep.depth = top;
    if (top < 1) {
        rep.inf_estimate = 1.0; // lambda_0 = 1 alone
        rep.satisfied = 1.0 > threshold;
        return rep;
    }

    std::vector<double> roots(top);
    double inf = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= top; ++n) {
        if (!(lambda[n] > 0.0))
            throw PositivityViolation("check_condition_star: lambda must be > 0");
        roots[n - 1] = std::exp(std::log(lambda[n]) / n);
        inf = std::min(inf, roots[n - 1]);
    }
    rep.inf_estimate = inf;
    rep.satisfied = inf > threshold;

    // still strictly falling over the last third: the finite-depth minimum
    // is probably not representative of the true infimum
    const int tail = std::max(3, top / 3);
    bool falling = top > tail;
    for (int i = top - tail; falling && i + 1 <= top; ++i)
        if (i >= 1 && !(roots[i] < roots[i - 1]))
            falling = false;
    rep.decreasing_tail = falling;
    return rep;
}

PolynomialFamily make_family(const JacobiData& j)
{
    PolynomialFamily fam;
    fam.jacobi = j;
    const int n_rows = j.depth() + 1;
    fam.coeff.resize(n_rows);
    fam.coeff[0] = {1.0L};
    for (int n = 0; n + 1 < n_rows; ++n) {
        const long double a = j.alpha[n];
        const long double w = n >= 1 ? j.omega[n] : 0.0L;
        std::vector<long double> next(n + 2, 0.0L);
        const auto& cur = fam.coeff[n];
        for (int k = 0; k <= n; ++k) {
            next[k + 1] += cur[k];     // x * P_n
            next[k] -= a * cur[k];     // -alpha_n * P_n
        }
        if (n >= 1) {
            const auto& prev = fam.coeff[n - 1];
            for (int k = 0; k <= n - 1; ++k)
                next[k] -= w * prev[k]; // -omega_n * P_{n-1}
        }
        fam.coeff[n + 1] = std::move(next);
    }
    return fam;
}

PolynomialFamily make_family(const measures::MeasureSpec& spec, int depth)
{
    return make_family(jacobi_from_measure(spec, depth));
}

double eval_P(const JacobiData& j, int n, double x)
{
    if (n < 0 || n > j.depth())
        throw DegreeOverflow("eval_P: index exceeds available depth");
    long double prev = 0.0L, cur = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double next =
            (static_cast<long double>(x) - j.alpha[k]) * cur - (k >= 1 ? j.omega[k] : 0.0L) * prev;
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

double eval_P(const PolynomialFamily& fam, int n, double x)
{
    return eval_P(fam.jacobi, n, x);
}

double hermite(int n, double x, double var)
{
    long double prev = 0.0L, cur = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double next = x * cur - var * k * prev;
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

double charlier(int n, double x, double a)
{
    long double prev = 0.0L, cur = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double next = (x - k - a) * cur - a * k * prev;
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

std::vector<std::complex<long double>>
pbasis_to_monomial_ld(const PolynomialFamily& fam,
                      const std::vector<std::complex<long double>>& pc)
{
    if (static_cast<int>(pc.size()) > fam.depth() + 1)
        throw DegreeOverflow("pbasis_to_monomial: degree exceeds family depth");
    const int deg = static_cast<int>(pc.size()) - 1;
    std::vector<std::complex<long double>> acc(std::max(deg + 1, 1), 0.0L);
    for (int n = 0; n <= deg; ++n)
        for (int k = 0; k <= n; ++k)
            acc[k] += pc[n] * fam.coeff[n][k];
    return acc;
}

std::vector<std::complex<long double>>
monomial_to_pbasis_ld(const PolynomialFamily& fam,
                      const std::vector<std::complex<long double>>& mono)
{
    if (static_cast<int>(mono.size()) > fam.depth() + 1)
        throw DegreeOverflow("monomial_to_pbasis: degree exceeds family depth");
    const int deg = static_cast<int>(mono.size()) - 1;
    std::vector<std::complex<long double>> work = mono;
    std::vector<std::complex<long double>> out(mono.size(), 0.0L);
    for (int n = deg; n >= 0; --n) {
        const std::complex<long double> c = work[n]; // P_n is monic
        out[n] = c;
        for (int k = 0; k <= n; ++k)
            work[k] -= c * fam.coeff[n][k];
    }
    return out;
}

namespace {

std::vector<std::complex<long double>> widen(const std::vector<std::complex<double>>& v)
{
    std::vector<std::complex<long double>> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        out[k] = {v[k].real(), v[k].imag()};
    return out;
}

std::vector<std::complex<double>> narrow(const std::vector<std::complex<long double>>& v)
{
    std::vector<std::complex<double>> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        out[k] = {static_cast<double>(v[k].real()), static_cast<double>(v[k].imag())};
    return out;
}

} // namespace

std::vector<std::complex<double>>
pbasis_to_monomial(const PolynomialFamily& fam, const std::vector<std::complex<double>>& pc)
{
    return narrow(pbasis_to_monomial_ld(fam, widen(pc)));
}

std::vector<std::complex<double>>
monomial_to_pbasis(const PolynomialFamily& fam, const std::vector<std::complex<double>>& mono)
{
    return narrow(monomial_to_pbasis_ld(fam, widen(mono)));
}

std::vector<std::vector<Rational>> family_coeffs_exact(const JacobiExact& j)
{
    const int n_rows = j.depth() + 1;
    std::vector<std::vector<Rational>> coeff(n_rows);
    coeff[0] = {Rational(1)};
    for (int n = 0; n + 1 < n_rows; ++n) {
        std::vector<Rational> next(n + 2, Rational(0));
        for (int k = 0; k <= n; ++k) {
            next[k + 1] += coeff[n][k];
            next[k] -= j.alpha[n] * coeff[n][k];
        }
        if (n >= 1)
            for (int k = 0; k <= n - 1; ++k)
                next[k] -= j.omega[n] * coeff[n - 1][k];
        coeff[n + 1] = std::move(next);
    }
    return coeff;
}

} // namespace ifock::orthopoly
