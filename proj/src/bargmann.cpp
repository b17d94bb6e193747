#include "ifock/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ifock::bargmann {

namespace {

using CLD = std::complex<long double>;

Complex ipow(Complex b, int e)
{
    Complex r = 1.0;
    while (e > 0) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Fixed evaluation points, shrunk into the estimated disk when it is finite.
std::vector<Complex> sample_points(const DomainInfo& d)
{
    std::vector<Complex> zs = {{1.3, 0.4}, {-0.8, 0.9}, {0.5, -1.1}, {-1.2, -0.3}, {1.9, 0.0}};
    if (!d.known_infinite) {
        const double f = std::min(1.0, 0.45 * d.omega_radius / 1.9);
        for (auto& z : zs)
            z *= f;
    }
    return zs;
}

void require_inside(const DomainInfo& d, double zabs, double radius, const char* who)
{
    if (d.known_infinite)
        return;
    if (!(zabs < 0.99 * radius))
        throw OutsideDomain(std::string(who) + ": |z| = " + std::to_string(zabs) +
                            " not inside 99% of the estimated radius " + std::to_string(radius));
}

} // namespace

double AnalyticSeries::norm_sq() const
{
    if (lambda.size() < static_cast<std::size_t>(coeffs.size()))
        throw Error("AnalyticSeries: weight sequence shorter than coefficients");
    long double s = 0.0L;
    for (int n = 0; n < coeffs.size(); ++n)
        s += static_cast<long double>(lambda[n]) * std::norm(coeffs(n));
    return static_cast<double>(s);
}

double AnalyticSeries::norm() const { return std::sqrt(norm_sq()); }

Complex AnalyticSeries::eval(Complex z) const
{
    CLD acc = 0.0L;
    const CLD zl(z.real(), z.imag());
    for (int n = static_cast<int>(coeffs.size()) - 1; n >= 0; --n)
        acc = acc * zl + CLD(coeffs(n).real(), coeffs(n).imag());
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

DomainInfo domain_info(const std::vector<double>& lambda)
{
    if (lambda.size() < 2)
        throw Error("domain_info: need weights to depth >= 2");
    const int top = static_cast<int>(lambda.size()) - 1;
    const int start = std::max(1, top / 2);
    double mn = std::numeric_limits<double>::infinity();
    for (int n = start; n <= top; ++n) {
        if (!(lambda[n] > 0.0))
            throw PositivityViolation("domain_info: weights must be > 0");
        mn = std::min(mn, std::exp(std::log(lambda[n]) / n));
    }
    DomainInfo d;
    d.r_lambda = mn;
    d.omega_radius = std::sqrt(mn);
    d.known_infinite = false;
    d.is_estimate = true;
    return d;
}

SeriesValue G_lambda_detailed(const std::vector<double>& lambda, Complex z)
{
    const DomainInfo d = domain_info(lambda);
    require_inside(d, std::abs(z), d.r_lambda, "G_lambda");

    const CLD zl(z.real(), z.imag());
    CLD term = CLD(1.0L) / static_cast<long double>(lambda[0]);
    CLD acc = term;
    for (std::size_t n = 1; n < lambda.size(); ++n) {
        term *= zl;
        term *= static_cast<long double>(lambda[n - 1] / lambda[n]);
        acc += term;
    }

    // dropped terms shrink at least like the last few weight ratios
    const double zabs = std::abs(z);
    double q = 0.0;
    const int top = static_cast<int>(lambda.size()) - 1;
    for (int n = std::max(1, top - 2); n <= top; ++n)
        q = std::max(q, zabs * lambda[n - 1] / lambda[n]);

    SeriesValue out;
    out.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    const double last = std::abs(std::complex<double>(static_cast<double>(term.real()),
                                                      static_cast<double>(term.imag())));
    out.tail_bound = q < 1.0 ? last * q / (1.0 - q) : std::numeric_limits<double>::infinity();
    out.certified = out.tail_bound <= 1e-12 * std::abs(out.value);
    return out;
}

Complex G_lambda(const std::vector<double>& lambda, Complex z)
{
    return G_lambda_detailed(lambda, z).value;
}

CoherentKernel make_kernel(const measures::MeasureSpec& spec, int depth)
{
    KernelMethod m = KernelMethod::Series;
    if (spec.kind == measures::Kind::Gaussian)
        m = KernelMethod::ClosedFormGaussian;
    else if (spec.kind == measures::Kind::Poisson)
        m = KernelMethod::ClosedFormPoisson;
    return make_kernel(spec, depth, m);
}

CoherentKernel make_kernel(const measures::MeasureSpec& spec, int depth, KernelMethod method)
{
    if (depth < 2)
        throw Error("make_kernel: depth must be >= 2");
    if (method == KernelMethod::ClosedFormGaussian && spec.kind != measures::Kind::Gaussian)
        throw Error("make_kernel: Gaussian closed form needs a Gaussian measure");
    if (method == KernelMethod::ClosedFormPoisson && spec.kind != measures::Kind::Poisson)
        throw Error("make_kernel: Poisson closed form needs a Poisson measure");

    CoherentKernel k;
    k.spec = spec;
    k.family = orthopoly::make_family(spec, depth);
    k.method = method;
    if (spec.kind == measures::Kind::RawMoments) {
        k.domain = domain_info(k.family.jacobi.lambda);
    } else {
        // entire for both named families
        k.domain.r_lambda = std::numeric_limits<double>::infinity();
        k.domain.omega_radius = std::numeric_limits<double>::infinity();
        k.domain.known_infinite = true;
        k.domain.is_estimate = false;
    }
    return k;
}

namespace {

SeriesValue coherent_series(const CoherentKernel& k, double x, Complex z)
{
    const auto& j = k.family.jacobi;
    const CLD zl(z.real(), z.imag());

    CLD acc = 0.0L;
    CLD zpow = 1.0L;
    long double p_prev = 0.0L, p_cur = 1.0L;
    double t0 = 0.0, t1 = 0.0, t2 = 0.0; // magnitudes of the last three terms
    for (int n = 0; n < k.depth(); ++n) {
        const CLD term = zpow * (p_cur / static_cast<long double>(j.lambda[n]));
        acc += term;
        t0 = t1;
        t1 = t2;
        t2 = static_cast<double>(std::abs(term));
        const long double p_next =
            (static_cast<long double>(x) - j.alpha[n]) * p_cur - (n >= 1 ? j.omega[n] : 0.0L) * p_prev;
        p_prev = p_cur;
        p_cur = p_next;
        zpow *= zl;
    }

    SeriesValue out;
    out.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    // empirical geometric ratio over the last retained terms; the polynomial
    // values oscillate, so a term near a zero would fake a huge ratio — the
    // recurrence ratio |z|/sqrt(omega) caps it from the weight growth side
    double q = std::numeric_limits<double>::infinity();
    if (t0 > 0.0 && t1 > 0.0)
        q = std::max(t1 / t0, t2 / t1);
    else if (t1 > 0.0)
        q = t2 / t1;
    else if (t2 == 0.0)
        q = 0.0;
    const double omega_last = j.omega[k.depth() - 1];
    if (omega_last > 0.0)
        q = std::min(q, std::abs(z) / std::sqrt(omega_last));
    const double last = std::max({t0, t1, t2});
    out.tail_bound = q < 1.0 ? last * q / (1.0 - q) : std::numeric_limits<double>::infinity();
    out.certified = out.tail_bound <= 1e-12 * std::abs(out.value);
    return out;
}

} // namespace

SeriesValue coherent_detailed(const CoherentKernel& k, double x, Complex z)
{
    require_inside(k.domain, std::abs(z), k.domain.omega_radius, "coherent");

    switch (k.method) {
    case KernelMethod::ClosedFormGaussian: {
        const double m = k.spec.mean, var = k.spec.variance;
        const Complex e = std::exp(z * (x - m) / var - z * z / (2.0 * var));
        return {e, 0.0, true};
    }
    case KernelMethod::ClosedFormPoisson: {
        const double xi = std::round(x);
        if (std::abs(x - xi) < 1e-9 && xi >= 0.0) {
            const double a = k.spec.a;
            const Complex e = std::exp(-z) * ipow(1.0 + z / a, static_cast<int>(xi));
            return {e, 0.0, true};
        }
        return coherent_series(k, x, z); // off-lattice points
    }
    case KernelMethod::Series:
        return coherent_series(k, x, z);
    }
    throw Error("coherent: unreachable");
}

Complex coherent(const CoherentKernel& k, double x, Complex z)
{
    return coherent_detailed(k, x, z).value;
}

Complex sb_transform(const CoherentKernel& k, const measures::RealQuadrature& q,
                     const std::function<Complex(double)>& f, int f_degree, Complex z)
{
    if (q.exactness_degree < k.depth() - 1 + f_degree)
        throw QuadratureDegreeTooLow(
            "sb_transform: rule exactness " + std::to_string(q.exactness_degree) +
            " < kernel degree + f degree = " + std::to_string(k.depth() - 1 + f_degree));
    require_inside(k.domain, std::abs(z), k.domain.omega_radius, "sb_transform");
    return measures::integrate(q, [&](double x) { return coherent(k, x, z) * f(x); });
}

namespace {

CLD ipow_ld(CLD b, int e)
{
    CLD r = 1.0L;
    while (e > 0) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

CLD coherent_ld(const CoherentKernel& k, long double x, CLD z)
{
    switch (k.method) {
    case KernelMethod::ClosedFormGaussian: {
        const long double m = k.spec.mean, var = k.spec.variance;
        return std::exp(z * ((x - m) / var) - z * z / (2.0L * var));
    }
    case KernelMethod::ClosedFormPoisson: {
        const long double xi = std::roundl(x);
        if (std::abs(x - xi) < 1e-9L && xi >= 0.0L) {
            const long double a = k.spec.a;
            return std::exp(-z) * ipow_ld(CLD(1.0L) + z / a, static_cast<int>(xi));
        }
        break; // fall through to the series
    }
    case KernelMethod::Series:
        break;
    }
    const auto& j = k.family.jacobi;
    CLD acc = 0.0L;
    CLD zpow = 1.0L;
    long double p_prev = 0.0L, p_cur = 1.0L;
    for (int n = 0; n < k.depth(); ++n) {
        acc += zpow * (p_cur / static_cast<long double>(j.lambda[n]));
        const long double p_next =
            (x - j.alpha[n]) * p_cur - (n >= 1 ? j.omega[n] : 0.0L) * p_prev;
        p_prev = p_cur;
        p_cur = p_next;
        zpow *= z;
    }
    return acc;
}

} // namespace

Complex sb_transform_poly(const CoherentKernel& k, const measures::RealQuadrature& q,
                          const std::vector<Complex>& monomial, Complex z)
{
    const int f_degree = std::max(0, static_cast<int>(monomial.size()) - 1);
    if (q.exactness_degree < k.depth() - 1 + f_degree)
        throw QuadratureDegreeTooLow(
            "sb_transform_poly: rule exactness " + std::to_string(q.exactness_degree) +
            " < kernel degree + f degree = " + std::to_string(k.depth() - 1 + f_degree));
    require_inside(k.domain, std::abs(z), k.domain.omega_radius, "sb_transform_poly");

    const CLD zl(z.real(), z.imag());
    CLD acc = 0.0L;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const long double x = q.nodes[i];
        CLD f = 0.0L;
        for (int c = static_cast<int>(monomial.size()) - 1; c >= 0; --c)
            f = f * x + CLD(monomial[c].real(), monomial[c].imag());
        acc += static_cast<long double>(q.weights[i]) * coherent_ld(k, x, zl) * f;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

Complex sb_transform_pbasis(const CoherentKernel& k, const measures::RealQuadrature& q,
                            const std::vector<Complex>& pcoeffs, Complex z)
{
    const int f_degree = std::max(0, static_cast<int>(pcoeffs.size()) - 1);
    if (f_degree > k.depth())
        throw DegreeOverflow("sb_transform_pbasis: coefficient order exceeds kernel depth");
    if (q.exactness_degree < k.depth() - 1 + f_degree)
        throw QuadratureDegreeTooLow(
            "sb_transform_pbasis: rule exactness " + std::to_string(q.exactness_degree) +
            " < kernel degree + f degree = " + std::to_string(k.depth() - 1 + f_degree));
    require_inside(k.domain, std::abs(z), k.domain.omega_radius, "sb_transform_pbasis");

    const auto& j = k.family.jacobi;
    const CLD zl(z.real(), z.imag());
    CLD acc = 0.0L;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const long double x = q.nodes[i];
        CLD f = 0.0L;
        long double p_prev = 0.0L, p_cur = 1.0L;
        for (int n = 0; n <= f_degree; ++n) {
            f += CLD(pcoeffs[n].real(), pcoeffs[n].imag()) * p_cur;
            const long double p_next =
                (x - j.alpha[n]) * p_cur - (n >= 1 ? j.omega[n] : 0.0L) * p_prev;
            p_prev = p_cur;
            p_cur = p_next;
        }
        acc += static_cast<long double>(q.weights[i]) * coherent_ld(k, x, zl) * f;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

int monomial_route_depth(const orthopoly::PolynomialFamily& fam, int hard_cap)
{
    // rows whose coefficient mass passes ~3e6 cannot round-trip to 1e-9 even
    // in extended precision
    int n = 0;
    while (n < hard_cap && n + 1 <= fam.depth()) {
        long double mass = 0.0L;
        for (const long double c : fam.coeff[n + 1])
            mass += std::abs(c);
        if (mass > 3e6L)
            break;
        ++n;
    }
    return n;
}

AnalyticSeries sb_series_pbasis(const std::vector<double>& lambda,
                                const std::vector<Complex>& pcoeffs)
{
    if (lambda.size() < pcoeffs.size())
        throw Error("sb_series_pbasis: weight sequence shorter than coefficients");
    AnalyticSeries s;
    s.coeffs = Eigen::VectorXcd::Zero(static_cast<int>(pcoeffs.size()));
    for (std::size_t n = 0; n < pcoeffs.size(); ++n)
        s.coeffs(static_cast<int>(n)) = pcoeffs[n];
    s.lambda = lambda;
    return s;
}

AnalyticSeries sb_series_monomial(const orthopoly::PolynomialFamily& fam,
                                  const std::vector<Complex>& mono)
{
    if (static_cast<int>(mono.size()) > fam.depth())
        throw DegreeOverflow("sb_series_monomial: degree exceeds weight depth");
    return sb_series_pbasis(fam.jacobi.lambda, orthopoly::monomial_to_pbasis(fam, mono));
}

TildeOps tilde_ops(const std::vector<double>& lambda, const std::vector<double>& alpha, int depth)
{
    if (depth < 1)
        throw Error("tilde_ops: depth must be >= 1");
    if (static_cast<int>(lambda.size()) < depth || static_cast<int>(alpha.size()) < depth)
        throw Error("tilde_ops: sequences shorter than depth");

    TildeOps t;
    t.annihilation = Eigen::MatrixXcd::Zero(depth, depth);
    t.creation = Eigen::MatrixXcd::Zero(depth, depth);
    t.number = Eigen::MatrixXcd::Zero(depth, depth);
    t.alpha_op = Eigen::MatrixXcd::Zero(depth, depth);
    for (int n = 0; n < depth; ++n) {
        if (n >= 1)
            t.annihilation(n - 1, n) = lambda[n] / lambda[n - 1];
        if (n + 1 < depth)
            t.creation(n + 1, n) = 1.0;
        t.number(n, n) = static_cast<double>(n);
        t.alpha_op(n, n) = alpha[n];
    }
    return t;
}

TildeOps tilde_ops(const orthopoly::JacobiData& j)
{
    return tilde_ops(j.lambda, j.alpha, j.depth());
}

Eigen::MatrixXcd tilde_field(const TildeOps& t)
{
    return fock::field_matrix(t);
}

fock::FactorizationReport verify_poisson_factorization_tilde(const TildeOps& t, double a)
{
    return fock::verify_poisson_factorization(t, a);
}

double PropositionReport::max_pointwise() const
{
    return std::max({pointwise_a, pointwise_b, pointwise_c, pointwise_d});
}

double PropositionReport::max_coeff() const
{
    return std::max({coeff_a, coeff_b, coeff_c, coeff_d});
}

namespace {

std::vector<CLD> row_as_cld(const std::vector<long double>& row)
{
    std::vector<CLD> out(row.size());
    for (std::size_t k = 0; k < row.size(); ++k)
        out[k] = CLD(row[k], 0.0L);
    return out;
}

double unit_defect(const std::vector<CLD>& got, int idx, double value, int size_hint)
{
    double d = 0.0;
    const int n = std::max<int>(static_cast<int>(got.size()), size_hint);
    for (int k = 0; k < n; ++k) {
        const CLD g = k < static_cast<int>(got.size()) ? got[k] : CLD(0.0L);
        const CLD e = k == idx ? CLD(value) : CLD(0.0L);
        d = std::max(d, static_cast<double>(std::abs(g - e)));
    }
    return d;
}

} // namespace

namespace {

// integral of (x - shift) P_n(x) E(x, z) dmu by the given rule, all in
// extended precision; the P evaluation stays on the recurrence
Complex transform_shifted_pn(const CoherentKernel& k, const measures::RealQuadrature& q, int n,
                             double shift, Complex z)
{
    const auto& j = k.family.jacobi;
    const CLD zl(z.real(), z.imag());
    CLD acc = 0.0L;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const long double x = q.nodes[i];
        long double p_prev = 0.0L, p_cur = 1.0L;
        for (int kk = 0; kk < n; ++kk) {
            const long double p_next =
                (x - j.alpha[kk]) * p_cur - (kk >= 1 ? j.omega[kk] : 0.0L) * p_prev;
            p_prev = p_cur;
            p_cur = p_next;
        }
        acc += static_cast<long double>(q.weights[i]) * (x - static_cast<long double>(shift)) *
               p_cur * coherent_ld(k, x, zl);
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::vector<Complex> unit_pc(int idx, double value = 1.0)
{
    std::vector<Complex> pc(idx + 1, 0.0);
    pc[idx] = value;
    return pc;
}

double column_defect(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want, int col)
{
    return (got.col(col) - want.col(col)).cwiseAbs().maxCoeff();
}

} // namespace

PropositionReport verify_propositions(const measures::MeasureSpec& spec, int depth)
{
    if (depth < 4)
        throw Error("verify_propositions: depth must be >= 4");

    const auto kernel = make_kernel(spec, depth, KernelMethod::Series);
    const auto& fam = kernel.family;
    const auto& j = fam.jacobi;
    const auto quad = measures::make_quadrature(spec, 2 * depth);
    const auto ladders = fock::build_ladders(fock::TruncatedFock{fam});
    const auto tilde = tilde_ops(j);
    const auto zs = sample_points(kernel.domain);

    PropositionReport rep;
    rep.max_n = depth - 2;
    rep.monomial_max_n = monomial_route_depth(fam, std::min(rep.max_n, 12));
    rep.pattern_ok = true;

    const bool is_gauss = spec.kind == measures::Kind::Gaussian;
    const double m = spec.mean;
    const double shift = is_gauss ? m : 0.0;

    for (int n = 0; n <= rep.max_n; ++n) {
        const double omega_n = n >= 1 ? j.omega[n] : 0.0;

        // pointwise quadrature route, tolerance-normalized by the expected value
        for (const Complex z : zs) {
            // (a)  S P_n = z^n
            Complex got = sb_transform_pbasis(kernel, quad, unit_pc(n), z);
            Complex want = ipow(z, n);
            rep.pointwise_a =
                std::max(rep.pointwise_a, std::abs(got - want) / std::max(1.0, std::abs(want)));

            // (b)  S(U A U* P_n) = omega_n z^{n-1}
            if (n >= 1) {
                got = sb_transform_pbasis(kernel, quad, unit_pc(n - 1, omega_n), z);
                want = omega_n * ipow(z, n - 1);
                rep.pointwise_b =
                    std::max(rep.pointwise_b, std::abs(got - want) / std::max(1.0, std::abs(want)));
            }

            // (c)  S(U A* U* P_n) = z^{n+1}
            got = sb_transform_pbasis(kernel, quad, unit_pc(n + 1), z);
            want = ipow(z, n + 1);
            rep.pointwise_c =
                std::max(rep.pointwise_c, std::abs(got - want) / std::max(1.0, std::abs(want)));

            // (d)  Gaussian: S((x-m) P_n) = z^{n+1} + var*n z^{n-1}
            //      otherwise: S(x P_n) = z^{n+1} + alpha_n z^n + omega_n z^{n-1}
            got = transform_shifted_pn(kernel, quad, n, shift, z);
            want = ipow(z, n + 1) + omega_n * ipow(z, std::max(0, n - 1));
            if (!is_gauss)
                want += j.alpha[n] * ipow(z, n);
            rep.pointwise_d =
                std::max(rep.pointwise_d, std::abs(got - want) / std::max(1.0, std::abs(want)));
        }

        // coefficient route: sequence-space ladder columns pass through the
        // series map unchanged, so they must match the series-side operators
        // (built from the weight ratios) and the closed-form patterns
        {
            const double cw = is_gauss ? spec.variance * n
                                       : (spec.kind == measures::Kind::Poisson ? spec.a * n
                                                                               : omega_n);
            const double ca = is_gauss ? m
                                       : (spec.kind == measures::Kind::Poisson ? n + spec.a
                                                                               : j.alpha[n]);

            // (a) is the identity on coefficients by construction; assert the
            // series map really is coefficient-preserving
            const auto sa = sb_series_pbasis(j.lambda, unit_pc(n));
            rep.coeff_a = std::max(rep.coeff_a, std::abs(sa.coeffs(n) - Complex(1.0)));

            double d = column_defect(ladders.annihilation, tilde.annihilation, n);
            if (n >= 1)
                d = std::max(d, std::abs(ladders.annihilation(n - 1, n) - Complex(cw)));
            rep.coeff_b = std::max(rep.coeff_b, d);

            d = column_defect(ladders.creation, tilde.creation, n);
            d = std::max(d, std::abs(ladders.creation(n + 1, n) - Complex(1.0)));
            rep.coeff_c = std::max(rep.coeff_c, d);

            const Eigen::MatrixXcd field_fock = fock::field_matrix(ladders);
            const Eigen::MatrixXcd field_tilde = tilde_field(tilde);
            d = column_defect(field_fock, field_tilde, n);
            // closed pattern on column n, with the mean removed for the
            // centered Gaussian identity
            Eigen::VectorXcd want_col = Eigen::VectorXcd::Zero(depth);
            want_col(n + 1) = 1.0;
            if (n >= 1)
                want_col(n - 1) = cw;
            if (!is_gauss)
                want_col(n) = ca;
            const Eigen::VectorXcd got_col =
                field_fock.col(n) - (is_gauss ? m : 0.0) * Eigen::VectorXcd::Unit(depth, n);
            const double dpat = (got_col - want_col).cwiseAbs().maxCoeff();
            rep.coeff_d = std::max(rep.coeff_d, std::max(d, dpat));
            if (dpat > 1e-12 * std::max({1.0, std::abs(cw), std::abs(ca)}))
                rep.pattern_ok = false;
        }

        // monomial round-trip, conditioning-capped
        if (n <= rep.monomial_max_n) {
            const auto mono_n = row_as_cld(fam.coeff[n]);
            rep.monomial_roundtrip =
                std::max(rep.monomial_roundtrip,
                         unit_defect(orthopoly::monomial_to_pbasis_ld(fam, mono_n), n, 1.0, n + 1));

            std::vector<CLD> mono_d(mono_n.size() + 1, 0.0L);
            for (std::size_t k = 0; k < mono_n.size(); ++k) {
                mono_d[k + 1] += mono_n[k];
                if (is_gauss)
                    mono_d[k] -= static_cast<long double>(m) * mono_n[k];
            }
            const auto pc_d = orthopoly::monomial_to_pbasis_ld(fam, mono_d);
            std::vector<double> want_d(n + 2, 0.0);
            want_d[n + 1] = 1.0;
            if (n >= 1)
                want_d[n - 1] = is_gauss ? spec.variance * n : j.omega[n];
            if (!is_gauss)
                want_d[n] = j.alpha[n];
            double dd = 0.0;
            for (std::size_t k = 0; k < pc_d.size(); ++k) {
                const double e = k < want_d.size() ? want_d[k] : 0.0;
                dd = std::max(dd, static_cast<double>(std::abs(pc_d[k] - CLD(e))));
            }
            rep.monomial_roundtrip = std::max(rep.monomial_roundtrip, dd);
        }
    }
    return rep;
}

IntertwiningReport verify_intertwining(const measures::MeasureSpec& spec, int depth)
{
    if (depth < 3)
        throw Error("verify_intertwining: depth must be >= 3");

    const auto fam = orthopoly::make_family(spec, depth);
    const auto& j = fam.jacobi;
    const auto quad = measures::make_quadrature(spec, 2 * depth);
    const auto field = tilde_field(tilde_ops(j));

    IntertwiningReport rep;
    rep.max_n = depth - 2;
    rep.monomial_max_n = monomial_route_depth(fam, std::min(rep.max_n, 12));

    for (int n = 0; n <= rep.max_n; ++n) {
        // P-basis expansion of x P_n by quadrature projection, including two
        // rows past the band to confirm the zero pattern; products stay in
        // extended precision, the P values can reach 1e8 on wide rules
        const int kmax = std::min(n + 3, depth - 1);
        for (int k = 0; k <= kmax; ++k) {
            long double acc = 0.0L;
            for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
                const long double x = quad.nodes[i];
                long double pn_prev = 0.0L, pn = 1.0L, pk_prev = 0.0L, pk = 1.0L;
                for (int t = 0; t < std::max(n, k); ++t) {
                    if (t < n) {
                        const long double next =
                            (x - j.alpha[t]) * pn - (t >= 1 ? j.omega[t] : 0.0L) * pn_prev;
                        pn_prev = pn;
                        pn = next;
                    }
                    if (t < k) {
                        const long double next =
                            (x - j.alpha[t]) * pk - (t >= 1 ? j.omega[t] : 0.0L) * pk_prev;
                        pk_prev = pk;
                        pk = next;
                    }
                }
                acc += static_cast<long double>(quad.weights[i]) * x * pn * pk;
            }
            const double c = static_cast<double>(acc / j.lambda[k]);
            rep.max_coeff_defect_projection =
                std::max(rep.max_coeff_defect_projection, std::abs(c - field(k, n).real()));
        }

        if (n <= rep.monomial_max_n) {
            std::vector<CLD> mono(fam.coeff[n].size() + 1, 0.0L);
            for (std::size_t k = 0; k < fam.coeff[n].size(); ++k)
                mono[k + 1] = CLD(fam.coeff[n][k], 0.0L);
            const auto pc = orthopoly::monomial_to_pbasis_ld(fam, mono);
            double d = 0.0;
            for (std::size_t k = 0; k < pc.size(); ++k)
                d = std::max(d, static_cast<double>(std::abs(
                                    pc[k] - CLD(field(static_cast<int>(k), n).real(),
                                                field(static_cast<int>(k), n).imag()))));
            rep.max_coeff_defect_monomial = std::max(rep.max_coeff_defect_monomial, d);
        }
    }
    return rep;
}

double verify_coherent_norm(const CoherentKernel& k, const std::vector<Complex>& zs)
{
    const auto quad = measures::make_quadrature(k.spec, 2 * k.depth());
    double defect = 0.0;
    for (const Complex z : zs) {
        const double lhs_sq =
            measures::integrate(quad, [&](double x) { return coherent(k, x, z) * coherent(k, x, std::conj(z)); })
                .real();
        const double rhs = std::sqrt(G_lambda(k.family.jacobi.lambda, Complex(std::norm(z), 0.0)).real());
        defect = std::max(defect, std::abs(std::sqrt(lhs_sq) - rhs) / std::max(1.0, rhs));
    }
    return defect;
}

double verify_reproducing_kernel(const CoherentKernel& k,
                                 const std::vector<std::pair<Complex, Complex>>& zw)
{
    const auto quad = measures::make_quadrature(k.spec, 2 * k.depth());
    double defect = 0.0;
    for (const auto& [z, w] : zw) {
        const Complex lhs =
            measures::integrate(quad, [&](double x) { return coherent(k, x, z) * coherent(k, x, w); });
        const Complex rhs = G_lambda(k.family.jacobi.lambda, z * w);
        defect = std::max(defect, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return defect;
}

} // namespace ifock::bargmann
