#include "ifock/cmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ifock/rng.hpp"

namespace ifock::cmeasure {

double RadialMeasure::radial_density(double r) const
{
    return (2.0 / scale) * r * std::exp(-r * r / scale);
}

RadialMeasure representing_measure(const measures::MeasureSpec& spec)
{
    switch (spec.kind) {
    case measures::Kind::Gaussian:
        return RadialMeasure{spec.variance};
    case measures::Kind::Poisson:
        return RadialMeasure{spec.a};
    case measures::Kind::RawMoments:
        throw Unsupported("representing_measure: no construction for raw moment input");
    }
    throw Error("representing_measure: unreachable");
}

measures::RealQuadrature radial_u_quadrature(const RadialMeasure& mu, int degree)
{
    if (degree < 0)
        throw Error("radial_u_quadrature: degree must be >= 0");
    if (degree > 120)
        throw QuadratureDegreeTooLow("radial_u_quadrature: degree beyond supported range");

    // monic Laguerre recurrence for weight e^{-t} on [0, inf):
    // alpha_k = 2k+1, omega_k = k^2; then substitute u = scale * t
    const int n = std::max(1, (degree + 2) / 2);
    std::vector<double> diag(n), off(std::max(0, n - 1));
    for (int k = 0; k < n; ++k)
        diag[k] = 2.0 * k + 1.0;
    for (int k = 1; k < n; ++k)
        off[k - 1] = static_cast<double>(k) * k;
    auto q = measures::gauss_rule_from_recurrence(diag, off, 1.0);
    for (auto& x : q.nodes)
        x *= mu.scale;
    return q;
}

double radial_moment(const RadialMeasure& mu, int n)
{
    if (n < 0)
        throw Error("radial_moment: order must be >= 0");
    double analytic = 1.0;
    for (int k = 1; k <= n; ++k)
        analytic *= mu.scale * k; // scale^n n!

    const auto q = radial_u_quadrature(mu, n);
    const double checked = measures::integrate_real(q, [&](double u) { return std::pow(u, n); });
    if (std::abs(checked - analytic) > 1e-9 * std::abs(analytic))
        throw QuadratureFailure("radial_moment: quadrature cross-check disagrees at order " +
                                std::to_string(n));
    return analytic;
}

MixedMoments mixed_moments(const RadialMeasure& mu, int max_degree)
{
    if (max_degree < 0)
        throw Error("mixed_moments: max_degree must be >= 0");
    MixedMoments mm;
    mm.max_degree = max_degree;
    mm.gamma = Eigen::MatrixXcd::Zero(max_degree + 1, max_degree + 1);
    for (int n = 0; n <= max_degree; ++n)
        mm.gamma(n, n) = radial_moment(mu, n); // off-diagonals vanish structurally
    return mm;
}

double offdiag_spot_check(const RadialMeasure& mu, int max_degree, std::uint64_t seed,
                          int samples)
{
    if (max_degree < 1)
        return 0.0;
    const int m = max_degree;
    Rng rng(seed);

    // accumulate sums of r^{p+q} e^{i(q-p)theta} for p, q <= m
    std::vector<std::complex<double>> acc((m + 1) * (m + 1), 0.0);
    std::vector<double> rpow(2 * m + 1);
    std::vector<std::complex<double>> phase(2 * m + 1);
    for (int it = 0; it < samples; ++it) {
        const double u = rng.uniform01();
        const double r = std::sqrt(-mu.scale * std::log1p(-u));
        const double th = 2.0 * std::numbers::pi * rng.uniform01();
        rpow[0] = 1.0;
        for (int k = 1; k <= 2 * m; ++k)
            rpow[k] = rpow[k - 1] * r;
        const std::complex<double> e(std::cos(th), std::sin(th));
        phase[0] = 1.0;
        for (int k = 1; k <= 2 * m; ++k)
            phase[k] = phase[k - 1] * e;
        for (int p = 0; p <= m; ++p)
            for (int q = p + 1; q <= m; ++q)
                acc[p * (m + 1) + q] += rpow[p + q] * phase[q - p];
    }

    double worst = 0.0;
    for (int p = 0; p <= m; ++p) {
        for (int q = p + 1; q <= m; ++q) {
            const std::complex<double> g = acc[p * (m + 1) + q] / static_cast<double>(samples);
            double rms_sq = 1.0; // E |z̄^p z^q|^2 = scale^{p+q} (p+q)!
            for (int k = 1; k <= p + q; ++k)
                rms_sq *= mu.scale * k;
            worst = std::max(worst, std::abs(g) / std::sqrt(rms_sq));
        }
    }
    return worst;
}

UniquenessReport check_uniqueness_criterion(const std::function<double(int)>& log_gamma_diag,
                                            int n_max)
{
    if (n_max < 2)
        throw Error("check_uniqueness_criterion: n_max must be >= 2");
    UniquenessReport rep;
    rep.ratio.resize(n_max);
    for (int n = 1; n <= n_max; ++n)
        rep.ratio[n - 1] = std::exp(log_gamma_diag(n) / n) / (static_cast<double>(n) * n);
    rep.limit_estimate = rep.ratio.back();

    rep.monotone_from_5 = n_max > 5;
    for (int n = 5; n < n_max; ++n)
        if (!(rep.ratio[n] < rep.ratio[n - 1]))
            rep.monotone_from_5 = false;

    const int ref = std::max(5, n_max / 8);
    rep.satisfied = rep.monotone_from_5 && ref < n_max &&
                    rep.limit_estimate <= 0.15 * rep.ratio[ref - 1];
    return rep;
}

UniquenessReport check_uniqueness_criterion_scale(double scale, int n_max)
{
    if (!(scale > 0.0))
        throw Error("check_uniqueness_criterion_scale: scale must be > 0");
    return check_uniqueness_criterion(
        [scale](int n) { return n * std::log(scale) + std::lgamma(n + 1.0); }, n_max);
}

CarlemanReport check_carleman(const std::function<double(int)>& log_lambda, int n_max)
{
    if (n_max < 4)
        throw Error("check_carleman: n_max must be >= 4");
    std::vector<double> sums(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n)
        sums[n] = sums[n - 1] + std::exp(-log_lambda(n) / (2.0 * n));

    CarlemanReport rep;
    rep.partial_sum = sums[n_max];

    // least squares of S_k against sqrt(k) over log-spaced depths
    const int lo = std::max(2, n_max / 100);
    std::vector<double> xs, ys;
    const int points = 32;
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        const int k = std::clamp(static_cast<int>(std::lround(lo * std::pow(double(n_max) / lo, t))),
                                 lo, n_max);
        xs.push_back(std::sqrt(static_cast<double>(k)));
        ys.push_back(sums[k]);
    }
    const int np = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < np; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double vx = sxx - sx * sx / np;
    const double vy = syy - sy * sy / np;
    const double cxy = sxy - sx * sy / np;
    rep.sqrt_fit_slope = vx > 0 ? cxy / vx : 0.0;
    rep.sqrt_fit_r2 = (vx > 0 && vy > 0) ? (cxy * cxy) / (vx * vy) : 1.0;

    // still accumulating mass at depth and not flattening out
    const double growth = (sums[n_max] - sums[n_max / 2]) / std::max(sums[n_max], 1e-300);
    rep.diverging = growth > 0.01 && rep.sqrt_fit_slope > 0.0;
    return rep;
}

double analytic_l2_sq(const RadialMeasure& mu, const bargmann::AnalyticSeries& f)
{
    const int deg = f.degree();
    if (deg > 60)
        throw QuadratureDegreeTooLow("analytic_l2_sq: series degree beyond supported range");
    const auto q = radial_u_quadrature(mu, deg);

    std::vector<double> a2(deg + 1);
    for (int n = 0; n <= deg; ++n)
        a2[n] = std::norm(f.coeffs(n));
    return measures::integrate_real(q, [&](double u) {
        long double acc = 0.0L;
        for (int n = deg; n >= 0; --n)
            acc = acc * u + a2[n];
        return static_cast<double>(acc);
    });
}

NormIdentityReport verify_norm_identity(const RadialMeasure& mu,
                                        const std::vector<bargmann::AnalyticSeries>& fs)
{
    NormIdentityReport rep;
    for (const auto& f : fs) {
        const double lhs = analytic_l2_sq(mu, f);
        const double rhs = f.norm_sq();
        const double d = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
        rep.rel_defect.push_back(d);
        rep.max_rel_defect = std::max(rep.max_rel_defect, d);
    }
    return rep;
}

IsometryReport verify_end_to_end_isometry(const measures::MeasureSpec& spec, int degree,
                                          int count, std::uint64_t seed)
{
    if (degree < 1 || count < 1)
        throw Error("verify_end_to_end_isometry: degree and count must be >= 1");

    const RadialMeasure mu = representing_measure(spec);
    const auto fam = orthopoly::make_family(spec, degree + 2);
    const auto quad = measures::make_quadrature(spec, 2 * degree);

    Rng rng(seed);
    IsometryReport rep;
    rep.count = count;
    for (int it = 0; it < count; ++it) {
        std::vector<std::complex<double>> mono(degree + 1);
        for (auto& c : mono)
            c = rng.uniform(-1.0, 1.0);

        const double f_sq = measures::integrate_real(quad, [&](double x) {
            long double acc = 0.0L;
            for (int k = degree; k >= 0; --k)
                acc = acc * x + mono[k].real();
            return static_cast<double>(acc * acc);
        });

        const auto series = bargmann::sb_series_monomial(fam, mono);
        const double s_sq = analytic_l2_sq(mu, series);

        rep.max_rel_defect =
            std::max(rep.max_rel_defect, std::abs(f_sq - s_sq) / std::max(f_sq, 1e-300));
    }
    return rep;
}

} // namespace ifock::cmeasure
