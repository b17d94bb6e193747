#include "ifock/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "ifock/orthopoly.hpp"

namespace ifock::measures {

MeasureSpec gaussian(double mean, double variance)
{
    if (!std::isfinite(mean) || !std::isfinite(variance))
        throw InvalidMeasure("gaussian: parameters must be finite");
    if (variance <= 0.0)
        throw InvalidMeasure("gaussian: variance must be > 0");
    MeasureSpec s;
    s.kind = Kind::Gaussian;
    s.mean = mean;
    s.variance = variance;
    return s;
}

MeasureSpec poisson(double a)
{
    if (!std::isfinite(a) || a <= 0.0)
        throw InvalidMeasure("poisson: rate must be finite and > 0");
    MeasureSpec s;
    s.kind = Kind::Poisson;
    s.a = a;
    return s;
}

MeasureSpec raw_moments(std::vector<double> moments)
{
    if (moments.empty())
        throw InvalidMeasure("raw_moments: need at least m0");
    for (double m : moments)
        if (!std::isfinite(m))
            throw InvalidMeasure("raw_moments: moments must be finite");
    if (moments[0] != 1.0)
        throw InvalidMeasure("raw_moments: m0 must be 1 (probability measure)");
    MeasureSpec s;
    s.kind = Kind::RawMoments;
    s.raw = std::move(moments);
    return s;
}

namespace {

double parse_float(std::string_view text, std::string_view what)
{
    std::string buf(text);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        throw ParseError("bad float for " + std::string(what) + ": '" + buf + "'");
    return v;
}

} // namespace

MeasureSpec parse_measure_spec(std::string_view text)
{
    try {
        if (text.rfind("gaussian:", 0) == 0) {
            std::string_view body = text.substr(9);
            const auto comma = body.find(',');
            if (comma == std::string_view::npos)
                throw ParseError("gaussian spec needs m=<float>,var=<float>");
            std::string_view p1 = body.substr(0, comma);
            std::string_view p2 = body.substr(comma + 1);
            if (p1.rfind("m=", 0) != 0 || p2.rfind("var=", 0) != 0)
                throw ParseError("gaussian spec needs m=<float>,var=<float>");
            return gaussian(parse_float(p1.substr(2), "m"), parse_float(p2.substr(4), "var"));
        }
        if (text.rfind("poisson:", 0) == 0) {
            std::string_view body = text.substr(8);
            if (body.rfind("a=", 0) != 0)
                throw ParseError("poisson spec needs a=<float>");
            return poisson(parse_float(body.substr(2), "a"));
        }
        if (text.rfind("raw:", 0) == 0) {
            std::string_view body = text.substr(4);
            if (body.size() < 2 || body.front() != '[' || body.back() != ']')
                throw ParseError("raw spec needs a JSON array of floats");
            std::string inner(body.substr(1, body.size() - 2));
            std::vector<double> m;
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto b = item.find_first_not_of(" \t");
                const auto e = item.find_last_not_of(" \t");
                if (b == std::string::npos)
                    throw ParseError("raw spec: empty entry");
                m.push_back(parse_float(std::string_view(item).substr(b, e - b + 1), "moment"));
            }
            if (m.empty())
                throw ParseError("raw spec: empty array");
            return raw_moments(std::move(m));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidMeasure&) {
        throw;
    }
    throw ParseError("unknown measure spec '" + std::string(text) +
                     "' (expected gaussian:..., poisson:... or raw:[...])");
}

std::string format_measure_spec(const MeasureSpec& spec)
{
    std::ostringstream os;
    os.precision(17);
    switch (spec.kind) {
    case Kind::Gaussian:
        os << "gaussian:m=" << spec.mean << ",var=" << spec.variance;
        break;
    case Kind::Poisson:
        os << "poisson:a=" << spec.a;
        break;
    case Kind::RawMoments:
        os << "raw:[";
        for (std::size_t i = 0; i < spec.raw.size(); ++i)
            os << (i ? "," : "") << spec.raw[i];
        os << "]";
        break;
    }
    return os.str();
}

std::vector<double> moments(const MeasureSpec& spec, int count)
{
    if (count < 0)
        throw Error("moments: count must be >= 0");
    std::vector<double> m;
    m.reserve(count);
    switch (spec.kind) {
    case Kind::Gaussian: {
        for (int k = 0; k < count; ++k) {
            if (k == 0)
                m.push_back(1.0);
            else if (k == 1)
                m.push_back(spec.mean);
            else
                m.push_back(spec.mean * m[k - 1] + (k - 1) * spec.variance * m[k - 2]);
        }
        break;
    }
    case Kind::Poisson: {
        // Touchard: m_{k+1} = a * sum_j C(k,j) m_j
        std::vector<double> binom{1.0};
        for (int k = 0; k < count; ++k) {
            if (k == 0) {
                m.push_back(1.0);
                continue;
            }
            double s = 0.0;
            for (int j = 0; j < k; ++j)
                s += binom[j] * m[j];
            m.push_back(spec.a * s);
            // extend Pascal row k-1 -> k
            std::vector<double> next(k + 1, 1.0);
            for (int j = 1; j < k; ++j)
                next[j] = binom[j - 1] + binom[j];
            binom = std::move(next);
        }
        break;
    }
    case Kind::RawMoments: {
        if (count > static_cast<int>(spec.raw.size()))
            throw UnsupportedOrder("moments: raw sequence has only " +
                                   std::to_string(spec.raw.size()) + " entries");
        m.assign(spec.raw.begin(), spec.raw.begin() + count);
        break;
    }
    }
    return m;
}

double moment(const MeasureSpec& spec, int k)
{
    if (k < 0)
        throw Error("moment: order must be >= 0");
    return moments(spec, k + 1).back();
}

std::vector<exact::Rational> moments_exact(const MeasureSpec& spec, int count)
{
    using exact::Rational;
    std::vector<Rational> m;
    m.reserve(count);
    switch (spec.kind) {
    case Kind::Gaussian: {
        const Rational mean = exact::rational_from_double(spec.mean);
        const Rational var = exact::rational_from_double(spec.variance);
        for (int k = 0; k < count; ++k) {
            if (k == 0)
                m.emplace_back(1);
            else if (k == 1)
                m.push_back(mean);
            else
                m.push_back(mean * m[k - 1] + Rational(k - 1) * var * m[k - 2]);
        }
        break;
    }
    case Kind::Poisson: {
        const Rational a = exact::rational_from_double(spec.a);
        std::vector<exact::Int> binom{1};
        for (int k = 0; k < count; ++k) {
            if (k == 0) {
                m.emplace_back(1);
                continue;
            }
            Rational s(0);
            for (int j = 0; j < k; ++j)
                s += Rational(binom[j]) * m[j];
            m.push_back(a * s);
            std::vector<exact::Int> next(k + 1, 1);
            for (int j = 1; j < k; ++j)
                next[j] = binom[j - 1] + binom[j];
            binom = std::move(next);
        }
        break;
    }
    case Kind::RawMoments: {
        if (count > static_cast<int>(spec.raw.size()))
            throw UnsupportedOrder("moments_exact: raw sequence too short");
        for (int k = 0; k < count; ++k)
            m.push_back(exact::rational_from_double(spec.raw[k]));
        break;
    }
    }
    return m;
}

RealQuadrature gauss_rule_from_recurrence(const std::vector<double>& diag,
                                          const std::vector<double>& offdiag,
                                          double total_mass)
{
    const int n = static_cast<int>(diag.size());
    if (n < 1)
        throw Error("gauss_rule_from_recurrence: need at least one node");
    if (static_cast<int>(offdiag.size()) < n - 1)
        throw Error("gauss_rule_from_recurrence: offdiag too short");

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        J(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) {
        if (offdiag[i] <= 0.0)
            throw PositivityViolation("gauss_rule_from_recurrence: omega must be > 0");
        const double b = std::sqrt(offdiag[i]);
        J(i, i + 1) = b;
        J(i + 1, i) = b;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw QuadratureFailure("gauss_rule_from_recurrence: eigensolver failed");

    // p_n, p_{n-1} and p_n' at x by the monic recurrence
    const auto eval = [&](long double x) {
        long double p_prev = 0.0L, p = 1.0L;
        long double d_prev = 0.0L, d = 0.0L;
        for (int k = 0; k < n; ++k) {
            const long double w = k >= 1 ? static_cast<long double>(offdiag[k - 1]) : 0.0L;
            const long double p_next = (x - diag[k]) * p - w * p_prev;
            const long double d_next = p + (x - diag[k]) * d - w * d_prev;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        struct R {
            long double p_n, p_nm1, dp_n;
        };
        return R{p, p_prev, d};
    };

    long double lam_nm1 = 1.0L; // <p_{n-1}, p_{n-1}> up to the total mass
    for (int k = 0; k + 1 < n; ++k)
        lam_nm1 *= offdiag[k];

    // polish the eigenvalue nodes and take weights from the recurrence;
    // double-precision eigen nodes alone cost ~1e-12 on high-degree moments
    RealQuadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        long double x = es.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            const auto r = eval(x);
            if (r.dp_n == 0.0L)
                break;
            x -= r.p_n / r.dp_n;
        }
        const auto r = eval(x);
        q.nodes[i] = static_cast<double>(x);
        q.weights[i] = static_cast<double>(total_mass * lam_nm1 / (r.dp_n * r.p_nm1));
        if (!(q.weights[i] > 0.0))
            throw QuadratureFailure("gauss_rule_from_recurrence: nonpositive weight");
    }
    q.exactness_degree = 2 * n - 1;
    return q;
}

RealQuadrature make_quadrature(const MeasureSpec& spec, int degree)
{
    if (degree < 0)
        throw Error("make_quadrature: degree must be >= 0");

    switch (spec.kind) {
    case Kind::Gaussian: {
        const int n = std::max(1, (degree + 2) / 2); // ceil((degree+1)/2)
        std::vector<double> diag(n, spec.mean), off(std::max(0, n - 1));
        for (int k = 1; k < n; ++k)
            off[k - 1] = spec.variance * k;
        return gauss_rule_from_recurrence(diag, off, 1.0);
    }
    case Kind::Poisson: {
        RealQuadrature q;
        const double a = spec.a;
        const double md = std::max(1.0, moment(spec, degree));
        long double w = std::exp(static_cast<long double>(-a));
        long double remaining = 1.0L; // mass not yet on the lattice
        const int cap = 100000;
        for (int k = 0;; ++k) {
            if (k > cap)
                throw QuadratureFailure("make_quadrature: poisson lattice did not truncate");
            q.nodes.push_back(static_cast<double>(k));
            q.weights.push_back(static_cast<double>(w));
            remaining -= w;
            const long double wnext = w * a / (k + 1);
            // beyond max(2a, 2*degree) the terms w_k k^degree at least halve
            // each step, so twice the next term bounds the dropped tail. The
            // degree tail is cut far below the 1e-16 mass threshold because
            // integrands assembled from large monomial coefficients cancel.
            const bool geometric = k + 1 > 2.0 * a && k + 1 > 2.0 * degree;
            const long double tail_md = 2.0L * wnext * std::pow(static_cast<long double>(k + 1), degree);
            if (geometric && remaining < 1e-16L && tail_md < 1e-28L * md)
                break;
            w = wnext;
        }
        q.exactness_degree = degree;
        return q;
    }
    case Kind::RawMoments: {
        const int n = std::max(1, (degree + 2) / 2);
        const auto jac = orthopoly::jacobi_from_measure(spec, n);
        std::vector<double> off;
        for (int k = 1; k < n; ++k)
            off.push_back(jac.omega[k]);
        return gauss_rule_from_recurrence(jac.alpha, off, 1.0);
    }
    }
    throw Error("make_quadrature: unreachable");
}

std::complex<double> integrate(const RealQuadrature& q,
                               const std::function<std::complex<double>(double)>& f)
{
    // extended-precision accumulation: sums over orthogonal polynomial
    // products cancel across many orders of magnitude
    std::complex<long double> s = 0.0L;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const std::complex<double> v = f(q.nodes[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteValue("integrate: integrand not finite at node " +
                                 std::to_string(q.nodes[i]));
        s += static_cast<long double>(q.weights[i]) * std::complex<long double>(v.real(), v.imag());
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

double integrate_real(const RealQuadrature& q, const std::function<double(double)>& f)
{
    long double s = 0.0L;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double v = f(q.nodes[i]);
        if (!std::isfinite(v))
            throw NonFiniteValue("integrate_real: integrand not finite at node " +
                                 std::to_string(q.nodes[i]));
        s += static_cast<long double>(q.weights[i]) * v;
    }
    return static_cast<double>(s);
}

} // namespace ifock::measures
