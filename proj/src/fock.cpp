#include "ifock/fock.hpp"

#include <cmath>

namespace ifock::fock {

TruncatedFock truncate(const measures::MeasureSpec& spec, int dim)
{
    return TruncatedFock{orthopoly::make_family(spec, dim)};
}

TruncatedFock truncate(const orthopoly::JacobiData& j)
{
    return TruncatedFock{orthopoly::make_family(j)};
}

double lambda_norm(const TruncatedFock& f, const FockVector& v)
{
    return std::sqrt(lambda_inner(f, v, v).real());
}

std::complex<double> lambda_inner(const TruncatedFock& f, const FockVector& u,
                                  const FockVector& v)
{
    if (u.size() != f.dim() || v.size() != f.dim())
        throw Error("lambda_inner: vector size does not match truncation");
    std::complex<double> s = 0.0;
    for (int n = 0; n < f.dim(); ++n)
        s += f.jacobi().lambda[n] * std::conj(u(n)) * v(n);
    return s;
}

LadderMatrices build_ladders(const TruncatedFock& f)
{
    const int d = f.dim();
    const auto& j = f.jacobi();

    LadderMatrices l;
    l.annihilation = Eigen::MatrixXcd::Zero(d, d);
    l.creation = Eigen::MatrixXcd::Zero(d, d);
    l.number = Eigen::MatrixXcd::Zero(d, d);
    l.alpha_op = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        if (n >= 1)
            l.annihilation(n - 1, n) = j.omega[n];
        if (n + 1 < d)
            l.creation(n + 1, n) = 1.0;
        l.number(n, n) = static_cast<double>(n);
        l.alpha_op(n, n) = j.alpha[n];
    }
    return l;
}

Eigen::MatrixXcd field_matrix(const LadderMatrices& l)
{
    return l.annihilation + l.creation + l.alpha_op;
}

std::vector<std::complex<double>> u_isomorphism(const TruncatedFock& f, const FockVector& v)
{
    if (v.size() != f.dim())
        throw Error("u_isomorphism: vector size does not match truncation");
    std::vector<std::complex<double>> pc(v.data(), v.data() + v.size());
    return orthopoly::pbasis_to_monomial(f.family, pc);
}

FockVector u_inverse(const TruncatedFock& f, const std::vector<std::complex<double>>& monomial)
{
    if (static_cast<int>(monomial.size()) > f.dim())
        throw DegreeOverflow("u_inverse: polynomial degree exceeds truncation");
    const auto pc = orthopoly::monomial_to_pbasis(f.family, monomial);
    FockVector v = FockVector::Zero(f.dim());
    for (std::size_t n = 0; n < pc.size(); ++n)
        v(static_cast<int>(n)) = pc[n];
    return v;
}

namespace {

double block_defect(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y, int k)
{
    if (k <= 0)
        return 0.0;
    return (x.topLeftCorner(k, k) - y.topLeftCorner(k, k)).cwiseAbs().maxCoeff();
}

} // namespace

double FactorizationReport::max_interior_defect() const
{
    return std::max({interior_alpha_vs_ladder, interior_alpha_vs_number, interior_product});
}

FactorizationReport verify_poisson_factorization(const LadderMatrices& l, double a)
{
    if (!(a > 0.0))
        throw InvalidMeasure("verify_poisson_factorization: rate must be > 0");
    const int d = l.dim();
    const double ra = std::sqrt(a);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

    const Eigen::MatrixXcd ladder = (1.0 / a) * l.creation * l.annihilation + a * id;
    const Eigen::MatrixXcd shifted = l.number + a * id;
    const Eigen::MatrixXcd product =
        ((1.0 / ra) * l.creation + ra * id) * ((1.0 / ra) * l.annihilation + ra * id);
    const Eigen::MatrixXcd field = field_matrix(l);

    FactorizationReport r;
    r.interior_dim = std::max(0, d - 2);
    r.interior_alpha_vs_ladder = block_defect(l.alpha_op, ladder, r.interior_dim);
    r.interior_alpha_vs_number = block_defect(l.alpha_op, shifted, r.interior_dim);
    r.interior_product = block_defect(field, product, r.interior_dim);
    r.full_alpha_vs_ladder = block_defect(l.alpha_op, ladder, d);
    r.full_alpha_vs_number = block_defect(l.alpha_op, shifted, d);
    r.full_product = block_defect(field, product, d);
    return r;
}

} // namespace ifock::fock
