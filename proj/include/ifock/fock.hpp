#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "ifock/orthopoly.hpp"

namespace ifock::fock {

// Finite slice of the weighted sequence space attached to a recurrence: basis
// vectors Phi_0..Phi_{D-1} with <Phi_n, Phi_m> = delta_{nm} lambda_n, where
// D is the recurrence depth.
struct TruncatedFock {
    orthopoly::PolynomialFamily family;

    int dim() const { return family.depth(); }
    const orthopoly::JacobiData& jacobi() const { return family.jacobi; }
};

TruncatedFock truncate(const measures::MeasureSpec& spec, int dim);
TruncatedFock truncate(const orthopoly::JacobiData& j);

// Coefficients (a_0, ..., a_{D-1}) against Phi_n.
using FockVector = Eigen::VectorXcd;

double lambda_norm(const TruncatedFock& f, const FockVector& v);
std::complex<double> lambda_inner(const TruncatedFock& f, const FockVector& u,
                                  const FockVector& v);

// Matrix truncations of the ladder operators:
//   A Phi_0 = 0,  A Phi_n = omega_n Phi_{n-1},
//   A* Phi_n = Phi_{n+1} (n < D-1),  A* Phi_{D-1} = 0,
//   N Phi_n = n Phi_n,  alpha_op Phi_n = alpha_n Phi_n.
// A* Phi_{D-1} = 0 is the orthogonal projection of the full operator; it
// keeps A and A* adjoint in the lambda inner product on indices < D-1.
struct LadderMatrices {
    Eigen::MatrixXcd annihilation;
    Eigen::MatrixXcd creation;
    Eigen::MatrixXcd number;
    Eigen::MatrixXcd alpha_op;

    int dim() const { return static_cast<int>(number.rows()); }
};

LadderMatrices build_ladders(const TruncatedFock& f);

// A + A* + alpha_op: the image of multiplication by x under the basis
// isomorphism, tridiagonal with super-diagonal omega_n and sub-diagonal 1.
Eigen::MatrixXcd field_matrix(const LadderMatrices& l);

// Basis isomorphism Phi_n -> P_n extended linearly: returns the monomial
// coefficients of sum a_n P_n. The inverse expands by the monic leading
// terms; DegreeOverflow when the polynomial degree reaches the truncation.
std::vector<std::complex<double>> u_isomorphism(const TruncatedFock& f, const FockVector& v);
FockVector u_inverse(const TruncatedFock& f, const std::vector<std::complex<double>>& monomial);

// Checks, for ladder matrices built from a Poisson measure with rate a,
//   (i)  alpha_op = (1/a) A*A + a = N + a,
//   (ii) A + A* + alpha_op = ((1/sqrt a) A* + sqrt a)((1/sqrt a) A + sqrt a),
// as max entrywise defects on the leading interior block (indices <= D-3)
// and, reported separately, over the full truncated matrices.
struct FactorizationReport {
    double interior_alpha_vs_ladder = 0.0;
    double interior_alpha_vs_number = 0.0;
    double interior_product = 0.0;
    double full_alpha_vs_ladder = 0.0;
    double full_alpha_vs_number = 0.0;
    double full_product = 0.0;
    int interior_dim = 0;

    double max_interior_defect() const;
    bool pass(double tol = 1e-12) const { return max_interior_defect() <= tol; }
};

FactorizationReport verify_poisson_factorization(const LadderMatrices& l, double a);

} // namespace ifock::fock
