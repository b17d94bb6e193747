#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ifock/errors.hpp"

namespace ifock::exact {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Every finite double is a dyadic rational; the conversion is exact.
Rational rational_from_double(double x);
double to_double(const Rational& q);

// Fraction-free (Bareiss) elimination of the Hankel array
//
//   M[i][j] = m[i+j],  i = 0..rows-1,  j = 0..rows,
//
// consuming m[0..2*rows-1]. After step k the (i,j) entry equals the minor of
// M built from rows {0..k-1, i} and columns {0..k-1, j}, so
//
//   pivot[n]   = det [m_{i+j}]_{i,j<=n}                (leading Hankel minor)
//   shifted[n] = the same minor with column n replaced by column n+1.
//
// Elimination stops at the first non-positive pivot; `usable` counts the
// strictly positive leading pivots. Works over exact integers (division is
// exact by construction) and over floating scalars alike.
template <class T>
struct Elimination {
    std::vector<T> pivot;
    std::vector<T> shifted;
    int usable = 0;
};

template <class T>
Elimination<T> eliminate_hankel(const std::vector<T>& m, int rows)
{
    if (rows < 1)
        throw Error("eliminate_hankel: rows must be >= 1");
    if (static_cast<int>(m.size()) < 2 * rows)
        throw DepthUnavailable("eliminate_hankel: need moments up to order 2*rows-1");

    const int cols = rows + 1;
    std::vector<std::vector<T>> a(rows, std::vector<T>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            a[i][j] = m[i + j];

    Elimination<T> out;
    T prev = T(1);
    for (int k = 0; k < rows; ++k) {
        const T piv = a[k][k];
        out.pivot.push_back(piv);
        out.shifted.push_back(a[k][k + 1]);
        if (!(piv > T(0))) {
            out.usable = k;
            return out;
        }
        for (int i = k + 1; i < rows; ++i) {
            for (int j = k + 1; j < cols; ++j)
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) / prev;
            a[i][k] = T(0);
        }
        prev = piv;
    }
    out.usable = rows;
    return out;
}

// Clears denominators with one common factor and eliminates over the
// integers. Minor ratios of the form pivot[n]*pivot[n-2]/pivot[n-1]^2 and
// shifted[n]/pivot[n] are invariant under the scaling.
Elimination<Int> eliminate_hankel_exact(const std::vector<Rational>& m, int rows);

} // namespace ifock::exact
