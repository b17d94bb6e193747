#include "ifock/exact.hpp"

#include <cmath>

namespace ifock::exact {

Rational rational_from_double(double x)
{
    if (!std::isfinite(x))
        throw NonFiniteValue("rational_from_double: input is not finite");
    // mantissa * 2^e2 with an integer mantissa
    int exp2 = 0;
    const double mant = std::frexp(x, &exp2);
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    const int e2 = exp2 - 53;

    Rational q(scaled);
    Int p = Int(1) << std::abs(e2);
    if (e2 >= 0)
        q *= Rational(p);
    else
        q /= Rational(p);
    return q;
}

double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

Elimination<Int> eliminate_hankel_exact(const std::vector<Rational>& m, int rows)
{
    if (static_cast<int>(m.size()) < 2 * rows)
        throw DepthUnavailable("eliminate_hankel_exact: need moments up to order 2*rows-1");

    Int den = 1;
    for (int k = 0; k < 2 * rows; ++k)
        den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(m[k])));

    std::vector<Int> scaled(2 * rows);
    for (int k = 0; k < 2 * rows; ++k)
        scaled[k] = Int(boost::multiprecision::numerator(m[k])) *
                    (den / Int(boost::multiprecision::denominator(m[k])));

    return eliminate_hankel<Int>(scaled, rows);
}

} // namespace ifock::exact
