#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace hkdyn {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Largest integer not exceeding r.
inline BigInt floor(const Rational& r)
{
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num < 0 && q * den != num) {
        q -= 1;
    }
    return q;
}

}  // namespace hkdyn
