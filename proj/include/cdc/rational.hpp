#pragma once

// Exact arithmetic used throughout: communication loads and gains are
// rational identities, never floats. Sweeps reach parameters where the
// intermediate binomials exceed 64 bits (e.g. C(183,14)), hence the
// multiprecision backend.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cdc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k) as an exact integer; zero when k < 0 or k > n.
inline Integer binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

// base^exp for non-negative integer exponents.
inline Rational rational_pow(const Rational& base, unsigned long long exp) {
    Rational result = 1;
    Rational b = base;
    while (exp > 0) {
        if (exp & 1ULL) result *= b;
        b *= b;
        exp >>= 1ULL;
    }
    return result;
}

// "a/b" (or just "a" when the denominator is 1).
inline std::string to_fraction_string(const Rational& r) {
    Integer num = numerator(r);
    Integer den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

inline bool is_integral(const Rational& r) {
    return denominator(r) == 1;
}

// Exact division a/b with a divisibility check; used where a formula is
// known to be integer-valued and a fractional result means bad parameters.
inline long long exact_quotient(const Integer& a, const Integer& b) {
    if (b == 0) throw std::invalid_argument("exact_quotient: division by zero");
    if (a % b != 0) {
        throw std::invalid_argument("exact_quotient: " + a.str() + " not divisible by " + b.str());
    }
    Integer q = a / b;
    return q.convert_to<long long>();
}

}  // namespace cdc
