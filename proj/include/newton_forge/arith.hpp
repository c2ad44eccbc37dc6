#pragma once

// Exact integer/rational helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "newton_forge/error.hpp"

namespace newton_forge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;  // row-major

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// num/den with the sign moved to the numerator; the rational backend rejects negative denominators.
inline Rational make_rational(const Integer& num, const Integer& den) {
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

/// Largest integer not exceeding q.
inline Integer floor(const Rational& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    Integer quot = num / den;  // truncates toward zero
    if (num < 0 && quot * den != num) quot -= 1;
    return quot;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

inline Integer binomial(const Integer& n, std::int64_t k) {
    if (k < 0 || n < k) return 0;
    Integer result = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;
    }
    return result;
}

inline Integer ipow(Integer base, std::uint64_t exp) {
    Integer result = 1;
    while (exp != 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

/// p-adic order of a nonzero integer.
inline std::int64_t p_adic_order(Integer a, std::uint64_t p) {
    std::int64_t v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

/// Deterministic trial division; inputs are small.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Rationals are always written as "num/den", or "num" when integral.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + text + "'");
        return make_rational(Integer(text.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw Error(ErrorCode::InvalidInput, "not a rational: '" + text + "'");
    }
}

}  // namespace newton_forge
