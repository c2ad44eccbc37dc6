#pragma once

// Extensions F_{p^i} of the prime field, represented as F_p[x]/(m(x)) with
// m the lexicographically smallest monic irreducible of degree i.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "newton_forge/arith.hpp"
#include "newton_forge/error.hpp"

namespace newton_forge {

/// Polynomials over F_p, coefficients low to high, no trailing zeros.
namespace fp_poly {

using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    // p is prime: a^(p-2)
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

inline Poly sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
    trim(a);
    return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
    Poly out(acc.begin(), acc.end());
    trim(out);
    return out;
}

/// Remainder of a modulo a nonzero polynomial m.
inline Poly mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inverse_mod(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t factor = a.back() * lead_inv % p;
        for (std::size_t i = 0; i <= dm; ++i) {
            if (m[i] == 0) continue;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - factor * m[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) { return mod(mul(a, b, p), m, p); }

/// a^(p^k) mod m.
inline Poly frobenius_power(Poly a, std::size_t k, const Poly& m, std::uint32_t p) {
    for (std::size_t step = 0; step < k; ++step) {
        Poly result{1};
        Poly base = a;
        for (std::uint64_t e = p; e; e >>= 1) {
            if (e & 1) result = mulmod(result, base, m, p);
            base = mulmod(base, base, m, p);
        }
        a = std::move(result);
    }
    return a;
}

/// Rabin's test: m | x^(p^i) - x and gcd(x^(p^(i/l)) - x, m) = 1 for each prime l | i.
inline bool is_irreducible(const Poly& m, std::uint32_t p) {
    const std::size_t degree = m.size() - 1;
    if (degree == 0) return false;
    if (degree == 1) return true;
    const Poly x{0, 1};
    if (!sub(frobenius_power(x, degree, m, p), x, p).empty()) return false;
    for (auto l : prime_factors(degree)) {
        Poly g = gcd(m, sub(frobenius_power(x, degree / l, m, p), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace fp_poly

/// Field element: exactly `degree` coefficients in [0, p), low to high.
using FieldElement = std::vector<std::uint32_t>;

class FieldTower {
public:
    FieldTower(std::uint32_t p, std::size_t degree, fp_poly::Poly modulus)
        : p_(p), degree_(degree), modulus_(std::move(modulus)) {
        q_ = 1;
        for (std::size_t i = 0; i < degree_; ++i) q_ *= p_;
    }

    std::uint32_t p() const { return p_; }
    std::size_t degree() const { return degree_; }
    std::uint64_t order() const { return q_; }
    const fp_poly::Poly& modulus() const { return modulus_; }

    FieldElement zero() const { return FieldElement(degree_, 0); }
    FieldElement one() const { return constant(1); }
    FieldElement constant(std::uint32_t c) const {
        FieldElement e(degree_, 0);
        e[0] = c % p_;
        return e;
    }

    /// Elements are numbered by their base-p digits: index = sum c_m p^m.
    FieldElement from_index(std::uint64_t index) const {
        FieldElement e(degree_, 0);
        for (std::size_t m = 0; m < degree_; ++m) {
            e[m] = static_cast<std::uint32_t>(index % p_);
            index /= p_;
        }
        return e;
    }

    std::uint64_t index_of(const FieldElement& a) const {
        std::uint64_t index = 0;
        for (std::size_t m = degree_; m-- > 0;) index = index * p_ + a[m];
        return index;
    }

    bool is_zero(const FieldElement& a) const {
        return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement out(degree_);
        for (std::size_t m = 0; m < degree_; ++m) out[m] = (a[m] + b[m]) % p_;
        return out;
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        return widen(fp_poly::mulmod(fp_poly::Poly(a.begin(), a.end()), fp_poly::Poly(b.begin(), b.end()), modulus_, p_));
    }

    FieldElement pow(FieldElement base, std::uint64_t e) const {
        FieldElement result = one();
        while (e) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    /// Signed exponents use the inverse; a must be nonzero when e < 0.
    FieldElement pow_signed(const FieldElement& a, const Integer& e) const {
        const std::uint64_t group = q_ - 1;
        Integer r = e % Integer(group);
        if (r < 0) r += group;
        return pow(a, r.convert_to<std::uint64_t>());
    }

    FieldElement inverse(const FieldElement& a) const {
        if (is_zero(a)) throw Error(ErrorCode::InvalidInput, "inverse of zero");
        return pow(a, q_ - 2);
    }

private:
    FieldElement widen(fp_poly::Poly a) const {
        a.resize(degree_, 0);
        return a;
    }

    std::uint32_t p_;
    std::size_t degree_;
    fp_poly::Poly modulus_;
    std::uint64_t q_;
};

/// The `rank`-th (0 = smallest) monic irreducible of degree i over F_p,
/// ordered lexicographically on (c_0, c_1, ..., c_{i-1}).
inline FieldTower build_field(std::uint32_t p, std::size_t i, std::size_t rank = 0) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (i == 0) throw Error(ErrorCode::InvalidInput, "extension degree must be positive");
    std::vector<std::uint32_t> low(i, 0);  // c_0 .. c_{i-1}
    for (;;) {
        fp_poly::Poly candidate(low.begin(), low.end());
        candidate.push_back(1);
        if (fp_poly::is_irreducible(candidate, p)) {
            if (rank == 0) return FieldTower(p, i, std::move(candidate));
            --rank;
        }
        // c_0 is the most significant position, so increment from the top.
        std::size_t pos = i;
        while (pos > 0 && ++low[pos - 1] == p) low[--pos] = 0;
        if (pos == 0) break;
    }
    throw Error(ErrorCode::InvalidInput, "not enough irreducible polynomials of degree " + std::to_string(i));
}

/// Tr(a) = a + a^p + ... + a^(p^(i-1)), an element of F_p.
inline std::uint32_t absolute_trace(const FieldTower& fld, const FieldElement& a) {
    FieldElement sum = fld.zero();
    FieldElement term = a;
    for (std::size_t j = 0; j < fld.degree(); ++j) {
        sum = fld.add(sum, term);
        term = fld.pow(term, fld.p());
    }
    for (std::size_t m = 1; m < sum.size(); ++m)
        if (sum[m] != 0) throw Error(ErrorCode::TraceNotInPrimeField, "trace left the prime field");
    return sum[0];
}

/// Smallest (by index) generator of the multiplicative group.
inline FieldElement primitive_element(const FieldTower& fld) {
    const std::uint64_t group = fld.order() - 1;
    const auto factors = prime_factors(group);
    for (std::uint64_t index = 1; index < fld.order(); ++index) {
        FieldElement g = fld.from_index(index);
        bool generates = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t l) {
            FieldElement h = fld.pow(g, group / l);
            return h != fld.one();
        });
        if (generates) return g;
    }
    throw Error(ErrorCode::InvalidInput, "no primitive element found");
}

}  // namespace newton_forge
