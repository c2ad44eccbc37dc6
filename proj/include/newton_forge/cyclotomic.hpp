#pragma once

// Exact arithmetic in Z[zeta_p] and Q(zeta_p), and the valuation normalized
// by ord(p) = 1, ord(1 - zeta_p) = 1/(p-1).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newton_forge/arith.hpp"
#include "newton_forge/error.hpp"

namespace newton_forge {

/// sum c_j zeta^j over the basis zeta^0 .. zeta^{p-2}. For p = 2 the ring is
/// Z with zeta = -1, stored as a single coefficient.
class CyclotomicInteger {
public:
    explicit CyclotomicInteger(std::uint64_t p) : p_(p), coeffs_(rank(p), 0) {}

    CyclotomicInteger(std::uint64_t p, IntVector coeffs) : p_(p), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != rank(p_))
            throw Error(ErrorCode::InvalidInput, "cyclotomic integer needs " + std::to_string(rank(p_)) + " coefficients");
    }

    static CyclotomicInteger constant(std::uint64_t p, const Integer& c) {
        CyclotomicInteger out(p);
        out.coeffs_[0] = c;
        return out;
    }

    /// zeta^e for any e (reduced mod p).
    static CyclotomicInteger zeta_power(std::uint64_t p, std::uint64_t e) {
        IntVector full(p, 0);
        full[e % p] = 1;
        return from_full(p, full);
    }

    /// sum_c counts[c] zeta^c for c in [0, p).
    static CyclotomicInteger from_counts(std::uint64_t p, const IntVector& counts) {
        if (counts.size() != p) throw Error(ErrorCode::InvalidInput, "need one count per residue class");
        return from_full(p, counts);
    }

    std::uint64_t p() const { return p_; }
    const IntVector& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// Rational integer when every non-constant coefficient vanishes.
    std::optional<Integer> as_integer() const {
        for (std::size_t j = 1; j < coeffs_.size(); ++j)
            if (coeffs_[j] != 0) return std::nullopt;
        return coeffs_[0];
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& c : coeffs_) g = gcd(g, c);
        return g;
    }

    CyclotomicInteger& operator+=(const CyclotomicInteger& b) {
        check_same(b);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += b.coeffs_[j];
        return *this;
    }
    CyclotomicInteger& operator-=(const CyclotomicInteger& b) {
        check_same(b);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= b.coeffs_[j];
        return *this;
    }
    CyclotomicInteger& operator*=(const Integer& k) {
        for (auto& c : coeffs_) c *= k;
        return *this;
    }
    /// Exact division of every coefficient; k must divide the content.
    CyclotomicInteger& divide_exact(const Integer& k) {
        for (auto& c : coeffs_) c /= k;
        return *this;
    }

    friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) { return a += b; }
    friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) { return a -= b; }
    friend CyclotomicInteger operator*(CyclotomicInteger a, const Integer& k) { return a *= k; }
    friend CyclotomicInteger operator-(CyclotomicInteger a) { return a *= Integer(-1); }

    friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        a.check_same(b);
        const std::uint64_t p = a.p_;
        // Multiply modulo zeta^p - 1, then eliminate zeta^{p-1}.
        IntVector full(p, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                if (b.coeffs_[j] != 0) full[(i + j) % p] += a.coeffs_[i] * b.coeffs_[j];
        }
        return from_full(p, full);
    }

    friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
    }

    /// Human-readable form in powers of z = zeta_p, e.g. "1 + 2z^2".
    std::string str() const {
        std::string out;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const Integer& c = coeffs_[j];
            if (c == 0) continue;
            bool negative = c < 0;
            Integer mag = abs(c);
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            if (j == 0 || mag != 1) out += mag.str();
            if (j >= 1) out += "z";
            if (j >= 2) out += "^" + std::to_string(j);
        }
        return out.empty() ? "0" : out;
    }

private:
    static std::size_t rank(std::uint64_t p) {
        if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        return static_cast<std::size_t>(p - 1);
    }

    // Coefficients of zeta^0 .. zeta^{p-1}; uses 1 + zeta + ... + zeta^{p-1} = 0.
    static CyclotomicInteger from_full(std::uint64_t p, const IntVector& full) {
        CyclotomicInteger out(p);
        for (std::size_t j = 0; j + 1 < p; ++j) out.coeffs_[j] = full[j] - full[p - 1];
        return out;
    }

    void check_same(const CyclotomicInteger& b) const {
        if (p_ != b.p_) throw Error(ErrorCode::InvalidInput, "cyclotomic integers over different primes");
    }

    std::uint64_t p_;
    IntVector coeffs_;
};

/// ord(a) with ord(p) = 1; nullopt encodes +infinity (a = 0).
/// Rewrites a in powers of pi = 1 - zeta: a = sum_m d_m pi^m, m <= p-2. The
/// terms have valuations ord_p(d_m) + m/(p-1), pairwise distinct mod 1, so
/// the valuation of the sum is the minimum.
inline std::optional<Rational> ord_pi(const CyclotomicInteger& a) {
    if (a.is_zero()) return std::nullopt;
    const std::uint64_t p = a.p();
    const auto& c = a.coeffs();
    std::optional<Rational> best;
    for (std::size_t m = 0; m < c.size(); ++m) {
        // zeta^j = (1 - pi)^j = sum_m C(j,m) (-1)^m pi^m
        Integer d = 0;
        for (std::size_t j = m; j < c.size(); ++j) d += c[j] * binomial(Integer(j), static_cast<std::int64_t>(m));
        if (m % 2 == 1) d = -d;
        if (d == 0) continue;
        Rational v = Rational(p_adic_order(d, p)) + Rational(Integer(m), Integer(p - 1));
        if (!best || v < *best) best = v;
    }
    return best;
}

/// num / den with den > 0 and gcd(content(num), den) = 1.
class CyclotomicRational {
public:
    explicit CyclotomicRational(CyclotomicInteger num, Integer den = 1) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    const CyclotomicInteger& numerator() const { return num_; }
    const Integer& denominator() const { return den_; }
    bool is_integral() const { return den_ == 1; }
    bool is_zero() const { return num_.is_zero(); }

    friend CyclotomicRational operator+(const CyclotomicRational& a, const CyclotomicRational& b) {
        Integer g = gcd(a.den_, b.den_);
        Integer den = a.den_ / g * b.den_;
        return CyclotomicRational(a.num_ * Integer(den / a.den_) + b.num_ * Integer(den / b.den_), den);
    }

    friend CyclotomicRational operator*(const CyclotomicRational& a, const CyclotomicInteger& b) {
        return CyclotomicRational(a.num_ * b, a.den_);
    }

    CyclotomicRational divided_by(const Integer& k) const {
        if (k == 0) throw Error(ErrorCode::InvalidInput, "division by zero");
        CyclotomicInteger num = num_;
        Integer den = den_ * k;
        if (k < 0) {
            num = -num;
            den = -den;
        }
        return CyclotomicRational(std::move(num), std::move(den));
    }

    friend bool operator==(const CyclotomicRational& a, const CyclotomicRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void normalize() {
        if (den_ == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        Integer g = gcd(num_.content(), den_);
        if (g != 1) {
            num_.divide_exact(g);
            den_ /= g;
        }
    }

    CyclotomicInteger num_;
    Integer den_;
};

}  // namespace newton_forge
