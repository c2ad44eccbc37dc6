#pragma once

// Lattice-point counts W(l), Hodge numbers H(k), the Hodge polygon and the
// Newton polygon predicted by the orbit structure of the p-action.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "newton_forge/arith.hpp"
#include "newton_forge/dynamics.hpp"
#include "newton_forge/error.hpp"
#include "newton_forge/lattice.hpp"
#include "newton_forge/polygon.hpp"

namespace newton_forge {

/// W(l) = #{u in M(f) : w(u) = l/M}. Every u in M(f) is s + sum k_i w_i with
/// s in S(Delta) and k_i >= 0, and w(u) = w(s) + sum k_i, so each s with
/// t = l/M - w(s) a nonnegative integer contributes C(t+n-1, n-1).
inline Integer count_W(const FundamentalDomain& domain, const Integer& m, const Integer& l) {
    if (l < 0) return 0;
    const std::int64_t n = static_cast<std::int64_t>(domain.matrix().n());
    Integer total = 0;
    const Rational level(l, m);
    for (const auto& s : domain.points()) {
        Rational t = level - s.weight;
        if (t < 0 || denominator(t) != 1) continue;
        total += binomial(numerator(t) + n - 1, n - 1);
    }
    return total;
}

inline Integer count_W(const ExponentMatrix& j, const Integer& l) {
    return count_W(fundamental_domain(j), denominator_M(j), l);
}

struct HodgeData {
    Integer m;
    std::size_t n = 0;
    std::vector<Integer> w;  // W(l) for 0 <= l <= nM
    std::vector<Integer> h;  // H(k) for 0 <= k <= nM

    Integer at(std::size_t k) const { return k < h.size() ? h[k] : Integer(0); }
    std::size_t top() const { return h.size() - 1; }  // nM
};

inline std::size_t to_index(const Integer& v) { return static_cast<std::size_t>(v.convert_to<unsigned long long>()); }

/// H(k) = sum_{l=0}^{n} (-1)^l C(n,l) W(k - lM), checked against the
/// multiset {M w(u) : u in S(Delta)}; HodgeMismatch if they differ anywhere
/// in 0 <= k <= (n+1)M.
inline HodgeData hodge_numbers(const FundamentalDomain& domain) {
    HodgeData out;
    out.m = denominator_M(domain.matrix());
    out.n = domain.matrix().n();
    const std::size_t mm = to_index(out.m);
    const std::size_t top = out.n * mm;
    const std::size_t horizon = top + mm;

    std::vector<Integer> w_ext(horizon + 1);
    for (std::size_t l = 0; l <= horizon; ++l) w_ext[l] = count_W(domain, out.m, Integer(l));
    auto w_at = [&](std::int64_t l) { return l < 0 ? Integer(0) : w_ext[static_cast<std::size_t>(l)]; };

    std::vector<Integer> h_ext(horizon + 1, 0);
    for (std::size_t k = 0; k <= horizon; ++k)
        for (std::size_t l = 0; l <= out.n; ++l) {
            Integer term = binomial(Integer(out.n), static_cast<std::int64_t>(l)) *
                           w_at(static_cast<std::int64_t>(k) - static_cast<std::int64_t>(l * mm));
            h_ext[k] += (l % 2 == 0) ? term : Integer(-term);
        }

    std::vector<Integer> multiset(horizon + 1, 0);
    for (const auto& pt : domain.points()) {
        Rational scaled = pt.weight * Rational(out.m);
        if (denominator(scaled) != 1 || scaled < 0 || numerator(scaled) > horizon)
            throw Error(ErrorCode::HodgeMismatch, "weight " + to_string(pt.weight) + " not in (1/M)Z range");
        multiset[to_index(numerator(scaled))] += 1;
    }
    for (std::size_t k = 0; k <= horizon; ++k)
        if (h_ext[k] != multiset[k])
            throw Error(ErrorCode::HodgeMismatch, "H(" + std::to_string(k) + ") = " + h_ext[k].str() +
                                                      " but S(Delta) has " + multiset[k].str() + " points of that weight");

    out.w.assign(w_ext.begin(), w_ext.begin() + static_cast<std::ptrdiff_t>(top + 1));
    out.h.assign(h_ext.begin(), h_ext.begin() + static_cast<std::ptrdiff_t>(top + 1));
    return out;
}

inline HodgeData hodge_numbers(const ExponentMatrix& j) { return hodge_numbers(fundamental_domain(j)); }

/// HP(Delta) from the vertices (sum_{k<=m} H(k), (1/M) sum_{k<=m} k H(k)),
/// cross-checked against the polygon with slope multiset {w(u)}.
inline LowerPolygon hodge_polygon(const FundamentalDomain& domain, const HodgeData& hodge) {
    std::vector<Vertex> pts{Vertex{0, 0}};
    Integer count = 0;
    Integer moment = 0;
    for (std::size_t k = 0; k < hodge.h.size(); ++k) {
        count += hodge.h[k];
        moment += Integer(k) * hodge.h[k];
        pts.push_back(Vertex{Rational(count), Rational(moment, hodge.m)});
    }
    LowerPolygon from_hodge = LowerPolygon::lower_hull(std::move(pts));

    std::vector<Rational> weights;
    weights.reserve(domain.size());
    for (const auto& pt : domain.points()) weights.push_back(pt.weight);
    LowerPolygon from_weights = LowerPolygon::from_slopes(std::move(weights));
    if (!(from_hodge == from_weights))
        throw Error(ErrorCode::HodgeMismatch, "Hodge-number polygon differs from weight-multiset polygon");
    return from_hodge;
}

inline LowerPolygon hodge_polygon(const ExponentMatrix& j) {
    auto domain = fundamental_domain(j);
    return hodge_polygon(domain, hodge_numbers(domain));
}

/// Each orbit of length d with slope sum s contributes the factor 1 - t^d lambda
/// with ord(lambda) = s, i.e. d slopes equal to s/d.
inline LowerPolygon newton_polygon_theoretical(const std::vector<Orbit>& orbits) {
    std::vector<Rational> slopes;
    for (const auto& orbit : orbits) {
        Rational slope = orbit.slope_sum / Rational(Integer(orbit.length()));
        for (std::size_t i = 0; i < orbit.length(); ++i) slopes.push_back(slope);
    }
    return LowerPolygon::from_slopes(std::move(slopes));
}

inline LowerPolygon newton_polygon_theoretical(const PrimeContext& ctx) {
    return newton_polygon_theoretical(orbit_decomposition(ctx));
}

}  // namespace newton_forge
