#pragma once

// The p-action u -> sum {p r_i} w_i on the fundamental domain, its cycle
// decomposition, and the p-stability predicate.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newton_forge/arith.hpp"
#include "newton_forge/error.hpp"
#include "newton_forge/lattice.hpp"

namespace newton_forge {

/// A prime p together with an exponent matrix; gcd(p, det J) = 1.
class PrimeContext {
public:
    PrimeContext(std::uint64_t p, ExponentMatrix matrix) : p_(p), matrix_(std::move(matrix)) {
        if (!is_prime(p_)) throw Error(ErrorCode::NotPrime, std::to_string(p_) + " is not prime");
        if (gcd(Integer(p_), matrix_.det()) != 1) throw Error(ErrorCode::NotCoprime, "gcd(p, det J) != 1");
    }

    std::uint64_t p() const { return p_; }
    const ExponentMatrix& matrix() const { return matrix_; }

private:
    std::uint64_t p_;
    ExponentMatrix matrix_;
};

inline bool in_unit_cube(const RationalVector& r) {
    for (const auto& x : r)
        if (x < 0 || x >= 1) return false;
    return true;
}

/// p.u: the point with coordinates ({p r_1}, ..., {p r_n}).
inline DomainPoint p_act(const PrimeContext& ctx, const DomainPoint& u) {
    if (!in_unit_cube(u.r))
        throw Error(ErrorCode::NotInDomain, "point coordinates are outside [0,1)^n");
    const Rational p(Integer(ctx.p()));
    DomainPoint out;
    out.weight = 0;
    out.r.reserve(u.r.size());
    for (const auto& r : u.r) {
        out.r.push_back(frac(p * r));
        out.weight += out.r.back();
    }
    RationalVector image = multiply(ctx.matrix().rows(), out.r);
    out.u.reserve(image.size());
    for (const auto& x : image) out.u.push_back(numerator(x));
    return out;
}

struct Orbit {
    std::vector<DomainPoint> points;  // [u, p.u, p^2.u, ...], starting at the smallest u
    Rational slope_sum;               // sum of the weights along the cycle

    std::size_t length() const { return points.size(); }
};

/// Image of every domain point under p_act, as indices into domain.points().
inline std::vector<std::size_t> p_action_permutation(const PrimeContext& ctx, const FundamentalDomain& domain) {
    std::vector<std::size_t> image;
    image.reserve(domain.size());
    for (const auto& pt : domain.points()) {
        auto idx = domain.index_of(p_act(ctx, pt).u);
        if (!idx) throw Error(ErrorCode::NotInDomain, "p-action left the fundamental domain");
        image.push_back(*idx);
    }
    return image;
}

/// Disjoint cycles of the p-action, sorted by their smallest point.
inline std::vector<Orbit> orbit_decomposition(const PrimeContext& ctx, const FundamentalDomain& domain) {
    auto image = p_action_permutation(ctx, domain);
    std::vector<bool> visited(domain.size(), false);
    std::vector<Orbit> orbits;
    // Points are sorted, so the first unvisited index is the minimum of its cycle.
    for (std::size_t start = 0; start < domain.size(); ++start) {
        if (visited[start]) continue;
        Orbit orbit;
        orbit.slope_sum = 0;
        std::size_t cur = start;
        while (!visited[cur]) {
            visited[cur] = true;
            orbit.points.push_back(domain.points()[cur]);
            orbit.slope_sum += domain.points()[cur].weight;
            cur = image[cur];
        }
        if (cur != start) throw Error(ErrorCode::NotInDomain, "p-action is not a permutation");
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

inline std::vector<Orbit> orbit_decomposition(const PrimeContext& ctx) {
    return orbit_decomposition(ctx, fundamental_domain(ctx.matrix()));
}

struct StabilityWitness {
    DomainPoint point;
    DomainPoint image;
};

struct StabilityResult {
    bool stable;
    std::optional<StabilityWitness> witness;  // first u (lexicographically) with w(u) != w(p.u)
};

inline StabilityResult is_p_stable(const PrimeContext& ctx, const FundamentalDomain& domain) {
    for (const auto& pt : domain.points()) {
        DomainPoint image = p_act(ctx, pt);
        if (image.weight != pt.weight) return {false, StabilityWitness{pt, std::move(image)}};
    }
    return {true, std::nullopt};
}

inline StabilityResult is_p_stable(const PrimeContext& ctx) { return is_p_stable(ctx, fundamental_domain(ctx.matrix())); }

}  // namespace newton_forge
