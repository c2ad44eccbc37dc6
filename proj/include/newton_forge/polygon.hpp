#pragma once

// Lower-convex polygons with exact rational vertices.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newton_forge/arith.hpp"
#include "newton_forge/error.hpp"

namespace newton_forge {

struct Vertex {
    Rational x;
    Rational y;

    friend bool operator==(const Vertex& a, const Vertex& b) { return a.x == b.x && a.y == b.y; }
};

/// A lower-convex polygon starting at (0,0). Vertices are strict corners:
/// x strictly increasing, slopes strictly increasing, collinear runs merged.
class LowerPolygon {
public:
    LowerPolygon() : vertices_{Vertex{0, 0}} {}

    /// Each slope contributes a segment of horizontal length 1.
    static LowerPolygon from_slopes(std::vector<Rational> slopes) {
        std::sort(slopes.begin(), slopes.end());
        std::vector<Vertex> pts{Vertex{0, 0}};
        for (const auto& s : slopes) pts.push_back(Vertex{pts.back().x + 1, pts.back().y + s});
        return LowerPolygon(canonical(std::move(pts)));
    }

    /// Lower convex hull of an arbitrary point set; the leftmost point must be (0,0).
    static LowerPolygon lower_hull(std::vector<Vertex> pts) {
        std::sort(pts.begin(), pts.end(), [](const Vertex& a, const Vertex& b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });
        std::vector<Vertex> hull;
        for (auto& pt : pts) {
            if (!hull.empty() && hull.back().x == pt.x) continue;  // keep lowest y per abscissa
            while (hull.size() >= 2 && !turns_left(hull[hull.size() - 2], hull.back(), pt)) hull.pop_back();
            hull.push_back(std::move(pt));
        }
        if (hull.empty() || hull.front().x != 0 || hull.front().y != 0)
            throw Error(ErrorCode::MissingEndpoint, "polygon must start at (0,0)");
        return LowerPolygon(std::move(hull));
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& start() const { return vertices_.front(); }
    const Vertex& end() const { return vertices_.back(); }

    /// Slope multiset, each slope repeated by the horizontal length of its segment.
    std::vector<Rational> slopes() const {
        std::vector<Rational> out;
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            Rational dx = vertices_[i].x - vertices_[i - 1].x;
            if (denominator(dx) != 1)
                throw Error(ErrorCode::InvalidInput, "segment with non-integral horizontal length");
            Rational slope = (vertices_[i].y - vertices_[i - 1].y) / dx;
            for (Integer k = 0; k < numerator(dx); ++k) out.push_back(slope);
        }
        return out;
    }

    /// Height of the polygon at abscissa x, start().x <= x <= end().x.
    Rational evaluate(const Rational& x) const {
        if (x < start().x || x > end().x) throw Error(ErrorCode::RangeMismatch, "abscissa outside polygon range");
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            const auto& a = vertices_[i - 1];
            const auto& b = vertices_[i];
            if (x <= b.x) return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
        }
        return end().y;
    }

    friend bool operator==(const LowerPolygon& a, const LowerPolygon& b) { return a.vertices_ == b.vertices_; }

private:
    explicit LowerPolygon(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {}

    // Strictly convex turn a -> b -> c (collinear counts as not turning).
    static bool turns_left(const Vertex& a, const Vertex& b, const Vertex& c) {
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) > 0;
    }

    static std::vector<Vertex> canonical(std::vector<Vertex> pts) {
        std::vector<Vertex> out;
        for (auto& pt : pts) {
            while (out.size() >= 2 && !turns_left(out[out.size() - 2], out.back(), pt)) out.pop_back();
            out.push_back(std::move(pt));
        }
        return out;
    }

    std::vector<Vertex> vertices_;
};

struct ValuationPoint {
    std::int64_t index;
    std::optional<Rational> valuation;  // nullopt is +infinity (zero coefficient)
};

/// Newton polygon of sum a_i t^i from the points (i, ord a_i).
inline LowerPolygon polygon_from_valuations(const std::vector<ValuationPoint>& points) {
    std::optional<std::int64_t> max_index;
    bool has_origin = false;
    for (const auto& pt : points) {
        if (!max_index || pt.index > *max_index) max_index = pt.index;
        if (pt.index == 0 && pt.valuation && *pt.valuation == 0) has_origin = true;
    }
    if (!has_origin) throw Error(ErrorCode::MissingEndpoint, "no point (0, 0)");
    std::vector<Vertex> finite;
    bool end_finite = false;
    for (const auto& pt : points) {
        if (!pt.valuation) continue;
        if (pt.index == *max_index) end_finite = true;
        finite.push_back(Vertex{Rational(pt.index), *pt.valuation});
    }
    if (!end_finite) throw Error(ErrorCode::MissingEndpoint, "infinite valuation at the maximal index");
    return LowerPolygon::lower_hull(std::move(finite));
}

enum class Verdict { Equal, StrictlyAbove, Incomparable };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::StrictlyAbove: return "strictly_above";
    case Verdict::Incomparable: return "incomparable";
    }
    return "unknown";
}

struct Comparison {
    Verdict verdict;
    bool same_endpoints;
    Vertex upper_end;  // endpoint of the first argument
    Vertex lower_end;  // endpoint of the second argument
    Rational max_gap;  // max of upper(x) - lower(x)
};

/// Pointwise comparison of `upper` (typically a Newton polygon) against
/// `lower` (typically the Hodge polygon). Both must span the same x-range.
inline Comparison compare(const LowerPolygon& upper, const LowerPolygon& lower) {
    if (upper.start().x != lower.start().x || upper.end().x != lower.end().x)
        throw Error(ErrorCode::RangeMismatch, "polygons span different x-ranges");
    // The difference is piecewise linear with breaks at vertices of either
    // polygon; integer abscissas plus all vertices cover every extremum.
    std::vector<Rational> xs;
    for (Integer x = floor(upper.start().x); Rational(x) <= upper.end().x; ++x)
        if (Rational(x) >= upper.start().x) xs.emplace_back(x);
    for (const auto& v : upper.vertices()) xs.push_back(v.x);
    for (const auto& v : lower.vertices()) xs.push_back(v.x);

    bool dominates = true;
    std::optional<Rational> max_gap;
    for (const auto& x : xs) {
        Rational gap = upper.evaluate(x) - lower.evaluate(x);
        if (gap < 0) dominates = false;
        if (!max_gap || gap > *max_gap) max_gap = gap;
    }
    Comparison out{Verdict::Incomparable, upper.end() == lower.end(), upper.end(), lower.end(), *max_gap};
    if (upper == lower)
        out.verdict = Verdict::Equal;
    else if (dominates && out.same_endpoints)
        out.verdict = Verdict::StrictlyAbove;
    return out;
}

}  // namespace newton_forge
