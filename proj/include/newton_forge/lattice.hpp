#pragma once

// Exact linear algebra over the exponent lattice: determinants, coordinates
// in the basis of exponent vectors, weights, Smith normal form and the
// fundamental domain of the column lattice.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "newton_forge/arith.hpp"
#include "newton_forge/error.hpp"

namespace newton_forge {

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline bool is_square(const IntMatrix& m) {
    return std::all_of(m.begin(), m.end(), [&](const IntVector& row) { return row.size() == m.size(); });
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner == 0 ? 0 : b.front().size();
    IntMatrix out(rows, IntVector(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline IntVector multiply(const IntMatrix& a, const IntVector& v) {
    IntVector out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

inline RationalVector multiply(const IntMatrix& a, const RationalVector& v) {
    RationalVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += Rational(a[i][j]) * v[j];
    return out;
}

/// Fraction-free Gaussian elimination (Bareiss); exact for integer input.
inline Integer determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

struct DetAdjugate {
    Integer det;
    IntMatrix adjugate;
};

/// Returns (det J, adj J) with J * adj = det * I. Throws DetZero when singular.
inline DetAdjugate det_and_adjugate(const IntMatrix& j) {
    if (j.empty() || !is_square(j))
        throw Error(ErrorCode::InvalidInput, "matrix must be square and non-empty");
    const std::size_t n = j.size();
    Integer det = determinant(j);
    if (det == 0) throw Error(ErrorCode::DetZero, "det J = 0");
    IntMatrix adj(n, IntVector(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return {det, adj};
    }
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            IntMatrix minor;
            minor.reserve(n - 1);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == row) continue;
                IntVector line;
                line.reserve(n - 1);
                for (std::size_t c = 0; c < n; ++c)
                    if (c != col) line.push_back(j[r][c]);
                minor.push_back(std::move(line));
            }
            Integer cofactor = determinant(std::move(minor));
            if ((row + col) % 2 == 1) cofactor = -cofactor;
            adj[col][row] = cofactor;  // transpose of the cofactor matrix
        }
    }
    return {det, adj};
}

/// The n x n matrix J whose columns are the exponent vectors w_1..w_n.
/// Immutable once constructed; det and adjugate are cached.
class ExponentMatrix {
public:
    explicit ExponentMatrix(IntMatrix rows) : rows_(std::move(rows)) {
        auto da = det_and_adjugate(rows_);
        det_ = std::move(da.det);
        adjugate_ = std::move(da.adjugate);
    }

    std::size_t n() const { return rows_.size(); }
    const IntMatrix& rows() const { return rows_; }
    const Integer& det() const { return det_; }
    Integer abs_det() const { return abs(det_); }
    const IntMatrix& adjugate() const { return adjugate_; }

    IntVector column(std::size_t j) const {
        IntVector w(n());
        for (std::size_t i = 0; i < n(); ++i) w[i] = rows_[i][j];
        return w;
    }

    friend bool operator==(const ExponentMatrix& a, const ExponentMatrix& b) { return a.rows_ == b.rows_; }

private:
    IntMatrix rows_;
    Integer det_;
    IntMatrix adjugate_;
};

/// Unique r with J r = u, i.e. adj(J) u / det(J).
inline RationalVector coords(const ExponentMatrix& j, const IntVector& u) {
    IntVector scaled = multiply(j.adjugate(), u);
    RationalVector r;
    r.reserve(scaled.size());
    for (auto& s : scaled) r.push_back(make_rational(s, j.det()));
    return r;
}

struct WeightReport {
    Rational weight;
    bool in_cone;  // all coordinates >= 0
};

inline WeightReport weight_report(const ExponentMatrix& j, const IntVector& u) {
    WeightReport out{Rational(0), true};
    for (const auto& r : coords(j, u)) {
        out.weight += r;
        if (r < 0) out.in_cone = false;
    }
    return out;
}

enum class ConeCheck { Required, Ignored };

/// Sum of the coordinates of u. With ConeCheck::Required, points outside
/// the cone C(f) raise NotInCone.
inline Rational weight(const ExponentMatrix& j, const IntVector& u, ConeCheck check = ConeCheck::Required) {
    auto rep = weight_report(j, u);
    if (check == ConeCheck::Required && !rep.in_cone)
        throw Error(ErrorCode::NotInCone, "point lies outside the cone spanned by the exponent vectors");
    return rep.weight;
}

/// Minimal M with M * w(u) integral for every lattice point u. The weight is
/// the linear form (1,...,1) J^{-1}; M is the common denominator of that row.
inline Integer denominator_M(const ExponentMatrix& j) {
    Integer m = 1;
    for (std::size_t col = 0; col < j.n(); ++col) {
        Integer entry = 0;
        for (std::size_t row = 0; row < j.n(); ++row) entry += j.adjugate()[row][col];
        m = lcm(m, denominator(make_rational(entry, j.det())));
    }
    return m;
}

struct SmithForm {
    IntMatrix u;  // unimodular, acts on rows
    IntMatrix s;  // diagonal, s_1 | s_2 | ... | s_n, all positive
    IntMatrix v;  // unimodular, acts on columns
    IntVector diagonal() const {
        IntVector d(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) d[i] = s[i][i];
        return d;
    }
};

/// U J V = S with U, V unimodular and S in Smith normal form.
inline SmithForm smith_normal_form(const IntMatrix& j) {
    if (j.empty() || !is_square(j))
        throw Error(ErrorCode::InvalidInput, "matrix must be square and non-empty");
    if (determinant(j) == 0) throw Error(ErrorCode::DetZero, "det J = 0");
    const std::size_t n = j.size();
    IntMatrix s = j;
    IntMatrix u = identity_matrix(n);
    IntMatrix v = identity_matrix(n);

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(s[a], s[b]);
        std::swap(u[a], u[b]);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : s) std::swap(row[a], row[b]);
        for (auto& row : v) std::swap(row[a], row[b]);
    };
    // row[dst] += factor * row[src]
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& factor) {
        for (std::size_t c = 0; c < n; ++c) {
            s[dst][c] += factor * s[src][c];
            u[dst][c] += factor * u[src][c];
        }
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Integer& factor) {
        for (std::size_t r = 0; r < n; ++r) {
            s[r][dst] += factor * s[r][src];
            v[r][dst] += factor * v[r][src];
        }
    };

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // Move the smallest nonzero entry of the trailing block to (t, t).
            std::optional<std::pair<std::size_t, std::size_t>> pivot;
            for (std::size_t r = t; r < n; ++r)
                for (std::size_t c = t; c < n; ++c)
                    if (s[r][c] != 0 && (!pivot || abs(s[r][c]) < abs(s[pivot->first][pivot->second])))
                        pivot = {r, c};
            if (!pivot) break;  // unreachable for det != 0
            swap_rows(t, pivot->first);
            swap_cols(t, pivot->second);

            bool clean = true;
            for (std::size_t r = t + 1; r < n; ++r) {
                if (s[r][t] == 0) continue;
                add_row(r, t, -Integer(s[r][t] / s[t][t]));
                if (s[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (s[t][c] == 0) continue;
                add_col(c, t, -Integer(s[t][c] / s[t][t]));
                if (s[t][c] != 0) clean = false;
            }
            if (!clean) continue;

            std::optional<std::size_t> offender;
            for (std::size_t r = t + 1; r < n && !offender; ++r)
                for (std::size_t c = t + 1; c < n; ++c)
                    if (s[r][c] % s[t][t] != 0) {
                        offender = r;
                        break;
                    }
            if (!offender) break;
            add_row(t, *offender, Integer(1));
        }
        if (s[t][t] < 0) {
            for (std::size_t c = 0; c < n; ++c) {
                s[t][c] = -s[t][c];
                u[t][c] = -u[t][c];
            }
        }
    }
    return {std::move(u), std::move(s), std::move(v)};
}

/// A lattice point of the fundamental domain together with its coordinates
/// (each in [0, 1)) and its weight.
struct DomainPoint {
    IntVector u;
    RationalVector r;
    Rational weight;

    bool is_origin() const {
        return std::all_of(u.begin(), u.end(), [](const Integer& x) { return x == 0; });
    }

    friend bool operator==(const DomainPoint& a, const DomainPoint& b) { return a.u == b.u; }
    friend bool operator<(const DomainPoint& a, const DomainPoint& b) { return a.u < b.u; }
};

/// Canonical representative of u modulo the column lattice of J.
inline DomainPoint reduce(const ExponentMatrix& j, const IntVector& u) {
    DomainPoint out;
    out.r = coords(j, u);
    out.weight = 0;
    for (auto& r : out.r) {
        r = frac(r);
        out.weight += r;
    }
    RationalVector image = multiply(j.rows(), out.r);
    out.u.reserve(image.size());
    for (const auto& x : image) out.u.push_back(numerator(x));  // integral by construction
    return out;
}

/// S(Delta): all lattice points with coordinates in [0,1)^n, sorted
/// lexicographically by u. Contains exactly |det J| points.
class FundamentalDomain {
public:
    FundamentalDomain(ExponentMatrix matrix, std::vector<DomainPoint> points)
        : matrix_(std::move(matrix)), points_(std::move(points)) {}

    const ExponentMatrix& matrix() const { return matrix_; }
    const std::vector<DomainPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    std::optional<std::size_t> index_of(const IntVector& u) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), u,
                                   [](const DomainPoint& p, const IntVector& key) { return p.u < key; });
        if (it == points_.end() || it->u != u) return std::nullopt;
        return static_cast<std::size_t>(it - points_.begin());
    }

private:
    ExponentMatrix matrix_;
    std::vector<DomainPoint> points_;
};

namespace detail {

// Independent enumeration: r ranges over {0, 1/D, ..., (D-1)/D}^n and is
// kept when J r is integral. O(D^n); used only as a cross-check.
inline std::vector<IntVector> naive_domain_grid(const ExponentMatrix& j) {
    const std::size_t n = j.n();
    const Integer d = j.abs_det();
    std::vector<IntVector> out;
    IntVector k(n, 0);
    for (;;) {
        IntVector image = multiply(j.rows(), k);
        bool integral = std::all_of(image.begin(), image.end(), [&](const Integer& x) { return x % d == 0; });
        if (integral) {
            for (auto& x : image) x /= d;
            out.push_back(std::move(image));
        }
        std::size_t pos = 0;
        while (pos < n && ++k[pos] == d) k[pos++] = 0;
        if (pos == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline constexpr unsigned long long kNaiveGridLimit = 1ull << 20;

}  // namespace detail

inline FundamentalDomain fundamental_domain(const ExponentMatrix& j) {
    const std::size_t n = j.n();
    SmithForm snf = smith_normal_form(j.rows());
    // Z^n / J Z^n is isomorphic to Z^n / S Z^n through y = U u; walk y over
    // the product of Z/s_i and map back with U^{-1} = adj(U) / det(U).
    DetAdjugate u_inv = det_and_adjugate(snf.u);
    IntVector sizes = snf.diagonal();

    std::set<DomainPoint> seen;
    IntVector y(n, 0);
    for (;;) {
        IntVector rep = multiply(u_inv.adjugate, y);
        for (auto& x : rep) x *= u_inv.det;  // det(U) = +-1
        seen.insert(reduce(j, rep));
        std::size_t pos = 0;
        while (pos < n && ++y[pos] == sizes[pos]) y[pos++] = 0;
        if (pos == n) break;
    }
    std::vector<DomainPoint> points(seen.begin(), seen.end());
    if (Integer(points.size()) != j.abs_det())
        throw Error(ErrorCode::EnumerationMismatch, "coset enumeration produced " + std::to_string(points.size()) +
                                                        " points, expected " + j.abs_det().str());

    if (j.abs_det() <= 64 && ipow(j.abs_det(), n) <= detail::kNaiveGridLimit) {
        auto grid = detail::naive_domain_grid(j);
        bool same = grid.size() == points.size();
        for (std::size_t i = 0; same && i < grid.size(); ++i) same = grid[i] == points[i].u;
        if (!same) throw Error(ErrorCode::EnumerationMismatch, "coset enumeration disagrees with grid enumeration");
    }
    return FundamentalDomain(j, std::move(points));
}

}  // namespace newton_forge
