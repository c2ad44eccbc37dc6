#pragma once

// Test-only helpers: random instance generation and brute-force oracles
// that share no code path with the library routines they check.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "newton_forge/newton_forge.hpp"

namespace nf_test {

using namespace newton_forge;

inline IntMatrix to_matrix(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m;
    for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
    return m;
}

/// Distinct matrices with n in {1,2,3}, entries in [-3,3] and 0 < |det| <= max_det.
/// All six 1x1 matrices are always included; the rest are sampled with a fixed seed.
inline std::vector<IntMatrix> sample_matrices(std::size_t count, std::uint64_t seed = 20261016, long long max_det = 10) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::set<IntMatrix> seen;
    std::vector<IntMatrix> out;
    for (long long d : {-3, -2, -1, 1, 2, 3}) {
        IntMatrix m{{Integer(d)}};
        seen.insert(m);
        out.push_back(m);
    }
    std::size_t n_pick = 0;
    while (out.size() < count) {
        std::size_t n = 2 + (n_pick++ % 2);
        IntMatrix m(n, IntVector(n));
        for (auto& row : m)
            for (auto& x : row) x = entry(rng);
        Integer det = determinant(m);
        if (det == 0 || abs(det) > max_det) continue;
        if (seen.insert(m).second) out.push_back(m);
    }
    return out;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= limit; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

/// W(l) by enumerating every integer point of a box covering {u in C(f) : w(u) <= l/M}.
/// For u in the cone, u = sum r_i w_i with r_i >= 0 and sum r_i = w(u), so
/// |u|_inf <= w(u) * max_i |w_i|_inf.
inline Integer brute_force_W(const ExponentMatrix& j, const Integer& m, long long l) {
    if (l < 0) return 0;
    const std::size_t n = j.n();
    Integer col_max = 0;
    for (const auto& row : j.rows())
        for (const auto& x : row)
            if (abs(x) > col_max) col_max = abs(x);
    const Rational level(Integer(l), m);
    const long long bound = floor(level * Rational(col_max)).convert_to<long long>();
    Integer count = 0;
    IntVector u(n, -bound);
    for (;;) {
        // Solve J r = u by Cramer's rule, independent of the library's coords().
        bool in_cone = true;
        Rational w = 0;
        for (std::size_t k = 0; k < n && in_cone; ++k) {
            IntMatrix replaced = j.rows();
            for (std::size_t i = 0; i < n; ++i) replaced[i][k] = u[i];
            Rational r = make_rational(determinant(replaced), j.det());
            if (r < 0) in_cone = false;
            w += r;
        }
        if (in_cone && w == level) ++count;
        std::size_t pos = 0;
        while (pos < n && ++u[pos] > bound) u[pos++] = -bound;
        if (pos == n) break;
    }
    return count;
}

}  // namespace nf_test
