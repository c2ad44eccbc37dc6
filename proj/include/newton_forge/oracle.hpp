#pragma once

// Empirical route to the Newton polygon: exhaustive character sums over the
// torus of F_{p^i}, the L-polynomial as an exact power-series exponential
// over Q(zeta_p), and its Newton polygon from (1 - zeta_p)-adic valuations.
// Nothing here uses weights, orbits or Hodge numbers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "newton_forge/arith.hpp"
#include "newton_forge/cyclotomic.hpp"
#include "newton_forge/dynamics.hpp"
#include "newton_forge/error.hpp"
#include "newton_forge/finite_field.hpp"
#include "newton_forge/polygon.hpp"

namespace newton_forge {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Fields with q - 1 above this are enumerated by square-and-multiply.
inline constexpr std::uint64_t kTraceTableLimit = 1ull << 26;

/// Tr(g^k) for a fixed generator g and 0 <= k < q - 1. Since the trace is
/// F_p-linear, Tr(a) = sum_m a_m Tr(x^m) with the basis traces computed once.
struct TraceTable {
    FieldTower field;
    FieldElement generator;
    std::vector<std::uint8_t> traces;
};

inline TraceTable build_trace_table(FieldTower field) {
    const std::size_t deg = field.degree();
    const std::uint32_t p = field.p();
    if (p > 255) throw Error(ErrorCode::InvalidInput, "trace tables support p < 256");
    std::vector<std::uint32_t> basis_trace(deg);
    for (std::size_t m = 0; m < deg; ++m) {
        FieldElement e = field.zero();
        e[m] = 1;
        basis_trace[m] = absolute_trace(field, e);
    }
    FieldElement g = primitive_element(field);
    const std::uint64_t group = field.order() - 1;
    std::vector<std::uint8_t> traces(group);
    FieldElement cur = field.one();
    for (std::uint64_t k = 0; k < group; ++k) {
        std::uint64_t t = 0;
        for (std::size_t m = 0; m < deg; ++m) t += std::uint64_t(cur[m]) * basis_trace[m];
        traces[k] = static_cast<std::uint8_t>(t % p);
        cur = field.mul(cur, g);
    }
    return TraceTable{std::move(field), std::move(g), std::move(traces)};
}

/// Shares trace tables across calls; safe to use from several threads.
class FieldCache {
public:
    std::shared_ptr<const TraceTable> get(std::uint32_t p, std::size_t degree, std::size_t rank = 0) {
        const auto key = std::make_tuple(p, degree, rank);
        {
            std::lock_guard lock(mutex_);
            if (auto it = tables_.find(key); it != tables_.end()) return it->second;
        }
        auto table = std::make_shared<const TraceTable>(build_trace_table(build_field(p, degree, rank)));
        std::lock_guard lock(mutex_);
        return tables_.emplace(key, std::move(table)).first->second;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>, std::shared_ptr<const TraceTable>> tables_;
};

struct OracleOptions {
    std::uint64_t budget = kDefaultBudget;  // max torus points per sum
    unsigned threads = 0;                   // 0 = hardware concurrency
    std::size_t modulus_rank = 0;           // which irreducible modulus to use
    std::size_t slack = 2;                  // extra sums certifying the degree
    bool force_direct = false;              // skip trace tables
    FieldCache* cache = nullptr;
};

/// (p^i - 1)^n, the number of torus points over F_{p^i}.
inline Integer torus_size(std::uint64_t p, std::size_t n, std::size_t i) {
    return ipow(ipow(Integer(p), i) - 1, n);
}

inline void check_budget(std::uint64_t p, std::size_t n, std::size_t i, std::uint64_t budget) {
    Integer size = torus_size(p, n, i);
    if (size > budget)
        throw Error(ErrorCode::BudgetExceeded,
                    "torus size " + size.str() + " exceeds budget " + std::to_string(budget) + " (degree " +
                        std::to_string(i) + ")");
}

namespace detail {

inline unsigned worker_count(const OracleOptions& opts, std::uint64_t work) {
    unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    if (work < 100'000) threads = 1;
    return threads;
}

// Tally of Tr(f(x)) over x = (g^{l_1}, ..., g^{l_n}). The exponent of g in
// x^{w_j} is e_j = sum_k J[k][j] l_k mod (q-1); an odometer step on l_k adds
// J[k][j] to every e_j, wrap-around included.
inline std::vector<std::uint64_t> tally_with_table(const ExponentMatrix& j, const TraceTable& table,
                                                   const OracleOptions& opts) {
    const std::size_t n = j.n();
    const std::uint32_t p = table.field.p();
    const std::uint64_t group = table.field.order() - 1;
    const std::uint8_t* traces = table.traces.data();

    std::vector<std::vector<std::uint64_t>> step(n, std::vector<std::uint64_t>(n));  // step[k][col]
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t col = 0; col < n; ++col) {
            Integer r = j.rows()[k][col] % Integer(group);
            if (r < 0) r += group;
            step[k][col] = r.convert_to<std::uint64_t>();
        }

    auto run_chunk = [&, n, p, group, traces](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> by_sum(n * (p - 1) + 1, 0);
        std::vector<std::uint64_t> e(n), l(n, 0);
        for (std::uint64_t l0 = lo; l0 < hi; ++l0) {
            for (std::size_t col = 0; col < n; ++col) {
                unsigned __int128 base = static_cast<unsigned __int128>(step[0][col]) * l0;
                e[col] = static_cast<std::uint64_t>(base % group);
            }
            std::fill(l.begin(), l.end(), 0);
            for (;;) {
                std::uint64_t s = 0;
                for (std::size_t col = 0; col < n; ++col) s += traces[e[col]];
                ++by_sum[s];
                std::size_t k = 1;
                for (; k < n; ++k) {
                    for (std::size_t col = 0; col < n; ++col) {
                        e[col] += step[k][col];
                        if (e[col] >= group) e[col] -= group;
                    }
                    if (++l[k] < group) break;
                    l[k] = 0;
                }
                if (k == n) break;
            }
        }
        return by_sum;
    };

    const unsigned workers = detail::worker_count(opts, group);
    std::vector<std::vector<std::uint64_t>> partial(workers);
    if (workers == 1) {
        partial[0] = run_chunk(0, group);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t lo = group * w / workers, hi = group * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] { partial[w] = run_chunk(lo, hi); });
        }
        for (auto& t : pool) t.join();
    }
    std::vector<std::uint64_t> counts(p, 0);
    for (const auto& part : partial)
        for (std::size_t s = 0; s < part.size(); ++s) counts[s % p] += part[s];
    return counts;
}

// Straightforward enumeration: every nonzero element by index, monomials by
// square-and-multiply (inverse powers for negative exponents), trace by
// Frobenius.
inline std::vector<std::uint64_t> tally_direct(const ExponentMatrix& j, const FieldTower& fld) {
    const std::size_t n = j.n();
    const std::uint64_t group = fld.order() - 1;
    std::vector<std::uint64_t> counts(fld.p(), 0);
    std::vector<std::uint64_t> idx(n, 1);
    std::vector<FieldElement> x(n, fld.one());
    for (;;) {
        for (std::size_t k = 0; k < n; ++k) x[k] = fld.from_index(idx[k]);
        FieldElement value = fld.zero();
        for (std::size_t col = 0; col < n; ++col) {
            FieldElement mono = fld.one();
            for (std::size_t k = 0; k < n; ++k) mono = fld.mul(mono, fld.pow_signed(x[k], j.rows()[k][col]));
            value = fld.add(value, mono);
        }
        ++counts[absolute_trace(fld, value)];
        std::size_t k = 0;
        for (; k < n; ++k) {
            if (++idx[k] <= group) break;
            idx[k] = 1;
        }
        if (k == n) break;
    }
    return counts;
}

}  // namespace detail

struct CharSum {
    std::size_t degree;                  // i
    std::vector<std::uint64_t> counts;   // N_c for c in F_p
    CyclotomicInteger value;             // sum_c N_c zeta^c
};

/// S_i(f) = sum over x in (F_{p^i}^*)^n of zeta^{Tr(f(x))}, f = sum_j x^{w_j}.
inline CharSum char_sum_detailed(const PrimeContext& ctx, std::size_t i, const OracleOptions& opts = {}) {
    const std::uint64_t p = ctx.p();
    const std::size_t n = ctx.matrix().n();
    if (i == 0) throw Error(ErrorCode::InvalidInput, "extension degree must be positive");
    check_budget(p, n, i, opts.budget);

    std::vector<std::uint64_t> counts;
    const Integer q_minus_1 = ipow(Integer(p), i) - 1;
    if (!opts.force_direct && q_minus_1 <= kTraceTableLimit && p < 256) {
        std::shared_ptr<const TraceTable> table;
        if (opts.cache)
            table = opts.cache->get(static_cast<std::uint32_t>(p), i, opts.modulus_rank);
        else
            table = std::make_shared<const TraceTable>(
                build_trace_table(build_field(static_cast<std::uint32_t>(p), i, opts.modulus_rank)));
        counts = detail::tally_with_table(ctx.matrix(), *table, opts);
    } else {
        counts = detail::tally_direct(ctx.matrix(), build_field(static_cast<std::uint32_t>(p), i, opts.modulus_rank));
    }
    IntVector as_int(counts.begin(), counts.end());
    return CharSum{i, counts, CyclotomicInteger::from_counts(p, as_int)};
}

inline CyclotomicInteger char_sum(const PrimeContext& ctx, std::size_t i, const OracleOptions& opts = {}) {
    return char_sum_detailed(ctx, i, opts).value;
}

/// L(f,t)^{(-1)^{n-1}} as a polynomial with cyclotomic-integer coefficients.
struct LPolynomial {
    std::uint64_t p;
    std::size_t n;
    std::size_t degree;
    bool inverted;  // true when the polynomial is 1/L (n even)
    std::vector<CyclotomicInteger> coeffs;
};

/// exp(s * sum_i S_i t^i / i), s = (-1)^{n-1}, via k P_k = s sum_{i=1}^k S_i P_{k-i}.
/// `sums` holds S_1..S_m with m >= degree + 2; coefficients past `degree`
/// must vanish (NotPolynomial) and those up to it must be integral (NotIntegral).
inline LPolynomial l_polynomial(std::uint64_t p, std::size_t n, std::size_t degree,
                                const std::vector<CyclotomicInteger>& sums, std::size_t min_slack = 2) {
    if (sums.size() < degree + min_slack)
        throw Error(ErrorCode::InvalidInput, "need at least " + std::to_string(degree + min_slack) + " power sums, got " +
                                                 std::to_string(sums.size()));
    const bool inverted = n % 2 == 0;
    const std::size_t top = sums.size();
    std::vector<CyclotomicRational> series;
    series.reserve(top + 1);
    series.emplace_back(CyclotomicInteger::constant(p, 1));
    for (std::size_t k = 1; k <= top; ++k) {
        CyclotomicRational acc{CyclotomicInteger(p)};
        for (std::size_t i = 1; i <= k; ++i) acc = acc + series[k - i] * sums[i - 1];
        Integer divisor(k);
        if (inverted) divisor = -divisor;
        series.push_back(acc.divided_by(divisor));
    }
    for (std::size_t k = degree + 1; k <= top; ++k)
        if (!series[k].is_zero())
            throw Error(ErrorCode::NotPolynomial, "coefficient of t^" + std::to_string(k) + " does not vanish");
    LPolynomial out{p, n, degree, inverted, {}};
    for (std::size_t k = 0; k <= degree; ++k) {
        if (!series[k].is_integral())
            throw Error(ErrorCode::NotIntegral, "coefficient of t^" + std::to_string(k) + " is not integral");
        out.coeffs.push_back(series[k].numerator());
    }
    return out;
}

inline LowerPolygon newton_polygon_empirical(const LPolynomial& poly) {
    std::vector<ValuationPoint> pts;
    for (std::size_t i = 0; i < poly.coeffs.size(); ++i)
        pts.push_back(ValuationPoint{static_cast<std::int64_t>(i), ord_pi(poly.coeffs[i])});
    return polygon_from_valuations(pts);
}

struct EmpiricalResult {
    std::vector<CharSum> sums;  // S_1 .. S_{D+slack}
    LPolynomial l_poly;
    LowerPolygon newton;
};

/// Full oracle pipeline for one instance. Checks the budget for the largest
/// field before enumerating anything.
inline EmpiricalResult run_oracle(const PrimeContext& ctx, const OracleOptions& opts = {}) {
    const std::size_t n = ctx.matrix().n();
    const std::size_t degree = ctx.matrix().abs_det().convert_to<std::size_t>();
    const std::size_t count = degree + opts.slack;
    check_budget(ctx.p(), n, count, opts.budget);
    std::vector<CharSum> sums;
    std::vector<CyclotomicInteger> values;
    for (std::size_t i = 1; i <= count; ++i) {
        sums.push_back(char_sum_detailed(ctx, i, opts));
        values.push_back(sums.back().value);
    }
    LPolynomial poly = l_polynomial(ctx.p(), n, degree, values, opts.slack);
    LowerPolygon np = newton_polygon_empirical(poly);
    return EmpiricalResult{std::move(sums), std::move(poly), std::move(np)};
}

}  // namespace newton_forge
