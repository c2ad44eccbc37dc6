#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace newton_forge;

namespace {

// Number of monic irreducibles of degree d over F_p: (1/d) sum_{k|d} mu(d/k) p^k.
long long necklace_count(long long p, long long d) {
    auto mu = [](long long n) {
        int sign = 1;
        for (long long f = 2; f * f <= n; ++f) {
            if (n % f) continue;
            n /= f;
            if (n % f == 0) return 0;
            sign = -sign;
        }
        if (n > 1) sign = -sign;
        return sign;
    };
    long long total = 0;
    for (long long k = 1; k <= d; ++k)
        if (d % k == 0) total += mu(d / k) * ipow(Integer(p), k).convert_to<long long>();
    return total / d;
}

}  // namespace

TEST(BuildField, Examples) {
    EXPECT_EQ(build_field(2, 1).modulus(), (fp_poly::Poly{0, 1}));
    EXPECT_EQ(build_field(2, 2).modulus(), (fp_poly::Poly{1, 1, 1}));
    EXPECT_EQ(build_field(3, 2).modulus(), (fp_poly::Poly{1, 0, 1}));
    EXPECT_EQ(build_field(2, 3).modulus(), (fp_poly::Poly{1, 0, 1, 1}));  // x^3 + x^2 + 1 before x^3 + x + 1
    EXPECT_EQ(build_field(2, 3, 1).modulus(), (fp_poly::Poly{1, 1, 0, 1}));
    EXPECT_THROW(build_field(4, 2), Error);
}

TEST(BuildField, RabinTestMatchesNecklaceCount) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::size_t d = 1; d <= (p == 2 ? 6u : 3u); ++d) {
            long long found = 0;
            std::uint64_t total = ipow(Integer(p), d).convert_to<std::uint64_t>();
            for (std::uint64_t code = 0; code < total; ++code) {
                fp_poly::Poly poly;
                std::uint64_t c = code;
                for (std::size_t m = 0; m < d; ++m) {
                    poly.push_back(static_cast<std::uint32_t>(c % p));
                    c /= p;
                }
                poly.push_back(1);
                if (fp_poly::is_irreducible(poly, p)) ++found;
            }
            EXPECT_EQ(found, necklace_count(p, static_cast<long long>(d))) << "p=" << p << " d=" << d;
        }
    }
}

TEST(FieldTower, ArithmeticAxioms) {
    for (auto [p, d] : {std::pair<std::uint32_t, std::size_t>{2, 3}, {3, 2}, {5, 2}, {2, 4}, {7, 1}}) {
        FieldTower fld = build_field(p, d);
        std::set<std::uint64_t> inverses;
        for (std::uint64_t a = 1; a < fld.order(); ++a) {
            FieldElement x = fld.from_index(a);
            EXPECT_EQ(fld.index_of(x), a);
            FieldElement inv = fld.inverse(x);
            EXPECT_EQ(fld.mul(x, inv), fld.one());
            inverses.insert(fld.index_of(inv));
            EXPECT_EQ(fld.pow(x, fld.order() - 1), fld.one());
            for (std::uint64_t b = 1; b < fld.order(); b += 3) {
                FieldElement y = fld.from_index(b);
                FieldElement z = fld.from_index((a * 7 + b) % fld.order());
                EXPECT_EQ(fld.mul(fld.mul(x, y), z), fld.mul(x, fld.mul(y, z)));
                EXPECT_EQ(fld.mul(x, fld.add(y, z)), fld.add(fld.mul(x, y), fld.mul(x, z)));
            }
        }
        EXPECT_EQ(inverses.size(), fld.order() - 1);
    }
}

TEST(FieldTower, SignedPowersUseInverse) {
    FieldTower fld = build_field(3, 2);
    for (std::uint64_t a = 1; a < fld.order(); ++a) {
        FieldElement x = fld.from_index(a);
        EXPECT_EQ(fld.pow_signed(x, -1), fld.inverse(x));
        EXPECT_EQ(fld.mul(fld.pow_signed(x, -3), fld.pow_signed(x, 3)), fld.one());
    }
}

TEST(AbsoluteTrace, Examples) {
    FieldTower f2 = build_field(2, 1);
    EXPECT_EQ(absolute_trace(f2, f2.one()), 1u);
    FieldTower f4 = build_field(2, 2);
    EXPECT_EQ(absolute_trace(f4, f4.one()), 0u);
    FieldElement g{0, 1};  // x, with x^2 = x + 1
    EXPECT_EQ(absolute_trace(f4, g), 1u);
}

TEST(AbsoluteTrace, LinearAndBalanced) {
    for (auto [p, d] : {std::pair<std::uint32_t, std::size_t>{2, 3}, {3, 2}, {5, 2}, {3, 3}}) {
        FieldTower fld = build_field(p, d);
        std::vector<std::uint64_t> hits(p, 0);
        for (std::uint64_t a = 0; a < fld.order(); ++a) {
            FieldElement x = fld.from_index(a);
            ++hits[absolute_trace(fld, x)];
            FieldElement y = fld.from_index((a * 5 + 1) % fld.order());
            EXPECT_EQ(absolute_trace(fld, fld.add(x, y)), (absolute_trace(fld, x) + absolute_trace(fld, y)) % p);
        }
        // Tr is onto F_p with fibres of size q/p.
        for (auto h : hits) EXPECT_EQ(h, fld.order() / p);
    }
}

TEST(PrimitiveElement, GeneratesGroup) {
    for (auto [p, d] : {std::pair<std::uint32_t, std::size_t>{2, 4}, {3, 2}, {7, 1}, {5, 2}, {13, 1}}) {
        FieldTower fld = build_field(p, d);
        FieldElement g = primitive_element(fld);
        std::set<std::uint64_t> seen;
        FieldElement cur = fld.one();
        for (std::uint64_t k = 0; k + 1 < fld.order(); ++k) {
            seen.insert(fld.index_of(cur));
            cur = fld.mul(cur, g);
        }
        EXPECT_EQ(seen.size(), fld.order() - 1);
    }
}

TEST(TraceTable, MatchesFrobeniusTrace) {
    for (auto [p, d] : {std::pair<std::uint32_t, std::size_t>{2, 5}, {3, 3}, {5, 2}, {11, 1}}) {
        TraceTable table = build_trace_table(build_field(p, d));
        FieldElement cur = table.field.one();
        for (std::size_t k = 0; k < table.traces.size(); ++k) {
            EXPECT_EQ(table.traces[k], absolute_trace(table.field, cur));
            cur = table.field.mul(cur, table.generator);
        }
    }
}
