#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace newton_forge;
using nf_test::to_matrix;

namespace {

ExponentMatrix mat(const std::vector<std::vector<long long>>& rows) { return ExponentMatrix(to_matrix(rows)); }

IntVector vec(std::initializer_list<long long> xs) { return IntVector(xs.begin(), xs.end()); }

RationalVector rvec(std::initializer_list<std::pair<long long, long long>> xs) {
    RationalVector out;
    for (auto [n, d] : xs) out.emplace_back(Integer(n), Integer(d));
    return out;
}

}  // namespace

TEST(DetAdjugate, OneByOne) {
    auto da = det_and_adjugate(to_matrix({{3}}));
    EXPECT_EQ(da.det, 3);
    EXPECT_EQ(da.adjugate, to_matrix({{1}}));
}

TEST(DetAdjugate, Identity) {
    auto da = det_and_adjugate(identity_matrix(2));
    EXPECT_EQ(da.det, 1);
    EXPECT_EQ(da.adjugate, identity_matrix(2));
}

TEST(DetAdjugate, UpperTriangular) {
    auto da = det_and_adjugate(to_matrix({{1, 1}, {0, 2}}));
    EXPECT_EQ(da.det, 2);
    EXPECT_EQ(da.adjugate, to_matrix({{2, -1}, {0, 1}}));
}

TEST(DetAdjugate, SingularThrows) {
    try {
        det_and_adjugate(to_matrix({{1, 2}, {2, 4}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DetZero);
    }
    EXPECT_THROW(ExponentMatrix(to_matrix({{0}})), Error);
}

TEST(DetAdjugate, AdjugateIdentityOnSamples) {
    for (const auto& m : nf_test::sample_matrices(60)) {
        auto da = det_and_adjugate(m);
        IntMatrix scaled = identity_matrix(m.size());
        for (auto& row : scaled)
            for (auto& x : row) x *= da.det;
        EXPECT_EQ(multiply(m, da.adjugate), scaled);
        EXPECT_EQ(multiply(da.adjugate, m), scaled);
    }
}

TEST(Determinant, NeedsPivoting) {
    EXPECT_EQ(determinant(to_matrix({{0, 1}, {1, 0}})), -1);
    EXPECT_EQ(determinant(to_matrix({{0, 0, 1}, {0, 2, 0}, {3, 0, 0}})), -6);
}

TEST(Coords, Examples) {
    EXPECT_EQ(coords(mat({{1, 1}, {0, 2}}), vec({1, 1})), rvec({{1, 2}, {1, 2}}));
    EXPECT_EQ(coords(mat({{3}}), vec({5})), rvec({{5, 3}}));
    EXPECT_EQ(coords(ExponentMatrix(identity_matrix(2)), vec({4, -7})), rvec({{4, 1}, {-7, 1}}));
}

TEST(Coords, RoundTripThroughMatrix) {
    std::mt19937_64 rng(7);
    for (const auto& m : nf_test::sample_matrices(40)) {
        ExponentMatrix j(m);
        std::uniform_int_distribution<long long> num(-20, 20);
        for (int trial = 0; trial < 20; ++trial) {
            RationalVector r;
            for (std::size_t i = 0; i < j.n(); ++i) r.push_back(make_rational(Integer(num(rng)), j.det()));
            RationalVector image = multiply(j.rows(), r);
            bool integral = true;
            for (const auto& x : image) integral = integral && denominator(x) == 1;
            if (!integral) continue;
            IntVector u;
            for (const auto& x : image) u.push_back(numerator(x));
            EXPECT_EQ(coords(j, u), r);
        }
    }
}

TEST(Weight, Examples) {
    EXPECT_EQ(weight(mat({{3}}), vec({2})), Rational(2, 3));
    EXPECT_EQ(weight(mat({{1, 1}, {0, 2}}), vec({1, 1})), Rational(1));
    EXPECT_EQ(weight(mat({{1, 1}, {0, 2}}), vec({0, 0})), Rational(0));
}

TEST(Weight, ConeMembershipIsReported) {
    auto j = mat({{3}});
    auto rep = weight_report(j, vec({-1}));
    EXPECT_FALSE(rep.in_cone);
    EXPECT_EQ(rep.weight, Rational(-1, 3));
    EXPECT_EQ(weight(j, vec({-1}), ConeCheck::Ignored), Rational(-1, 3));
    try {
        weight(j, vec({-1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInCone);
    }
}

TEST(Weight, AdditiveAlongMonoid) {
    for (const auto& m : nf_test::sample_matrices(40)) {
        ExponentMatrix j(m);
        auto domain = fundamental_domain(j);
        for (const auto& pt : domain.points())
            for (std::size_t c = 0; c < j.n(); ++c) {
                IntVector shifted = pt.u;
                IntVector col = j.column(c);
                for (std::size_t i = 0; i < j.n(); ++i) shifted[i] += col[i];
                EXPECT_EQ(weight(j, shifted), weight(j, pt.u) + 1);
            }
    }
}

TEST(DenominatorM, Examples) {
    EXPECT_EQ(denominator_M(mat({{3}})), 3);
    EXPECT_EQ(denominator_M(mat({{1, 1}, {0, 2}})), 1);
    EXPECT_EQ(denominator_M(ExponentMatrix(identity_matrix(3))), 1);
}

TEST(DenominatorM, MinimalOnGeneratingSet) {
    for (const auto& m : nf_test::sample_matrices(80)) {
        ExponentMatrix j(m);
        Integer big_m = denominator_M(j);
        std::vector<Rational> weights;
        auto domain = fundamental_domain(j);
        for (const auto& pt : domain.points()) weights.push_back(pt.weight);
        for (std::size_t c = 0; c < j.n(); ++c) weights.push_back(weight(j, j.column(c)));
        for (const auto& w : weights) EXPECT_EQ(denominator(w * Rational(big_m)), 1);
        for (Integer d = 1; d < big_m; ++d) {
            if (big_m % d != 0) continue;
            bool all_integral = true;
            for (const auto& w : weights) all_integral = all_integral && denominator(w * Rational(d)) == 1;
            EXPECT_FALSE(all_integral) << "proper divisor " << d << " of M works";
        }
    }
}

TEST(SmithNormalForm, Examples) {
    auto one = smith_normal_form(to_matrix({{3}}));
    EXPECT_EQ(one.s, to_matrix({{3}}));
    EXPECT_EQ(one.u, identity_matrix(1));
    EXPECT_EQ(one.v, identity_matrix(1));

    EXPECT_EQ(smith_normal_form(to_matrix({{1, 1}, {0, 2}})).diagonal(), vec({1, 2}));

    auto id = smith_normal_form(identity_matrix(2));
    EXPECT_EQ(id.s, identity_matrix(2));
    EXPECT_EQ(id.u, identity_matrix(2));
    EXPECT_EQ(id.v, identity_matrix(2));
}

TEST(SmithNormalForm, ValidatesOnSamples) {
    auto check = [](const IntMatrix& m) {
        auto snf = smith_normal_form(m);
        EXPECT_EQ(multiply(multiply(snf.u, m), snf.v), snf.s);
        EXPECT_EQ(abs(determinant(snf.u)), 1);
        EXPECT_EQ(abs(determinant(snf.v)), 1);
        auto d = snf.diagonal();
        Integer product = 1;
        for (std::size_t i = 0; i < d.size(); ++i) {
            EXPECT_GT(d[i], 0);
            if (i + 1 < d.size()) { EXPECT_EQ(d[i + 1] % d[i], 0); }
            product *= d[i];
            for (std::size_t k = 0; k < d.size(); ++k)
                if (k != i) { EXPECT_EQ(snf.s[i][k], 0); }
        }
        EXPECT_EQ(product, abs(determinant(m)));
    };
    for (const auto& m : nf_test::sample_matrices(80)) check(m);
    check(to_matrix({{2, 0}, {0, 3}}));  // diag(1, 6) after the divisibility fix-up
    check(to_matrix({{4, 6, 2}, {2, 8, 4}, {6, 2, 10}}));
    EXPECT_EQ(smith_normal_form(to_matrix({{2, 0}, {0, 3}})).diagonal(), vec({1, 6}));
}

TEST(SmithNormalForm, SingularThrows) {
    EXPECT_THROW(smith_normal_form(to_matrix({{1, 2}, {2, 4}})), Error);
}

TEST(Reduce, Examples) {
    auto j = mat({{3}});
    auto a = reduce(j, vec({5}));
    EXPECT_EQ(a.u, vec({2}));
    EXPECT_EQ(a.r, rvec({{2, 3}}));
    EXPECT_EQ(reduce(j, vec({-1})).u, vec({2}));
    auto origin = reduce(mat({{1, 1}, {0, 2}}), vec({0, 0}));
    EXPECT_TRUE(origin.is_origin());
    EXPECT_EQ(origin.weight, 0);
}

TEST(Reduce, IdempotentAndLandsInDomain) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> coord(-25, 25);
    for (const auto& m : nf_test::sample_matrices(60)) {
        ExponentMatrix j(m);
        auto domain = fundamental_domain(j);
        for (int trial = 0; trial < 30; ++trial) {
            IntVector u;
            for (std::size_t i = 0; i < j.n(); ++i) u.push_back(coord(rng));
            auto once = reduce(j, u);
            EXPECT_EQ(reduce(j, once.u).u, once.u);
            EXPECT_TRUE(domain.index_of(once.u).has_value());
            // u - u' lies in the column lattice: integral coordinates
            IntVector diff = u;
            for (std::size_t i = 0; i < u.size(); ++i) diff[i] -= once.u[i];
            for (const auto& r : coords(j, diff)) EXPECT_EQ(denominator(r), 1);
        }
    }
}

TEST(FundamentalDomain, Examples) {
    auto three = fundamental_domain(mat({{3}}));
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(three.points()[0].u, vec({0}));
    EXPECT_EQ(three.points()[1].u, vec({1}));
    EXPECT_EQ(three.points()[2].u, vec({2}));
    EXPECT_EQ(three.points()[1].weight, Rational(1, 3));
    EXPECT_EQ(three.points()[2].weight, Rational(2, 3));

    auto two = fundamental_domain(mat({{1, 1}, {0, 2}}));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two.points()[0].u, vec({0, 0}));
    EXPECT_EQ(two.points()[1].u, vec({1, 1}));
    EXPECT_EQ(two.points()[0].weight, 0);
    EXPECT_EQ(two.points()[1].weight, 1);

    auto id = fundamental_domain(ExponentMatrix(identity_matrix(3)));
    ASSERT_EQ(id.size(), 1u);
    EXPECT_TRUE(id.points()[0].is_origin());
}

TEST(FundamentalDomain, NegativeDeterminantUsesAbsoluteValue) {
    auto j = mat({{-3}});
    auto domain = fundamental_domain(j);
    ASSERT_EQ(domain.size(), 3u);
    EXPECT_EQ(domain.points()[0].u, vec({-2}));
    EXPECT_EQ(domain.points()[1].weight, Rational(1, 3));
}

TEST(FundamentalDomain, InvariantsOnSamples) {
    for (const auto& m : nf_test::sample_matrices(150)) {
        ExponentMatrix j(m);
        auto domain = fundamental_domain(j);
        EXPECT_EQ(Integer(domain.size()), j.abs_det());
        EXPECT_TRUE(domain.points().front().is_origin() ||
                    domain.index_of(IntVector(j.n(), 0)).has_value());
        for (std::size_t i = 0; i < domain.size(); ++i) {
            const auto& pt = domain.points()[i];
            if (i > 0) { EXPECT_LT(domain.points()[i - 1].u, pt.u); }
            Rational sum = 0;
            for (const auto& r : pt.r) {
                EXPECT_GE(r, 0);
                EXPECT_LT(r, 1);
                sum += r;
            }
            EXPECT_EQ(sum, pt.weight);
            EXPECT_GE(pt.weight, 0);
            EXPECT_LT(pt.weight, Rational(Integer(j.n())));
            EXPECT_EQ(multiply(j.rows(), pt.r), RationalVector(pt.u.begin(), pt.u.end()));
        }
    }
}

TEST(FundamentalDomain, LargerDeterminantSkipsGridButStaysExact) {
    ExponentMatrix j(to_matrix({{5, 1, 0}, {0, 7, 2}, {1, 0, 9}}));
    auto domain = fundamental_domain(j);
    EXPECT_EQ(Integer(domain.size()), j.abs_det());
}
