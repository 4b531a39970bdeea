#include <gtest/gtest.h>

#include "ctw/error.hpp"
#include "ctw/laurent/laurent_poly.hpp"
#include "ctw/laurent/pointed.hpp"
#include "ctw/laurent/rational_expr.hpp"
#include "support/fixtures.hpp"

using namespace ctw;
using namespace ctw::testing;

namespace {

LaurentPoly random_poly(std::mt19937& rng, Index nvars, int terms, int lo = -2, int hi = 2) {
    std::uniform_int_distribution<int> ex(lo, hi);
    std::vector<std::pair<ExpVec, Rat>> t;
    for (int i = 0; i < terms; ++i) {
        std::vector<std::int64_t> e(nvars);
        for (auto& x : e) x = ex(rng);
        Rat c = random_rat(rng);
        if (c.is_zero()) c = Rat(1);
        t.emplace_back(ExpVec(e, 1), c);
    }
    return LaurentPoly::from_terms(nvars, t);
}

Rat ev(const LaurentPoly& p, const RatVec& x) { return *p.evaluate(x); }

}  // namespace

TEST(ExpVec, NormalizesDenominator) {
    ExpVec e({2, 4}, 4);
    EXPECT_EQ(e.den(), 2);
    EXPECT_EQ(e[0], Rat::parse("1/2"));
    EXPECT_FALSE(e.is_integral());
    EXPECT_TRUE((e + ExpVec({1, 0}, 2)).is_integral());
    EXPECT_LT(ExpVec({1, 5}, 1), ExpVec({2, 0}, 1));
}

TEST(LaurentPoly, PrintingIsDescending) {
    LaurentPoly a1 = LaurentPoly::monomial(2, ExpVec({-1, 1}, 1)) + LaurentPoly::monomial(2, ExpVec({-1, 0}, 1));
    EXPECT_EQ(a1.str("A"), "A1^-1*A2 + A1^-1");
    EXPECT_EQ(LaurentPoly(2).str(), "0");
}

TEST(LaurentPoly, ArithmeticAgreesWithEvaluation) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Index n = 1 + trial % 3;
        LaurentPoly f = random_poly(rng, n, 1 + trial % 6), g = random_poly(rng, n, 1 + trial % 4);
        RatVec x = random_point(rng, n);
        EXPECT_EQ(ev(f + g, x), ev(f, x) + ev(g, x));
        EXPECT_EQ(ev(f - g, x), ev(f, x) - ev(g, x));
        EXPECT_EQ(ev(f * g, x), ev(f, x) * ev(g, x));
        EXPECT_EQ(ev(f.pow(3), x), ev(f, x) * ev(f, x) * ev(f, x));
    }
}

TEST(LaurentPoly, SerialAndParallelKernelsAgree) {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 6; ++trial) {
        LaurentPoly f = random_poly(rng, 3, 60, -4, 4), g = random_poly(rng, 3, 70, -4, 4);
        EXPECT_EQ(mul_serial(f, g), mul_parallel(f, g));
    }
}

TEST(LaurentPoly, ExactDivision) {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        Index n = 1 + trial % 3;
        LaurentPoly f = random_poly(rng, n, 1 + trial % 5), g = random_poly(rng, n, 1 + trial % 3);
        auto q = exact_divide(f * g, g);
        ASSERT_TRUE(q.has_value());
        EXPECT_EQ(*q, f);
    }
    LaurentPoly x = LaurentPoly::variable(2, 0), y = LaurentPoly::variable(2, 1);
    LaurentPoly one = LaurentPoly::constant(2, Rat(1));
    EXPECT_FALSE(exact_divide(one + x, one + y).has_value());
    EXPECT_FALSE(exact_divide(one + x * x, one + x).has_value());
}

TEST(LaurentPoly, MonomialMapAndEuler) {
    RatMatrix M{{1, 2}, {0, -1}};
    LaurentPoly f = LaurentPoly::monomial(2, ExpVec({1, 1}, 1)) + LaurentPoly::constant(2, Rat(3));
    LaurentPoly g = f.monomial_map(M);
    EXPECT_EQ(g, LaurentPoly::monomial(2, ExpVec({3, -1}, 1)) + LaurentPoly::constant(2, Rat(3)));
    EXPECT_EQ(f.euler(0), LaurentPoly::monomial(2, ExpVec({1, 1}, 1)));
    LaurentPoly h = LaurentPoly::monomial(1, ExpVec({-3}, 1), Rat(2));
    EXPECT_EQ(h.euler(0), h.scaled(Rat(-3)));
}

TEST(LaurentPoly, RationalExponents) {
    LaurentPoly r = LaurentPoly::monomial(1, ExpVec({1}, 2));
    EXPECT_EQ(r * r, LaurentPoly::variable(1, 0));
    EXPECT_THROW(r.evaluate({Rat(4)}), ValidationError);
}

TEST(RationalExpr, FieldOperationsAgreeWithEvaluation) {
    std::mt19937 rng(34);
    for (int trial = 0; trial < 40; ++trial) {
        Index n = 1 + trial % 3;
        LaurentPoly an = random_poly(rng, n, 2), ad = random_poly(rng, n, 2, 0, 2);
        LaurentPoly bn = random_poly(rng, n, 3), bd = random_poly(rng, n, 2, 0, 1);
        if (an.is_zero() || ad.is_zero() || bn.is_zero() || bd.is_zero()) continue;
        RationalExpr a = RationalExpr(an) / RationalExpr(ad);
        RationalExpr b = RationalExpr(bn) / RationalExpr(bd);
        RatVec x = random_point(rng, n);
        auto av = a.evaluate(x), bv = b.evaluate(x);
        if (!av || !bv || bv->is_zero()) continue;
        EXPECT_EQ(*(a + b).evaluate(x), *av + *bv);
        EXPECT_EQ(*(a - b).evaluate(x), *av - *bv);
        EXPECT_EQ(*(a * b).evaluate(x), *av * *bv);
        EXPECT_EQ(*(a / b).evaluate(x), *av / *bv);
        EXPECT_TRUE((a + b) - b == a);
        EXPECT_TRUE((a * b) / b == a);
    }
}

TEST(RationalExpr, CancellationToLaurent) {
    LaurentPoly x = LaurentPoly::variable(1, 0), one = LaurentPoly::constant(1, Rat(1));
    RationalExpr r = RationalExpr(x * x - one) / RationalExpr(x - one);
    auto lp = r.to_laurent();
    ASSERT_TRUE(lp.has_value());
    EXPECT_EQ(*lp, x + one);
    RationalExpr s = RationalExpr(one) / RationalExpr(one + x);
    EXPECT_FALSE(s.to_laurent().has_value());
    EXPECT_TRUE(RationalExpr::sum({s, s.inverse() * RationalExpr(x).inverse()}) ==
                RationalExpr::sum({s, RationalExpr(x).inverse(), RationalExpr(one)}));
}

TEST(RationalExpr, SubstitutionAndLogEuler) {
    RationalExpr X1 = RationalExpr::variable(2, 0), X2 = RationalExpr::variable(2, 1);
    RationalExpr one = RationalExpr::constant(2, Rat(1));
    RationalExpr f = X1 * X2 / (one + X1);
    RationalExpr g = f.substitute({X2, X1});
    EXPECT_TRUE(g == X1 * X2 / (one + X2));
    // X1 d/dX1 log(X1 X2/(1+X1)) = 1/(1+X1)
    EXPECT_TRUE(f.log_euler(0) == one / (one + X1));
    EXPECT_TRUE(f.log_euler(1) == one);
}

TEST(Pointed, DominanceA1) {
    Seed a1 = a1_seed();
    EXPECT_TRUE(dominance_leq(ExpVec({-1, 0}, 1), ExpVec({-1, 1}, 1), a1));
    EXPECT_FALSE(dominance_leq(ExpVec({-1, 2}, 1), ExpVec({-1, 1}, 1), a1));
    EXPECT_TRUE(dominance_leq_x(ExpVec({1, 1}, 1), ExpVec({0, 1}, 1), a1));
    EXPECT_FALSE(dominance_leq_x(ExpVec({0, 2}, 1), ExpVec({0, 1}, 1), a1));
    EXPECT_THROW(DominanceOrder{digon_seed()}, ValidationError);
}

TEST(Pointed, A1ClusterVariable) {
    Seed a1 = a1_seed();
    LaurentPoly f = LaurentPoly::monomial(2, ExpVec({-1, 1}, 1)) + LaurentPoly::monomial(2, ExpVec({-1, 0}, 1));
    auto pd = pointed_decompose(f, a1, Side::A);
    ASSERT_TRUE(pd.has_value());
    EXPECT_EQ(pd->degree, ExpVec({-1, 1}, 1));
    EXPECT_EQ(pd->f_poly, LaurentPoly::constant(1, Rat(1)) + LaurentPoly::variable(1, 0));
    EXPECT_EQ(recompose(*pd, a1, Side::A), f);
    LaurentPoly bad = f + LaurentPoly::constant(2, Rat(1));
    EXPECT_FALSE(pointed_decompose(bad, a1, Side::A).has_value());
    // 1 + Z + Z^2 is still pointed, at the new top degree
    auto top = pointed_decompose(f + LaurentPoly::monomial(2, ExpVec({-1, 2}, 1)), a1, Side::A);
    ASSERT_TRUE(top.has_value());
    EXPECT_EQ(top->degree, ExpVec({-1, 2}, 1));
}

TEST(Pointed, RatioForm) {
    Seed a1 = a1_seed();
    RationalExpr X1 = RationalExpr::variable(2, 0), X2 = RationalExpr::variable(2, 1);
    RationalExpr one = RationalExpr::constant(2, Rat(1));
    auto rd = ratio_decompose(X2 * X1 / (one + X1), a1);
    ASSERT_TRUE(rd.has_value());
    EXPECT_EQ(rd->degree, ExpVec({1, 1}, 1));
    EXPECT_EQ(rd->P, LaurentPoly::constant(1, Rat(1)));
    EXPECT_EQ(rd->Q, LaurentPoly::constant(1, Rat(1)) + LaurentPoly::variable(1, 0));
}
