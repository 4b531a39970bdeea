#include <gtest/gtest.h>

#include "ctw/error.hpp"
#include "ctw/mutation/mutation.hpp"
#include "ctw/poisson/poisson.hpp"
#include "ctw/quantum/quantum.hpp"
#include "support/fixtures.hpp"

using namespace ctw;
using namespace ctw::testing;

namespace {

ExpVec rand_exp(std::mt19937& rng, Index n) {
    std::uniform_int_distribution<int> ex(-3, 3);
    std::vector<std::int64_t> e(n);
    for (auto& x : e) x = ex(rng);
    return ExpVec(e, 1);
}

QTorusElem rand_elem(std::mt19937& rng, const RatMatrix& K) {
    std::uniform_int_distribution<int> c(-2, 2), ve(-2, 2);
    Index n = K.rows();
    QTorusElem r(n, K);
    for (int t = 0; t < 3; ++t)
        r = r + QTorusElem::monomial(K, rand_exp(rng, n), VPoly::power(Rat(ve(rng)), Rat(c(rng)), root_bound(K)));
    return r;
}

RatMatrix xform(const Seed& s) { return bracket_matrix(omega_from_seed(s)); }

}  // namespace

TEST(VPoly, Arithmetic) {
    VPoly a = VPoly::power(Rat(1)) + VPoly::constant(Rat(2));
    VPoly b = VPoly::power(Rat(-1));
    EXPECT_EQ((a * b).terms().size(), 2u);
    EXPECT_EQ((a * b).at_one(), Rat(3));
    EXPECT_THROW(VPoly::power(Rat(1, 2)), ValidationError);
    EXPECT_NO_THROW(VPoly::power(Rat(1, 2), Rat(1), 2));
}

TEST(VPoly, DerivativeLimit) {
    // (v^c - v^-c)/(v-1) -> 2c
    for (int c = -4; c <= 4; ++c) {
        VPoly p = VPoly::power(Rat(c)) - VPoly::power(Rat(-c));
        EXPECT_EQ(p.derivative_limit(), Rat(2 * c));
    }
    VPoly half = VPoly::power(Rat(3, 2), Rat(1), 2) - VPoly::power(Rat(-3, 2), Rat(1), 2);
    EXPECT_EQ(half.derivative_limit(), Rat(3));
    EXPECT_THROW(VPoly::constant(Rat(1)).derivative_limit(), ConsistencyError);
}

TEST(QMul, A1Generators) {
    RatMatrix K = xform(a1_seed());
    auto one = VPoly::constant(Rat(1));
    auto x1 = QTorusElem::monomial(K, ExpVec::unit(2, 0), one);
    auto x2 = QTorusElem::monomial(K, ExpVec::unit(2, 1), one);
    EXPECT_EQ(q_mul(x1, x2), QTorusElem::monomial(K, ExpVec({1, 1}, 1), VPoly::power(Rat(1))));
    EXPECT_EQ(q_mul(x1, x1), QTorusElem::monomial(K, ExpVec({2, 0}, 1), one));
}

TEST(QMul, AssociativeAndClassicalAtOne) {
    std::mt19937 rng(41);
    for (const Seed& s : {a1_seed(), digon_seed(), sl3_seed()}) {
        RatMatrix K = xform(s);
        for (int trial = 0; trial < 10; ++trial) {
            auto a = rand_elem(rng, K), b = rand_elem(rng, K), c = rand_elem(rng, K);
            EXPECT_EQ(q_mul(q_mul(a, b), c), q_mul(a, q_mul(b, c)));
            EXPECT_EQ(q_mul(a, b).at_one(), a.at_one() * b.at_one());
        }
    }
}

TEST(QMul, FractionalForm) {
    RatMatrix K{{0, Rat(1, 2)}, {Rat(-1, 2), 0}};
    EXPECT_EQ(root_bound(K), 2);
    auto one = VPoly::constant(Rat(1), 2);
    auto x1 = QTorusElem::monomial(K, ExpVec::unit(2, 0), one);
    auto x2 = QTorusElem::monomial(K, ExpVec::unit(2, 1), one);
    EXPECT_EQ(q_mul(x1, x2).terms().begin()->second, VPoly::power(Rat(1, 2), Rat(1), 2));
    EXPECT_TRUE(poisson_limit_check(ExpVec({1, 2}, 1), ExpVec({-1, 1}, 1), K).ok());
}

TEST(PoissonLimit, RandomPairs) {
    std::mt19937 rng(43);
    for (const Seed& s : {a1_seed(), digon_seed(), sl3_seed()}) {
        RatMatrix K = xform(s);
        for (int trial = 0; trial < 40; ++trial) {
            ExpVec n = rand_exp(rng, s.n()), m = rand_exp(rng, s.n());
            Report r = poisson_limit_check(n, m, K);
            EXPECT_TRUE(r.ok()) << r.summary();
        }
        ExpVec n = rand_exp(rng, s.n());
        QTorusElem Xn = QTorusElem::monomial(K, n, VPoly::constant(Rat(1)));
        EXPECT_TRUE((q_mul(Xn, Xn) - q_mul(Xn, Xn)).half_derivative_limit().is_zero());
    }
    // A1: coefficient is -ω(n, m)
    RatMatrix W = omega_from_seed(a1_seed()).W;
    ExpVec n({2, -1}, 1), m({1, 3}, 1);
    QTorusElem Xn = QTorusElem::monomial(xform(a1_seed()), n, VPoly::constant(Rat(1)));
    QTorusElem Xm = QTorusElem::monomial(xform(a1_seed()), m, VPoly::constant(Rat(1)));
    Rat omega = Rat(2) * W(0, 0) * Rat(1) + Rat(2) * W(0, 1) * Rat(3) + Rat(-1) * W(1, 0) * Rat(1) + Rat(-1) * W(1, 1) * Rat(3);
    EXPECT_EQ((q_mul(Xn, Xm) - q_mul(Xm, Xn)).half_derivative_limit(), LaurentPoly::monomial(2, n + m, -omega));
}

TEST(PoissonLimit, LambdaSide) {
    Seed s = sl3_seed();
    LambdaForm L = solve_compatible_lambda(s);
    std::mt19937 rng(47);
    for (int trial = 0; trial < 20; ++trial)
        EXPECT_TRUE(poisson_limit_check(rand_exp(rng, 3), rand_exp(rng, 3), bracket_matrix(L)).ok());
}

TEST(QuantumMap, IdentityAndDigonRegimes) {
    Seed t = digon_seed();
    auto w = *find_t1(t).witness;
    auto fam = solve_N_variation(t, w.t1, w.sigma);
    RatMatrix Ks = xform(t), Kt = xform(w.t1);
    VariationMap id{Side::X, t, t, Permutation::identity(4), RatMatrix::identity(4)};
    EXPECT_TRUE(homomorphism_check(id, Ks, Ks).ok());
    EXPECT_TRUE(homomorphism_check(fam.member({1, 1, 0, 0, 0, 0}), Ks, Kt).ok());
    EXPECT_FALSE(homomorphism_check(fam.member({1, 1, 1, 0, 0, 0}), Ks, Kt).ok());
    for (int l = -1; l <= 2; ++l)
        for (int m = -1; m <= 2; ++m)
            for (int a = -1; a <= 2; ++a)
                for (int b = -1; b <= 2; ++b) {
                    auto mem = fam.member({l, m, a, b, a, b});
                    EXPECT_EQ(homomorphism_check(mem, Ks, Kt).ok(), is_poisson(mem));
                    auto skew = fam.member({l, m, a, b, b, b});
                    EXPECT_EQ(homomorphism_check(skew, Ks, Kt).ok(), is_poisson(skew));
                }
}

TEST(QuantumMap, VLinear) {
    std::mt19937 rng(53);
    RatMatrix K = xform(sl3_seed());
    RatMatrix V = RatMatrix::identity(3);
    V(1, 2) = Rat(1);
    auto a = rand_elem(rng, K), b = rand_elem(rng, K);
    EXPECT_EQ(quantum_monomial_map(V, a + b, K), quantum_monomial_map(V, a, K) + quantum_monomial_map(V, b, K));
}
