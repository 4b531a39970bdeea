#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>

#include "ctw/error.hpp"
#include "ctw/exact/index_partition.hpp"
#include "ctw/exact/linear_solve.hpp"
#include "ctw/exact/matrix.hpp"
#include "ctw/exact/permutation.hpp"
#include "support/fixtures.hpp"

using namespace ctw;
using ctw::testing::random_rat;

namespace {

RatMatrix random_matrix(std::mt19937& rng, Index r, Index c, int bound = 3) {
    std::uniform_int_distribution<int> ent(-bound, bound);
    RatMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = Rat(ent(rng));
    return m;
}

// Leibniz expansion.
Rat leibniz_det(const RatMatrix& m) {
    Index n = m.rows();
    std::vector<Index> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rat total;
    do {
        int inv = 0;
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        Rat term(inv % 2 ? -1 : 1);
        for (Index i = 0; i < n; ++i) term *= m(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

}  // namespace

TEST(Rat, ParseAndPrint) {
    EXPECT_EQ(Rat::parse("3/6").str(), "1/2");
    EXPECT_EQ(Rat::parse("-4/2").str(), "-2");
    EXPECT_EQ(Rat::parse("7").str(), "7");
    EXPECT_THROW(Rat::parse("1/0"), ValidationError);
    EXPECT_THROW(Rat::parse("x"), ValidationError);
}

TEST(Rat, PositivePartAndRounding) {
    EXPECT_EQ(Rat(-3).pos(), Rat(0));
    EXPECT_EQ(Rat(5).pos(), Rat(5));
    EXPECT_EQ(Rat::parse("-3/2").floor(), Integer(-2));
    EXPECT_EQ(Rat::parse("-3/2").ceil(), Integer(-1));
    EXPECT_EQ(Rat::parse("7/3").floor(), Integer(2));
}

TEST(Rat, CheckedArithmeticOverflows) {
    auto big = std::numeric_limits<std::int64_t>::max();
    EXPECT_THROW(checked_add(big, 1), ConsistencyError);
    EXPECT_THROW(checked_mul(big / 2, 3), ConsistencyError);
    EXPECT_EQ(checked_mul(-4, 5), -20);
    EXPECT_EQ(lcm64(4, 6), 12);
}

TEST(RatMatrix, DeterminantMatchesLeibniz) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        Index n = 1 + trial % 5;
        RatMatrix m = random_matrix(rng, n, n);
        if (trial % 3 == 0) m(0, 0) = random_rat(rng);
        EXPECT_EQ(m.det(), leibniz_det(m)) << m.str();
    }
}

TEST(RatMatrix, InverseAndRank) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        Index n = 1 + trial % 4;
        RatMatrix m = random_matrix(rng, n, n);
        auto inv = m.inverse();
        EXPECT_EQ(inv.has_value(), m.det() != Rat(0));
        if (inv) {
            EXPECT_EQ(m * *inv, RatMatrix::identity(n));
            EXPECT_EQ(*inv * m, RatMatrix::identity(n));
        }
        RatMatrix r = random_matrix(rng, n, n + 2, 1);
        auto ns = right_nullspace(r);
        EXPECT_EQ(r.rank() + ns.size(), r.cols());
        for (const auto& v : ns) {
            RatVec z = r * v;
            for (const auto& x : z) EXPECT_TRUE(x.is_zero());
        }
    }
}

TEST(RatMatrix, SubAndTranspose) {
    RatMatrix m{{1, 2, 3}, {4, 5, 6}};
    EXPECT_EQ(m.transpose().str(), "[[1,4],[2,5],[3,6]]");
    EXPECT_EQ(m.sub({1}, {2, 0}).str(), "[[6,4]]");
    RatMatrix z = RatMatrix::zero(2, 3);
    z.set_sub({0}, {1, 2}, RatMatrix{{7, 8}});
    EXPECT_EQ(z.str(), "[[0,7,8],[0,0,0]]");
}

TEST(LinearSolve, AffineFamilyContainsEverySolution) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        Index ar = 2 + trial % 3, ac = 1 + trial % 3, xr = 1 + trial % 2;
        RatMatrix A = random_matrix(rng, ar, ac);
        RatMatrix X0 = random_matrix(rng, xr, ar);
        RatMatrix Y = X0 * A;
        auto fam = solve_affine(A, Y);
        ASSERT_TRUE(fam.has_value());
        EXPECT_EQ(fam->particular * A, Y);
        EXPECT_EQ(fam->dim(), xr * (ar - A.rank()));
        for (const auto& b : fam->nullspace_basis) EXPECT_TRUE((b * A).is_zero());
        // X0 - particular lies in the span: adding it as a row must not raise the rank.
        Index m = fam->dim();
        RatMatrix span(m + 1, xr * ar);
        auto flat = [&](const RatMatrix& x, Index row) {
            for (Index i = 0; i < xr; ++i)
                for (Index j = 0; j < ar; ++j) span(row, i * ar + j) = x(i, j);
        };
        for (Index i = 0; i < m; ++i) flat(fam->nullspace_basis[i], i);
        flat(X0 - fam->particular, m);
        EXPECT_EQ(span.rank(), m);
    }
}

TEST(LinearSolve, InconsistentSystem) {
    RatMatrix A{{1, 1}, {2, 2}};
    RatMatrix Y{{1, 2}};
    EXPECT_FALSE(solve_affine(A, Y).has_value());
}

TEST(LinearSolve, IntegerSolutionAgreesWithBruteForce) {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        RatMatrix A = random_matrix(rng, 3, 1 + trial % 2, 2);
        RatMatrix Xi = random_matrix(rng, 1, 3, 2);
        RatMatrix Y = Xi * A;
        if (trial % 4 == 0) Y(0, 0) += Rat(1);
        bool brute = false;
        for (int a = -3; a <= 3 && !brute; ++a)
            for (int b = -3; b <= 3 && !brute; ++b)
                for (int c = -3; c <= 3 && !brute; ++c)
                    if (RatMatrix{{a, b, c}} * A == Y) brute = true;
        auto fam = solve_affine(A, Y);
        if (!fam) {
            EXPECT_FALSE(brute);
            continue;
        }
        auto is = integer_solution(fam->particular, fam->nullspace_basis);
        if (brute) EXPECT_TRUE(is.integral.has_value()) << A.str() << " " << Y.str();
        if (is.integral) {
            EXPECT_TRUE(is.integral->is_integer());
            EXPECT_EQ(*is.integral * A, Y);
            EXPECT_EQ(is.min_denominator, Integer(1));
        }
        EXPECT_EQ(is.best * A, Y);
    }
}

TEST(LinearSolve, MinimalDenominator) {
    RatMatrix A{{2}, {4}};
    RatMatrix Y{{1}};
    auto fam = solve_affine(A, Y);
    ASSERT_TRUE(fam);
    auto is = integer_solution(fam->particular, fam->nullspace_basis);
    EXPECT_FALSE(is.integral);
    EXPECT_EQ(is.min_denominator, Integer(2));
    EXPECT_EQ(is.best * A, Y);
}

TEST(LinearSolve, HermiteIsUnimodular) {
    std::mt19937 rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        RatMatrix M = random_matrix(rng, 2 + trial % 2, 3, 4);
        auto h = column_hermite(M);
        EXPECT_EQ(M * h.U, h.H);
        EXPECT_EQ(h.U.det().abs(), Rat(1));
        EXPECT_EQ(h.rank, M.rank());
    }
}

TEST(LinearSolve, IntegerSystem) {
    RatMatrix M{{2, 4}, {0, 3}};
    auto z = solve_integer_system(M, {Rat(6), Rat(3)});
    ASSERT_TRUE(z);
    EXPECT_EQ((*z)[0], Integer(1));
    EXPECT_EQ((*z)[1], Integer(1));
    EXPECT_FALSE(solve_integer_system(M, {Rat(1), Rat(0)}));
}

TEST(Permutation, ComposeInverseAndMatrix) {
    Permutation s({1, 2, 0});
    EXPECT_TRUE(s.compose(s.inverse()).is_identity());
    EXPECT_EQ(s.compose(s)(0), 2u);
    EXPECT_THROW(Permutation({0, 0, 1}), ValidationError);
    RatMatrix H{{1, 2, 3}, {4, 5, 6}};
    RatMatrix HP = H * permutation_matrix(s, 3);
    for (Index k = 0; k < 3; ++k) EXPECT_EQ(HP.col_vec(k), H.col_vec(s(k)));
}

TEST(IndexPartition, Positions) {
    IndexPartition p(4, {2, 0});
    EXPECT_EQ(p.frozen(), (IndexList{0, 2}));
    EXPECT_EQ(p.unfrozen(), (IndexList{1, 3}));
    EXPECT_EQ(p.uf_pos(3), 1u);
    EXPECT_EQ(p.f_pos(2), 1u);
    EXPECT_THROW(IndexPartition(3, {3}), ValidationError);
    EXPECT_THROW(IndexPartition(3, {1, 1}), ValidationError);
}
