#include <gtest/gtest.h>

#include "ctw/error.hpp"
#include "ctw/seed/seed.hpp"
#include "support/fixtures.hpp"

using namespace ctw;
using namespace ctw::testing;

namespace {

int sgn(const Rat& r) { return r.sign(); }

// b'_ij = -b_ij if k in {i,j}, else b_ij + sgn(b_ik)[b_ik b_kj]_+.
RatMatrix fz_mutation(const RatMatrix& B, Index k) {
    RatMatrix out = B;
    for (Index i = 0; i < B.rows(); ++i)
        for (Index j = 0; j < B.cols(); ++j) {
            if (i == k || j == k) out(i, j) = -B(i, j);
            else out(i, j) = B(i, j) + Rat(sgn(B(i, k))) * (B(i, k) * B(k, j)).pos();
        }
    return out;
}

}  // namespace

TEST(Seed, ValidationRejectsBadInput) {
    EXPECT_THROW(Seed::make({{0, 1}, {1, 0}}, {1, 1}, {}), ValidationError);
    EXPECT_THROW(Seed::make({{0, 1}, {-1, 0}}, {1, 0}, {}), ValidationError);
    EXPECT_THROW(Seed::make({{0, 1}, {-1, 0}}, {1, 1, 1}, {}), ValidationError);
    RatMatrix half{{0, Rat::parse("1/2")}, {Rat::parse("-1/2"), 0}};
    EXPECT_THROW(Seed::make(half, {1, 1}, {}), ValidationError);
    Seed s = a1_seed();
    s.B(0, 1) = Rat(2);
    Report r = validate(s);
    EXPECT_FALSE(r.ok());
    ASSERT_NE(r.first_failure(), nullptr);
    EXPECT_NE(r.first_failure()->detail.find("(1,2)"), std::string::npos) << r.summary();
}

TEST(Seed, SkewSymmetrizableWithD) {
    Seed s = Seed::make({{0, 1}, {-2, 0}}, {1, 2}, {});
    EXPECT_TRUE(validate(s).ok());
    auto sym = find_skew_symmetrizer(s.B);
    EXPECT_TRUE(sym.symmetrizable);
    EXPECT_EQ(sym.d, (std::vector<std::int64_t>{1, 2}));
    EXPECT_FALSE(find_skew_symmetrizer(RatMatrix{{0, 1}, {1, 0}}).symmetrizable);
}

TEST(Seed, SymmetrizerRecoversRandomD) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        Seed s = random_seed(rng, 2 + trial % 4, 0);
        auto sym = find_skew_symmetrizer(s.B);
        ASSERT_TRUE(sym.symmetrizable);
        Seed t = Seed::make(s.B, sym.d, {});
        EXPECT_TRUE(validate(t).ok());
        if (sym.unique) {
            // d is determined up to a scalar on a connected matrix
            Rat ratio = Rat(static_cast<long>(s.d[0])) / Rat(static_cast<long>(sym.d[0]));
            for (Index i = 0; i < s.n(); ++i)
                EXPECT_EQ(Rat(static_cast<long>(sym.d[i])) * ratio, Rat(static_cast<long>(s.d[i])));
        }
    }
}

TEST(Seed, MutationMatchesClassicalFormula) {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        Seed s = random_seed(rng, 2 + trial % 5, trial % 3 == 0 ? 1 : 0);
        for (Index k : s.unfrozen()) {
            Seed m = mutate_B(s, k);
            EXPECT_EQ(m.B, fz_mutation(s.B, k));
            EXPECT_EQ(mutate_B_matrix(s.B, k, 1), mutate_B_matrix(s.B, k, -1));
            EXPECT_EQ(mutate_B(m, k), s);
            EXPECT_TRUE(validate(m).ok());
        }
    }
}

TEST(Seed, GalleryMutations) {
    Seed a1 = a1_seed();
    EXPECT_EQ(mutate_B(a1, 0).B, (RatMatrix{{0, -1}, {1, 0}}));
    Seed dg = digon_seed();
    EXPECT_EQ(mutate_B(dg, IndexList{3, 1}).B, -dg.B);
    EXPECT_THROW(mutate_B(a1, 1), ValidationError);
}

TEST(Seed, PStar) {
    EXPECT_EQ(p_star(a1_seed(), {Rat(1), Rat(0)}), (RatVec{Rat(0), Rat(-1)}));
    EXPECT_EQ(p_star(sl3_seed(), {Rat(1), Rat(0), Rat(0)}), (RatVec{Rat(0), Rat(1), Rat(-1)}));
    EXPECT_THROW(p_star(a1_seed(), {Rat(0), Rat(1)}), ValidationError);
    EXPECT_EQ(p_star_full(a1_seed(), {Rat(0), Rat(1)}), (RatVec{Rat(1), Rat(0)}));
}

TEST(Seed, Similarities) {
    auto sims = find_similarities(a1_seed(), a1_seed());
    ASSERT_EQ(sims.size(), 1u);
    EXPECT_TRUE(sims[0].is_identity());
    Seed dg = digon_seed();
    Seed dgp = mutate_B(dg, IndexList{3, 1});
    auto ds = find_similarities(dg, dgp);
    bool has_id = false;
    for (const auto& p : ds) has_id = has_id || p.is_identity();
    EXPECT_TRUE(has_id);
    Seed a2 = a2_seed();
    Seed a2m = mutate_B(a2, 0);
    auto t = find_similarities(a2, a2m);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0](0), 1u);
}

TEST(Seed, FullRank) {
    auto a = full_rank_check(a1_seed());
    EXPECT_TRUE(a.is_full_rank);
    EXPECT_TRUE(a.unimodular_minor);
    EXPECT_EQ(a.witness_rows, (IndexList{1}));
    auto s = full_rank_check(sl3_seed());
    EXPECT_TRUE(s.is_full_rank);
    // the two B̃ columns of the digon are negatives of each other
    auto d = full_rank_check(digon_seed());
    EXPECT_EQ(d.rank, 1u);
    EXPECT_FALSE(d.is_full_rank);
}

TEST(Seed, Components) {
    auto c = components(RatMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], (IndexList{0, 1}));
}
