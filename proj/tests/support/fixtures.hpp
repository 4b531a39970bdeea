#pragma once

#include <random>

#include "ctw/seed/seed.hpp"

namespace ctw::testing {

inline Seed a1_seed() { return Seed::make({{0, 1}, {-1, 0}}, {1, 1}, {1}); }

inline Seed sl3_seed() { return Seed::make({{0, -1, 1}, {1, 0, 0}, {-1, 0, 0}}, {1, 1, 1}, {1, 2}); }

inline Seed digon_seed() {
    return Seed::make({{0, -1, 0, 1}, {1, 0, -1, 0}, {0, 1, 0, -1}, {-1, 0, 1, 0}}, {1, 1, 1, 1}, {0, 2});
}

inline Seed a2_seed() { return Seed::make({{0, 1}, {-1, 0}}, {1, 1}, {}); }

/// b_ij = d_i k_ij with K skew; entries kept small.
inline Seed random_seed(std::mt19937& rng, Index n, Index n_frozen, bool unit_d = false, int bound = 2) {
    std::uniform_int_distribution<int> ent(-bound, bound), dd(1, 2);
    std::vector<std::int64_t> d(n, 1);
    if (!unit_d)
        for (auto& x : d) x = dd(rng);
    RatMatrix B(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            int k = ent(rng);
            B(i, j) = Rat(static_cast<long>(d[i] * k));
            B(j, i) = Rat(static_cast<long>(-d[j] * k));
        }
    IndexList frozen;
    for (Index i = n - n_frozen; i < n; ++i) frozen.push_back(i);
    return Seed::make(B, d, frozen);
}

/// Rank-2 finite-type unfrozen block (A1xA1, A2, B2) at vertices 0,1 plus
/// random frozen rows; find_t1 always succeeds on these.
inline Seed finite_seed(std::mt19937& rng, Index n_frozen, int bound = 2) {
    std::uniform_int_distribution<int> kind(0, 3), ent(-bound, bound), dd(1, 2);
    Index n = 2 + n_frozen;
    std::vector<std::int64_t> d(n, 1);
    int kd = kind(rng);
    int k01 = kd == 0 ? 0 : ((kd % 2) ? 1 : -1);
    if (kd == 3) d[1] = 2;
    for (Index i = 2; i < n; ++i) d[i] = dd(rng);
    RatMatrix B(n, n);
    auto set = [&](Index i, Index j, int k) {
        B(i, j) = Rat(static_cast<long>(d[i] * k));
        B(j, i) = Rat(static_cast<long>(-d[j] * k));
    };
    set(0, 1, k01);
    for (Index i = 0; i < n; ++i)
        for (Index j = std::max<Index>(i + 1, 2); j < n; ++j) set(i, j, ent(rng));
    IndexList frozen;
    for (Index i = 2; i < n; ++i) frozen.push_back(i);
    return Seed::make(B, d, frozen);
}

inline Rat random_rat(std::mt19937& rng, int bound = 5) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, 4);
    return Rat(Integer(num(rng)), Integer(den(rng)));
}

inline RatVec random_point(std::mt19937& rng, Index n) {
    std::uniform_int_distribution<int> num(1, 9), den(1, 5);
    RatVec p(n);
    for (auto& x : p) x = Rat(Integer(num(rng)), Integer(den(rng)));
    return p;
}

}  // namespace ctw::testing
