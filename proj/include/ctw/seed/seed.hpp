#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctw/exact/index_partition.hpp"
#include "ctw/exact/matrix.hpp"
#include "ctw/exact/permutation.hpp"
#include "ctw/report.hpp"

namespace ctw {

/// Exchange matrix B, skew-symmetrizers d, vertex partition.
/// Invariant (checked by `validate`): B integral, b_ij/d_i = -b_ji/d_j, d_i > 0.
struct Seed {
    IndexPartition partition;
    RatMatrix B;
    std::vector<std::int64_t> d;
    std::vector<std::string> labels;

    /// Builds and validates; throws ValidationError on violation.
    static Seed make(const RatMatrix& B, std::vector<std::int64_t> d, const IndexList& frozen,
                     std::vector<std::string> labels = {});

    Index n() const { return partition.n(); }
    const IndexList& unfrozen() const { return partition.unfrozen(); }
    const IndexList& frozen() const { return partition.frozen(); }

    /// B̃: all rows, unfrozen columns.
    RatMatrix B_tilde() const;
    /// D = diag(1/d_i)
    RatMatrix D() const;
    RatMatrix D_inv() const;
    std::int64_t d_lcm() const;
    std::string label(Index i) const;

    void require_unfrozen(Index k, const char* module) const;

    friend bool operator==(const Seed& a, const Seed& b) {
        return a.partition == b.partition && a.B == b.B && a.d == b.d;
    }
};

Report validate(const Seed& seed);

struct SymmetrizerResult {
    bool symmetrizable = false;
    bool unique = true;  // false when B is disconnected (per-component scaling free)
    std::vector<std::int64_t> d;
};

/// Minimal positive integer d with b_ij/d_i = -b_ji/d_j.
SymmetrizerResult find_skew_symmetrizer(const RatMatrix& B);

/// Raw rule with explicit sign; mutate_B checks both signs agree.
RatMatrix mutate_B_matrix(const RatMatrix& B, Index k, int eps);
Seed mutate_B(const Seed& seed, Index k);
Seed mutate_B(const Seed& seed, const IndexList& seq);

/// p*(n) = B·n. The restricted variant demands n supported on unfrozen indices.
RatVec p_star(const Seed& seed, const RatVec& n);
RatVec p_star_full(const Seed& seed, const RatVec& n);

/// σ on all of I, identity on frozen indices.
bool is_similarity(const Seed& t, const Seed& tp, const Permutation& sigma);
std::vector<Permutation> find_similarities(const Seed& t, const Seed& tp);

struct FullRankInfo {
    Index rank = 0;
    bool is_full_rank = false;
    bool unimodular_minor = false;
    IndexList witness_rows;  // J with det B̃_J = ±1 (or any invertible J when none is unimodular)
};
FullRankInfo full_rank_check(const Seed& seed);

/// Connected components of the graph {i~j : b_ij ≠ 0}.
std::vector<IndexList> components(const RatMatrix& B);

}  // namespace ctw
