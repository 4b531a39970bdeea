#pragma once

#include <optional>
#include <vector>

#include "ctw/laurent/pointed.hpp"
#include "ctw/laurent/rational_expr.hpp"
#include "ctw/report.hpp"
#include "ctw/seed/seed.hpp"
#include "ctw/side.hpp"

namespace ctw {

/// P^N_{k,ε}(t) (side X, row k modified) or P^M_{k,ε}(t) (side A, column k modified).
struct TransitionMatrix {
    RatMatrix P;
    Side side = Side::X;
    Index k = 0;
    int eps = 1;
};

TransitionMatrix trans_matrix(const Seed& seed, Index k, int eps, Side side);

/// Involutions, sign flip across the mutation, D P^M D⁻¹ = (P^N)^{-T},
/// B' = P^M B P^N, and (if Λ is given) Λ' = (P^M)ᵀ Λ P^M compatible with B'.
Report verify_matrix_identities(const Seed& seed, Index k, int eps,
                                const std::optional<RatMatrix>& Lambda = std::nullopt);

/// Images in t-coordinates of the generators of μ_k t.
std::vector<RationalExpr> mutation_images(const Seed& t, Index k, Side side, int eps = 1);

/// (μ_k)*: expression over μ_k t  ->  expression over t.
RationalExpr mutate_expr(const RationalExpr& expr, const Seed& t, Index k, Side side, int eps = 1);

/// (μ_{k_1})* ∘ ... ∘ (μ_{k_r})*: expression over the endpoint -> expression over t0.
/// `seq` is in application order.
RationalExpr pull_back(const RationalExpr& expr, const Seed& t0, const IndexList& seq, Side side);
/// Inverse of pull_back: expression over t0 -> expression over the endpoint.
RationalExpr push_forward(const RationalExpr& expr, const Seed& t0, const IndexList& seq, Side side);

/// ψ_{k,ε}: monomial part, X'^n -> X^{P n}.
RationalExpr apply_psi(const RationalExpr& expr, const Seed& t, Index k, int eps, Side side);
/// ρ_{k,ε}: automorphism of the fraction field of t (or its inverse).
RationalExpr apply_rho(const RationalExpr& expr, const Seed& t, Index k, int eps, Side side, bool inverse = false);

/// μ* = ρ∘ψ on every generator, and ρ_{k,ε}∘ψ = ψ∘ρ_{k,-ε}(t')⁻¹.
Report hamiltonian_decompose_check(const Seed& seed, Index k, int eps, Side side);

struct TrajectoryStep {
    Index k = 0;
    int eps = 1;
};

struct SeedTrajectory {
    std::vector<Seed> seeds;  // t_0, ..., t_r
    std::vector<TrajectoryStep> steps;
    std::vector<RatMatrix> E, F;  // E(t_s), F(t_s), s = 0..r

    const Seed& initial() const { return seeds.front(); }
    const Seed& final_seed() const { return seeds.back(); }
    const RatMatrix& E_final() const { return E.back(); }
    const RatMatrix& F_final() const { return F.back(); }
    RatMatrix C(Index s) const;
    RatMatrix G(Index s) const;
    IndexList sequence() const;
};

/// Canonical signs; asserts sign coherence and EᵀDF = D at every step.
SeedTrajectory run_trajectory(const Seed& t0, const IndexList& seq);

/// Sign of a sign-coherent vector (+1/-1), 0 if zero, nullopt if mixed.
std::optional<int> coherent_sign(const RatVec& v);

struct ClusterExpansion {
    RationalExpr expr;
    ExpVec degree;
    std::optional<PointedDecomposition> pointed;  // side A, when B̃ has full rank
    std::optional<RatioDecomposition> ratio;      // side X
};

/// All cluster variables of the endpoint, in t0-coordinates.
/// Side A: iterated exchange relations with exact division (Laurent phenomenon asserted).
std::vector<RationalExpr> cluster_in_initial(const Seed& t0, const IndexList& seq, Side side);

ClusterExpansion expand_cluster_variable(const Seed& t0, const IndexList& seq, Index i, Side side);

struct T1Witness {
    IndexList seq;
    Permutation sigma;  // on all of I, identity on frozen
    RatMatrix C;
    Seed t1;
    std::size_t explored = 0;
};

struct T1Search {
    std::optional<T1Witness> witness;
    std::size_t explored = 0;
    bool truncated = false;  // node cap reached before the depth limit
};

/// BFS for t[1] with C(t[1]) = -P_{σ⁻¹}. The parallel variant expands each
/// frontier concurrently and merges in frontier order, so both agree exactly.
T1Search find_t1(const Seed& t0, Index max_depth = 12, bool parallel = true, std::size_t max_nodes = 200000);
T1Search find_t1_serial(const Seed& t0, Index max_depth = 12, std::size_t max_nodes = 200000);

}  // namespace ctw
