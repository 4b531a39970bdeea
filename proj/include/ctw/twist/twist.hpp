#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctw/mutation/mutation.hpp"
#include "ctw/poisson/poisson.hpp"
#include "ctw/variation/variation.hpp"

namespace ctw {

enum class TwistKind { DT, Principal, Custom };
std::string to_string(TwistKind k);

/// Endomorphism of F^side(base).
/// Default order: f -> μ*(var f), var: base -> μ_seq(base).
/// mutation_first: f -> var(μ*_seq f), with μ_seq(var.source) = base and var.target = base.
struct TwistSpec {
    TwistKind kind = TwistKind::Custom;
    Side side = Side::A;
    Seed base;
    IndexList seq;
    Permutation sigma;
    VariationMap variation;
    bool mutation_first = false;
};

/// Composes var with the mutation pull-back along seq.
TwistSpec make_twist(const Seed& base, const IndexList& seq, const VariationMap& var, TwistKind kind = TwistKind::Custom);

RationalExpr apply_twist(const TwistSpec& spec, const RationalExpr& expr);
/// Throws InfeasibleError for a singular variation.
TwistSpec invert_twist(const TwistSpec& spec);

struct DTTwist {
    TwistSpec twA, twX;
    T1Witness witness;
    std::optional<LambdaForm> lambda;  // on the base, when it has full rank
};
/// var^M = -F(t[1])⁻¹, var^N = -E(t[1])⁻¹. Throws NotFoundError without t[1].
DTTwist build_dt_twist(const Seed& t, Index max_depth = 12);

/// B = [[B_uf, -Id], [Id, 0]], d repeated on the frozen copy.
Seed make_principal(const RatMatrix& B_uf, const std::vector<std::int64_t>& d_uf);

struct PrincipalTwist {
    TwistSpec twA, twX;
    RatMatrix C, G;
    LambdaForm lambda;
    std::vector<RatMatrix> composites;  // var^M·B(t0) and B(t)·var^N
};
/// Principal-coefficient twist along seq. ValidationError on a non-principal
/// shape, InfeasibleError when μ_seq(t0) is not similar to t0.
PrincipalTwist build_principal_twist(const Seed& t0, const IndexList& seq);

/// p*: X^n -> A^{B n} on the same seed.
RationalExpr apply_p_star(const Seed& seed, const RationalExpr& x_expr);

struct VerifyOptions {
    bool poisson = true;
    std::optional<RatMatrix> bracket;          // required for the A-side Poisson check
    std::optional<TwistSpec> p_partner;        // A-side twist for p*∘tw^X = tw^A∘p*
    bool homomorphism = true;
    std::vector<RationalExpr> basis_family;    // finite family for the permutation check
    unsigned random_pairs = 8;
    unsigned rng_seed = 1;
};

Report verify_twist(const TwistSpec& spec, const VerifyOptions& opts);

/// p* ∘ tw^X = tw^A ∘ p* on X-generators.
Report p_commutation_check(const TwistSpec& twA, const TwistSpec& twX);

/// Image of each family member as (index, frozen monomial factor), if found.
struct BasisImage {
    std::optional<Index> index;
    RationalExpr factor;
};
std::vector<BasisImage> basis_images(const TwistSpec& spec, const std::vector<RationalExpr>& family);

}  // namespace ctw
