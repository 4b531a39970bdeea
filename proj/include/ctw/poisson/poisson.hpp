#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctw/laurent/rational_expr.hpp"
#include "ctw/report.hpp"
#include "ctw/seed/seed.hpp"

namespace ctw {

/// W_ij = ω(e_i, e_j) = b_ji / d_j.
struct OmegaForm {
    RatMatrix W;
};

OmegaForm omega_from_seed(const Seed& seed);

/// Integer skew Λ with (Λ B̃)_{ik} = -δ_{ik} δ_k, δ_k = α / d_k.
struct LambdaForm {
    RatMatrix Lambda;
    std::vector<Rat> delta;  // indexed like seed.unfrozen()
    std::int64_t alpha = 1;
    Index family_dim = 0;  // dimension of the rational solution space for this α
};

/// Throws InfeasibleError when B̃ lacks full rank or no integer Λ exists for
/// the requested α (or for any α = lcm(d)·k, k ≤ max_multiple, when α is unset).
LambdaForm solve_compatible_lambda(const Seed& seed, std::optional<std::int64_t> alpha = std::nullopt,
                                   std::int64_t max_multiple = 64);

Report check_compatible(const RatMatrix& Lambda, const Seed& seed, std::optional<std::int64_t> alpha = std::nullopt);

/// Λ' = (P^M_{k,ε})ᵀ Λ P^M_{k,ε}, checked equal for both ε and compatible with μ_k(seed).
LambdaForm mutate_lambda(const LambdaForm& form, const Seed& seed, Index k);

/// {x_i, x_j} = c_ij x_i x_j extended as a biderivation.
RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, const RatMatrix& c);
/// c = -W on the X-side, c = Λ on the A-side.
inline RatMatrix bracket_matrix(const OmegaForm& w) { return -w.W; }
inline RatMatrix bracket_matrix(const LambdaForm& l) { return l.Lambda; }

/// B̃ᵀ Λ B̃ = -α W_uf and ⟨p* e_i, e_j⟩ = ω(e_i, e_j).
Report check_lambda_omega_link(const LambdaForm& form, const Seed& seed);

}  // namespace ctw
