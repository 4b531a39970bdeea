#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctw/exact/linear_solve.hpp"
#include "ctw/laurent/rational_expr.hpp"
#include "ctw/report.hpp"
#include "ctw/seed/seed.hpp"
#include "ctw/side.hpp"

namespace ctw {

/// Linear map between the lattices of two similar seeds; columns of V are
/// images of the source basis. Side A: M(source) -> M(target), side X:
/// N(source) -> N(target). sigma maps source indices to target indices.
struct VariationMap {
    Side side = Side::A;
    Seed source, target;
    Permutation sigma;
    RatMatrix V;

    RatMatrix block(const IndexList& rows, const IndexList& cols) const { return V.sub(rows, cols); }
    Integer denominator() const { return V.common_denominator(); }
};

/// particular + Σ p_a basis_a; parameter a equals entry coords[a] of V.
struct VariationFamily {
    VariationMap particular;
    std::vector<RatMatrix> basis;
    std::vector<std::string> names;
    std::vector<std::pair<Index, Index>> coords;

    Index dim() const { return basis.size(); }
    VariationMap member(const RatVec& params) const;
    /// Entry (i,j) of V as a linear polynomial in the parameters.
    LaurentPoly entry_poly(Index i, Index j) const;
    std::optional<Index> param_index(const std::string& name) const;
};

/// Canonical names: λ μ α β γ ν for dim ≤ 6 (ASCII aliases accepted on input), else p1, p2, ...
std::vector<std::string> parameter_names(Index dim);
std::string ascii_alias(const std::string& name);

/// var^M: M(t) -> M(t') with uf rows fixed by σ and X B̃ = (B' P_σ)_{f,uf}.
/// Throws InfeasibleError when σ is not a similarity or the system is inconsistent.
VariationFamily solve_M_variation(const Seed& t, const Seed& tp, const Permutation& sigma);

/// var^N: N(a) -> N(b) with V e_k = e_{τk} on unfrozen k and
/// ω_b(V e_i, V e_k) = ω_a(e_i, e_k) for all i, unfrozen k.
VariationFamily solve_N_variation(const Seed& a, const Seed& b, const Permutation& tau);

/// Subfamily with Vᵀ F_target V = F_source.
struct PoissonFilter {
    enum class Status { Linear, Nonlinear, Empty };
    Status status = Status::Empty;
    std::optional<VariationFamily> family;
};
PoissonFilter poisson_subfamily(const VariationFamily& fam, const RatMatrix& form_source, const RatMatrix& form_target);
/// X-side shortcut using ω of both seeds.
PoissonFilter poisson_subfamily(const VariationFamily& fam);

/// det V(p) as a polynomial in the parameters; lattice bijections need det = ±1.
LaurentPoly det_polynomial(const VariationFamily& fam);

/// Integral member search, with the unimodular witness rows J when available.
struct IntegralRefinement {
    IntegerSolution solution;
    std::optional<VariationMap> member;
    IndexList witness_rows;
};
IntegralRefinement integral_member(const VariationFamily& fam);

/// Shape and defining constraints.
Report is_variation(const VariationMap& map);
/// Vᵀ F_target V = F_source.
bool is_poisson(const VariationMap& map, const RatMatrix& form_source, const RatMatrix& form_target);
/// X-side with ω of the seeds.
bool is_poisson(const VariationMap& map);

/// M-side map -> N(target) -> N(source), D_s⁻¹ Vᵀ D_t.
VariationMap pullback(const VariationMap& m);
/// Target -> source with V⁻¹ and σ⁻¹. Throws when not invertible.
VariationMap inverse(const VariationMap& map);
bool is_lattice_bijection(const VariationMap& map);

/// ψ_{b,b'}⁻¹ V ψ_{a,a'} between a' = μ_j a and b' = μ_{σj} b. Asserts the
/// result is a variation map and that Poisson-ness and invertibility persist.
VariationMap transport(const VariationMap& map, Index j);
/// var_a ∘ μ_j*(a) = μ_{σj}*(b) ∘ var_{a'} on all generators.
Report transport_square_check(const VariationMap& map, Index j);

/// Monomial substitution X^n -> X^{V n} from source to target coordinates.
RationalExpr apply_variation(const VariationMap& map, const RationalExpr& expr);

}  // namespace ctw
