#pragma once

#include <optional>

#include "ctw/laurent/rational_expr.hpp"
#include "ctw/seed/seed.hpp"
#include "ctw/side.hpp"

namespace ctw {

/// f = X^degree · F(Z) with Z_k -> A^{p*e_k} (side A) or Z_k -> X_k (side X).
struct PointedDecomposition {
    ExpVec degree;
    LaurentPoly f_poly;  // in |I_uf| variables Z_k, constant term 1
};

/// Precomputed data for the A-side dominance order of one seed.
class DominanceOrder {
public:
    /// Throws ValidationError when B̃ is not of full rank (order undecidable).
    explicit DominanceOrder(const Seed& seed);
    /// n with m' - m = B̃ n, if rational solution exists.
    std::optional<RatVec> solve(const ExpVec& mp, const ExpVec& m) const;
    bool leq(const ExpVec& mp, const ExpVec& m) const;
    /// Linear functional strictly decreasing along every p*e_k.
    Rat height(const ExpVec& m) const;
    const Seed& seed() const { return seed_; }

private:
    Seed seed_;
    RatMatrix Bt_;
    IndexList rows_;
    RatMatrix BJinv_;
    RatVec w_;
};

/// m' ⪯ m on the A-side (m' = m + B̃ n, n ≥ 0 integral).
bool dominance_leq(const ExpVec& mp, const ExpVec& m, const Seed& seed);
/// X-side: n' = n + e with e ≥ 0 supported on unfrozen indices.
bool dominance_leq_x(const ExpVec& np, const ExpVec& n, const Seed& seed);

std::optional<PointedDecomposition> pointed_decompose(const LaurentPoly& f, const Seed& seed, Side side);

/// X-side ratio X^n · P(X)/Q(X), P and Q polynomials in unfrozen X with constant term 1.
struct RatioDecomposition {
    ExpVec degree;
    LaurentPoly P, Q;  // in |I_uf| variables
};
std::optional<RatioDecomposition> ratio_decompose(const RationalExpr& f, const Seed& seed);

/// Re-substitutes Z_k (A: A^{p*e_k}, X: X_k) and multiplies by X^degree.
LaurentPoly recompose(const PointedDecomposition& pd, const Seed& seed, Side side);

}  // namespace ctw
