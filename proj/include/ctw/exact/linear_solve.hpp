#pragma once

#include <optional>
#include <vector>

#include "ctw/exact/matrix.hpp"

namespace ctw {

/// Solution set of X·A = Y: particular + span(nullspace_basis).
struct AffineFamily {
    RatMatrix particular;
    std::vector<RatMatrix> nullspace_basis;
    Index rank_A = 0;  // rank of the coefficient matrix

    Index dim() const { return nullspace_basis.size(); }
    /// particular + Σ c_i basis_i
    RatMatrix member(const RatVec& coeffs) const;
};

/// Solves X·A = Y for X, row by row. nullopt when inconsistent.
std::optional<AffineFamily> solve_affine(const RatMatrix& A, const RatMatrix& Y);

struct IntegerSolution {
    std::optional<RatMatrix> integral;  // an all-integer member, if any
    Integer min_denominator = 1;        // least r such that a member lies in (1/r)Z
    RatMatrix best;                     // member realizing min_denominator
};

/// Searches the affine family for integral members via Hermite normal form.
IntegerSolution integer_solution(const RatMatrix& particular, const std::vector<RatMatrix>& basis);

/// Integer z with M z = b, or nullopt. M, b may be rational.
std::optional<std::vector<Integer>> solve_integer_system(const RatMatrix& M, const RatVec& b);

/// Column Hermite form: M·U = H lower-triangular style echelon, U unimodular.
struct HermiteResult {
    RatMatrix H;  // integer entries
    RatMatrix U;  // unimodular integer matrix
    Index rank = 0;
};
HermiteResult column_hermite(const RatMatrix& M);

}  // namespace ctw
