#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctw/laurent/laurent_poly.hpp"

namespace ctw {

/// Element of the fraction field, kept in factored form
///     coeff · X^mono · ∏ f_a^{e_a}
/// where each f_a is a non-monomial polynomial with componentwise-minimal
/// exponent 0 and a distinguished coefficient equal to 1 (the constant term
/// when present). No multivariate gcd is ever taken: sums are reduced only by
/// trial division against factors already present.
class RationalExpr {
public:
    using Factor = std::pair<LaurentPoly, std::int64_t>;

    explicit RationalExpr(Index nvars = 0) : nvars_(nvars), mono_(nvars) {}
    RationalExpr(const LaurentPoly& p);  // NOLINT: implicit lift is convenient
    static RationalExpr constant(Index nvars, const Rat& c);
    static RationalExpr monomial(Index nvars, const ExpVec& e, const Rat& c = Rat(1));
    static RationalExpr variable(Index nvars, Index i);
    static RationalExpr ratio(const LaurentPoly& num, const LaurentPoly& den);

    Index nvars() const { return nvars_; }
    bool is_zero() const { return coeff_.is_zero(); }
    bool is_monomial() const { return !is_zero() && factors_.empty(); }
    bool is_laurent() const;
    const Rat& coeff() const { return coeff_; }
    const ExpVec& mono() const { return mono_; }
    const std::vector<Factor>& factors() const { return factors_; }

    RationalExpr operator*(const RationalExpr& o) const;
    RationalExpr operator/(const RationalExpr& o) const;
    RationalExpr operator+(const RationalExpr& o) const;
    RationalExpr operator-(const RationalExpr& o) const;
    RationalExpr operator-() const;
    RationalExpr inverse() const;
    RationalExpr pow(std::int64_t k) const;
    /// Rational powers are defined only for monomials with coefficient 1.
    RationalExpr pow(const Rat& k) const;

    static RationalExpr sum(const std::vector<RationalExpr>& terms);

    /// Expanded numerator (Laurent) and denominator (polynomial).
    LaurentPoly num() const;
    LaurentPoly den() const;
    /// Laurent polynomial if the denominator divides out, else nullopt.
    std::optional<LaurentPoly> to_laurent() const;

    /// Generator substitution X_i -> images[i].
    RationalExpr substitute(const std::vector<RationalExpr>& images) const;
    /// X^n -> X^{M n}.
    RationalExpr monomial_map(const RatMatrix& M) const;
    /// Logarithmic Euler derivative (X_i ∂_i f)/f.
    RationalExpr log_euler(Index i) const;
    std::optional<Rat> evaluate(const RatVec& point) const;

    std::string str(const std::string& var = "X") const;

    /// Exact equality (cross-multiplied when the factored forms differ).
    friend bool operator==(const RationalExpr& a, const RationalExpr& b);

private:
    void add_factor(const LaurentPoly& f, std::int64_t e);
    void absorb_poly(const LaurentPoly& p, std::int64_t e);
    void canonicalize();

    Index nvars_ = 0;
    Rat coeff_;
    ExpVec mono_;
    std::vector<Factor> factors_;
};

/// Splits a nonzero polynomial into c·X^m·f with f normalized (or f = 1).
struct NormalizedPoly {
    Rat c;
    ExpVec m;
    LaurentPoly f;  // constant 1 when the input is a monomial
};
NormalizedPoly normalize_poly(const LaurentPoly& p);

}  // namespace ctw
