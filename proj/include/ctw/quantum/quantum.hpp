#pragma once

#include <map>
#include <string>

#include "ctw/laurent/laurent_poly.hpp"
#include "ctw/report.hpp"
#include "ctw/variation/variation.hpp"

namespace ctw {

/// Laurent polynomial in v with exponents in (1/bound)ℤ.
class VPoly {
public:
    explicit VPoly(std::int64_t bound = 1) : bound_(bound) {}
    static VPoly constant(const Rat& c, std::int64_t bound = 1);
    static VPoly power(const Rat& e, const Rat& c = Rat(1), std::int64_t bound = 1);

    std::int64_t bound() const { return bound_; }
    const std::map<Rat, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    VPoly operator+(const VPoly& o) const;
    VPoly operator-(const VPoly& o) const;
    VPoly operator*(const VPoly& o) const;
    VPoly scaled(const Rat& c) const;
    Rat at_one() const;
    /// lim_{v->1} p(v)/(v-1) via v = w^bound and division by (w-1).
    /// Throws ConsistencyError when p(1) ≠ 0.
    Rat derivative_limit() const;
    std::string str() const;

    friend bool operator==(const VPoly& a, const VPoly& b) { return a.terms_ == b.terms_; }

private:
    void add_term(const Rat& e, const Rat& c);
    std::int64_t bound_;
    std::map<Rat, Rat> terms_;
};

/// Common denominator of the skew form: exponents of v live in (1/L)ℤ.
std::int64_t root_bound(const RatMatrix& K);

/// Σ_n c_n(v) X^n with X^n * X^m = v^{nᵀ K m} X^{n+m};
/// K = -W on the X-side, Λ on the A-side.
class QTorusElem {
public:
    QTorusElem(Index nvars, RatMatrix K);
    static QTorusElem monomial(const RatMatrix& K, const ExpVec& n, const VPoly& c);
    static QTorusElem from_laurent(const RatMatrix& K, const LaurentPoly& f);

    Index nvars() const { return nvars_; }
    const RatMatrix& form() const { return K_; }
    const std::map<ExpVec, VPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    QTorusElem operator+(const QTorusElem& o) const;
    QTorusElem operator-(const QTorusElem& o) const;
    /// Evaluate every coefficient at v = 1.
    LaurentPoly at_one() const;
    /// Coefficientwise lim_{v->1} c(v)/(2(v-1)).
    LaurentPoly half_derivative_limit() const;
    std::string str() const;

    friend bool operator==(const QTorusElem& a, const QTorusElem& b) { return a.K_ == b.K_ && a.terms_ == b.terms_; }

private:
    friend QTorusElem q_mul(const QTorusElem&, const QTorusElem&);
    friend QTorusElem quantum_monomial_map(const RatMatrix&, const QTorusElem&, const RatMatrix&);
    void add_term(const ExpVec& n, const VPoly& c);
    Index nvars_;
    RatMatrix K_;
    std::int64_t bound_;
    std::map<ExpVec, VPoly> terms_;
};

QTorusElem q_mul(const QTorusElem& a, const QTorusElem& b);

/// {X^n, X^m} from the commutator limit, compared with nᵀKm·X^{n+m} and
/// with the classical bracket.
Report poisson_limit_check(const ExpVec& n, const ExpVec& m, const RatMatrix& K);

/// X^n -> X^{V n}, v-linear, landing in the target form.
QTorusElem quantum_monomial_map(const RatMatrix& V, const QTorusElem& a, const RatMatrix& K_target);
QTorusElem quantum_monomial_map(const VariationMap& map, const QTorusElem& a, const RatMatrix& K_target);

/// φ(X^{e_i} * X^{e_j}) = φ(X^{e_i}) * φ(X^{e_j}) on generator pairs.
Report homomorphism_check(const VariationMap& map, const RatMatrix& K_source, const RatMatrix& K_target);

}  // namespace ctw
