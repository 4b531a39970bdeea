#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctw/laurent/exp_vec.hpp"

namespace ctw {

/// Sparse Laurent polynomial over Q in `nvars` variables. Exponents may be
/// rational; internally every exponent is numerator/den() with one shared den.
class LaurentPoly {
public:
    struct Term {
        std::vector<std::int64_t> e;  // numerators over den()
        Rat c;
    };

    explicit LaurentPoly(Index nvars = 0) : nvars_(nvars) {}
    static LaurentPoly constant(Index nvars, const Rat& c);
    static LaurentPoly monomial(Index nvars, const ExpVec& e, const Rat& c = Rat(1));
    static LaurentPoly variable(Index nvars, Index i);
    /// From (exponent, coefficient) pairs; duplicates are summed.
    static LaurentPoly from_terms(Index nvars, const std::vector<std::pair<ExpVec, Rat>>& terms);

    Index nvars() const { return nvars_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    Index num_terms() const { return terms_.size(); }
    const std::vector<Term>& raw_terms() const { return terms_; }

    ExpVec exponent(Index t) const { return ExpVec(terms_[t].e, den_); }
    const Rat& coeff(Index t) const { return terms_[t].c; }
    std::vector<std::pair<ExpVec, Rat>> terms() const;
    /// Coefficient at e (zero if absent).
    Rat coefficient(const ExpVec& e) const;
    Rat constant_term() const { return coefficient(ExpVec(nvars_)); }

    /// Componentwise minimum of all exponents. Requires nonzero.
    ExpVec min_exponent() const;
    /// Lexicographically largest / smallest exponent term index.
    Index lead_index() const { return terms_.size() - 1; }

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly scaled(const Rat& c) const;
    /// Multiplies by X^e.
    LaurentPoly shifted(const ExpVec& e) const;
    LaurentPoly pow(std::int64_t k) const;  // k >= 0, or k < 0 for monomials

    /// Exponent-level linear map X^n -> X^{M n} into `M.rows()` variables.
    LaurentPoly monomial_map(const RatMatrix& M) const;
    /// Euler operator X_i ∂/∂X_i.
    LaurentPoly euler(Index i) const;
    /// Evaluation at a point; requires integral exponents. nullopt on 0^(-k).
    std::optional<Rat> evaluate(const RatVec& point) const;

    std::string str(const std::string& var = "X") const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.nvars_ != b.nvars_ || a.den_ != b.den_ || a.terms_.size() != b.terms_.size()) return false;
        for (Index i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].e != b.terms_[i].e || a.terms_[i].c != b.terms_[i].c) return false;
        return true;
    }
    /// Total order used for canonical factor lists.
    friend bool structurally_less(const LaurentPoly& a, const LaurentPoly& b);

    /// Multiplication kernels: serial reference and OpenMP-parallel.
    friend LaurentPoly mul_serial(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly mul_parallel(const LaurentPoly& a, const LaurentPoly& b);

private:
    friend std::optional<LaurentPoly> exact_divide(const LaurentPoly& f, const LaurentPoly& g);
    LaurentPoly with_den(std::int64_t den) const;
    void normalize();  // sort, merge, drop zeros, minimize den
    static LaurentPoly accumulate(Index nvars, std::int64_t den, std::vector<Term>&& raw);

    Index nvars_ = 0;
    std::int64_t den_ = 1;
    std::vector<Term> terms_;  // ascending lexicographic by e
};

/// q with q·g = f, or nullopt.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& f, const LaurentPoly& g);

/// Term-count threshold above which operator* uses the parallel kernel.
void set_parallel_mul_threshold(std::size_t pairs);
std::size_t parallel_mul_threshold();

}  // namespace ctw
