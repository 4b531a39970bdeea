#include "ctw/quantum/quantum.hpp"

#include <numeric>

#include "ctw/error.hpp"
#include "ctw/poisson/poisson.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "quantum-torus";

Rat pairing(const ExpVec& n, const RatMatrix& K, const ExpVec& m) {
    Rat s;
    for (Index i = 0; i < n.size(); ++i) {
        Rat ni = n[i];
        if (ni.is_zero()) continue;
        for (Index j = 0; j < m.size(); ++j)
            if (!K(i, j).is_zero()) s += ni * K(i, j) * m[j];
    }
    return s;
}


void require_bound(const Rat& e, std::int64_t bound) {
    Rat scaled = e * Rat(static_cast<long>(bound));
    if (!scaled.is_integer()) throw ValidationError(kMod, "v-exponent " + e.str() + " exceeds the root bound");
}

}  // namespace

VPoly VPoly::constant(const Rat& c, std::int64_t bound) { return power(Rat(0), c, bound); }

VPoly VPoly::power(const Rat& e, const Rat& c, std::int64_t bound) {
    VPoly p(bound);
    p.add_term(e, c);
    return p;
}

void VPoly::add_term(const Rat& e, const Rat& c) {
    if (c.is_zero()) return;
    require_bound(e, bound_);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

VPoly VPoly::operator+(const VPoly& o) const {
    VPoly r(lcm64(bound_, o.bound_));
    r.terms_ = terms_;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

VPoly VPoly::operator-(const VPoly& o) const { return *this + o.scaled(Rat(-1)); }

VPoly VPoly::operator*(const VPoly& o) const {
    VPoly r(lcm64(bound_, o.bound_));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

VPoly VPoly::scaled(const Rat& c) const {
    VPoly r(bound_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
}

Rat VPoly::at_one() const {
    Rat s;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

Rat VPoly::derivative_limit() const {
    if (!at_one().is_zero()) throw ConsistencyError(kMod, "p(1) ≠ 0, no (v-1) factor");
    if (terms_.empty()) return Rat();
    // v = w^L, shift to a polynomial P(w) with nonnegative exponents
    Rat L(static_cast<long>(bound_));
    std::int64_t lo = (terms_.begin()->first * L).to_int64();
    std::int64_t hi = (terms_.rbegin()->first * L).to_int64();
    std::vector<Rat> P(hi - lo + 1);
    for (const auto& [e, c] : terms_) P[(e * L).to_int64() - lo] = c;
    // synthetic division by (w-1): Q has degree hi-lo-1
    std::vector<Rat> Q(P.size() - 1);
    Rat carry;
    for (Index i = P.size() - 1; i >= 1; --i) {
        carry += P[i];
        Q[i - 1] = carry;
    }
    if (!(carry + P[0]).is_zero()) throw ConsistencyError(kMod, "nonzero remainder dividing by (w-1)");
    // p(v)/(v-1) = w^lo Q(w) / (1 + w + ... + w^{L-1}) -> Q(1)/L
    Rat q1;
    for (const auto& c : Q) q1 += c;
    return q1 / L;
}

std::string VPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += it->second.str();
        if (!it->first.is_zero()) s += "*v^" + it->first.str();
    }
    return s;
}

std::int64_t root_bound(const RatMatrix& K) { return K.common_denominator().get_si(); }

QTorusElem::QTorusElem(Index nvars, RatMatrix K) : nvars_(nvars), K_(std::move(K)), bound_(root_bound(K_)) {
    if (K_.rows() != nvars || K_.cols() != nvars || !K_.is_skew()) throw ValidationError(kMod, "form must be a skew n×n matrix");
}

QTorusElem QTorusElem::monomial(const RatMatrix& K, const ExpVec& n, const VPoly& c) {
    QTorusElem r(K.rows(), K);
    r.add_term(n, c);
    return r;
}

QTorusElem QTorusElem::from_laurent(const RatMatrix& K, const LaurentPoly& f) {
    QTorusElem r(f.nvars(), K);
    for (const auto& [e, c] : f.terms()) r.add_term(e, VPoly::constant(c, r.bound_));
    return r;
}

void QTorusElem::add_term(const ExpVec& n, const VPoly& c) {
    if (n.size() != nvars_) throw ValidationError(kMod, "exponent length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(n);
    if (it == terms_.end()) {
        terms_.emplace(n, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

QTorusElem QTorusElem::operator+(const QTorusElem& o) const {
    if (o.K_ != K_) throw ValidationError(kMod, "elements carry different forms");
    QTorusElem r = *this;
    for (const auto& [n, c] : o.terms_) r.add_term(n, c);
    return r;
}

QTorusElem QTorusElem::operator-(const QTorusElem& o) const {
    if (o.K_ != K_) throw ValidationError(kMod, "elements carry different forms");
    QTorusElem r = *this;
    for (const auto& [n, c] : o.terms_) r.add_term(n, c.scaled(Rat(-1)));
    return r;
}

LaurentPoly QTorusElem::at_one() const {
    std::vector<std::pair<ExpVec, Rat>> t;
    for (const auto& [n, c] : terms_) t.emplace_back(n, c.at_one());
    return LaurentPoly::from_terms(nvars_, t);
}

LaurentPoly QTorusElem::half_derivative_limit() const {
    std::vector<std::pair<ExpVec, Rat>> t;
    for (const auto& [n, c] : terms_) t.emplace_back(n, c.derivative_limit() / Rat(2));
    return LaurentPoly::from_terms(nvars_, t);
}

std::string QTorusElem::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [n, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*X^" + n.str();
    }
    return s;
}

QTorusElem q_mul(const QTorusElem& a, const QTorusElem& b) {
    if (a.K_ != b.K_) throw ValidationError(kMod, "elements carry different forms");
    QTorusElem r(a.nvars_, a.K_);
    for (const auto& [n, c] : a.terms_)
        for (const auto& [m, d] : b.terms_)
            r.add_term(n + m, (c * d) * VPoly::power(pairing(n, a.K_, m), Rat(1), a.bound_));
    return r;
}

Report poisson_limit_check(const ExpVec& n, const ExpVec& m, const RatMatrix& K) {
    Report r;
    Index nv = K.rows();
    QTorusElem Xn = QTorusElem::monomial(K, n, VPoly::constant(Rat(1), root_bound(K)));
    QTorusElem Xm = QTorusElem::monomial(K, m, VPoly::constant(Rat(1), root_bound(K)));
    LaurentPoly lim = (q_mul(Xn, Xm) - q_mul(Xm, Xn)).half_derivative_limit();
    LaurentPoly expect = LaurentPoly::monomial(nv, n + m, pairing(n, K, m));
    r.add("limit = nᵀKm·X^{n+m}", lim == expect, lim.str() + " vs " + expect.str());
    RationalExpr classical = poisson_bracket(RationalExpr::monomial(nv, n), RationalExpr::monomial(nv, m), K);
    r.add("limit = classical bracket", RationalExpr(lim) == classical, classical.str());
    return r;
}

QTorusElem quantum_monomial_map(const RatMatrix& V, const QTorusElem& a, const RatMatrix& K_target) {
    if (V.cols() != a.nvars_ || V.rows() != K_target.rows()) throw ValidationError(kMod, "map shape mismatch");
    QTorusElem r(K_target.rows(), K_target);
    for (const auto& [n, c] : a.terms_) r.add_term(n.transformed(V), c);
    return r;
}

QTorusElem quantum_monomial_map(const VariationMap& map, const QTorusElem& a, const RatMatrix& K_target) {
    return quantum_monomial_map(map.V, a, K_target);
}

Report homomorphism_check(const VariationMap& map, const RatMatrix& K_source, const RatMatrix& K_target) {
    Report r;
    Index n = map.V.cols();
    auto one = VPoly::constant(Rat(1), root_bound(K_source));
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            auto gi = QTorusElem::monomial(K_source, ExpVec::unit(n, i), one);
            auto gj = QTorusElem::monomial(K_source, ExpVec::unit(n, j), one);
            auto lhs = quantum_monomial_map(map, q_mul(gi, gj), K_target);
            auto rhs = q_mul(quantum_monomial_map(map, gi, K_target), quantum_monomial_map(map, gj, K_target));
            r.add("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", lhs == rhs);
        }
    return r;
}

}  // namespace ctw
