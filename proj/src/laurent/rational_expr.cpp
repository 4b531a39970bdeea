#include "ctw/laurent/rational_expr.hpp"

#include <algorithm>
#include <map>

#include "ctw/error.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "laurent-ring";

Rat rat_pow(const Rat& c, std::int64_t k) {
    if (k == 0) return 1;
    Rat base = k > 0 ? c : c.inverse();
    std::uint64_t m = static_cast<std::uint64_t>(k > 0 ? k : -k);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), m);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), m);
    return Rat(num, den);
}

std::string exp_suffix(const Rat& e) {
    if (e.is_one()) return "";
    return e.is_integer() ? "^" + e.str() : "^(" + e.str() + ")";
}
}  // namespace

NormalizedPoly normalize_poly(const LaurentPoly& p) {
    if (p.is_zero()) throw ValidationError(kMod, "cannot normalize the zero polynomial");
    NormalizedPoly out;
    out.m = p.min_exponent();
    LaurentPoly f = p.shifted(-out.m);
    Rat c = f.constant_term();
    if (c.is_zero()) c = f.coeff(0);
    out.c = c;
    out.f = f.is_monomial() ? LaurentPoly::constant(p.nvars(), 1) : f.scaled(c.inverse());
    return out;
}

RationalExpr::RationalExpr(const LaurentPoly& p) : nvars_(p.nvars()), mono_(p.nvars()) {
    if (p.is_zero()) return;
    coeff_ = 1;
    absorb_poly(p, 1);
    canonicalize();
}

RationalExpr RationalExpr::constant(Index nvars, const Rat& c) {
    RationalExpr r(nvars);
    r.coeff_ = c;
    return r;
}

RationalExpr RationalExpr::monomial(Index nvars, const ExpVec& e, const Rat& c) {
    if (e.size() != nvars) throw ValidationError(kMod, "monomial length mismatch");
    RationalExpr r(nvars);
    r.coeff_ = c;
    if (!c.is_zero()) r.mono_ = e;
    return r;
}

RationalExpr RationalExpr::variable(Index nvars, Index i) { return monomial(nvars, ExpVec::unit(nvars, i)); }

RationalExpr RationalExpr::ratio(const LaurentPoly& num, const LaurentPoly& den) {
    return RationalExpr(num) / RationalExpr(den);
}

void RationalExpr::absorb_poly(const LaurentPoly& p, std::int64_t e) {
    NormalizedPoly np = normalize_poly(p);
    coeff_ *= rat_pow(np.c, e);
    mono_ = mono_ + np.m.scaled(Rat(static_cast<long>(e)));
    if (!np.f.is_constant()) add_factor(np.f, e);
}

void RationalExpr::add_factor(const LaurentPoly& f, std::int64_t e) {
    if (e == 0) return;
    for (auto it = factors_.begin(); it != factors_.end(); ++it)
        if (it->first == f) {
            it->second = checked_add(it->second, e);
            if (it->second == 0) factors_.erase(it);
            return;
        }
    factors_.emplace_back(f, e);
}

void RationalExpr::canonicalize() {
    if (coeff_.is_zero()) {
        mono_ = ExpVec(nvars_);
        factors_.clear();
        return;
    }
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& a, const Factor& b) { return structurally_less(a.first, b.first); });
}

bool RationalExpr::is_laurent() const {
    for (const auto& f : factors_)
        if (f.second < 0) return false;
    return true;
}

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
    if (nvars_ != o.nvars_) throw ValidationError(kMod, "variable count mismatch");
    if (is_zero() || o.is_zero()) return RationalExpr(nvars_);
    RationalExpr r = *this;
    r.coeff_ *= o.coeff_;
    r.mono_ = r.mono_ + o.mono_;
    for (const auto& [f, e] : o.factors_) r.add_factor(f, e);
    r.canonicalize();
    return r;
}

RationalExpr RationalExpr::inverse() const {
    if (is_zero()) throw ValidationError(kMod, "inverse of zero");
    RationalExpr r = *this;
    r.coeff_ = coeff_.inverse();
    r.mono_ = -mono_;
    for (auto& f : r.factors_) f.second = -f.second;
    return r;
}

RationalExpr RationalExpr::operator/(const RationalExpr& o) const { return *this * o.inverse(); }

RationalExpr RationalExpr::operator-() const {
    RationalExpr r = *this;
    r.coeff_ = -r.coeff_;
    return r;
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const { return sum({*this, o}); }
RationalExpr RationalExpr::operator-(const RationalExpr& o) const { return sum({*this, -o}); }

RationalExpr RationalExpr::pow(std::int64_t k) const {
    if (k == 0) return constant(nvars_, 1);
    if (is_zero()) {
        if (k < 0) throw ValidationError(kMod, "negative power of zero");
        return *this;
    }
    RationalExpr r = *this;
    r.coeff_ = rat_pow(coeff_, k);
    r.mono_ = mono_.scaled(Rat(static_cast<long>(k)));
    for (auto& f : r.factors_) f.second = checked_mul(f.second, k);
    return r;
}

RationalExpr RationalExpr::pow(const Rat& k) const {
    if (k.is_integer()) return pow(k.to_int64());
    if (!factors_.empty() || !coeff_.is_one())
        throw ValidationError(kMod, "fractional power of a non-monomial or non-unit coefficient");
    RationalExpr r = *this;
    r.mono_ = mono_.scaled(k);
    return r;
}

RationalExpr RationalExpr::sum(const std::vector<RationalExpr>& terms) {
    std::vector<const RationalExpr*> nz;
    Index nvars = terms.empty() ? 0 : terms.front().nvars_;
    for (const auto& t : terms) {
        if (t.nvars_ != nvars) throw ValidationError(kMod, "variable count mismatch");
        if (!t.is_zero()) nz.push_back(&t);
    }
    if (nz.empty()) return RationalExpr(nvars);
    if (nz.size() == 1) return *nz.front();

    // Common part G = X^gmono · ∏ f^{min e}.
    ExpVec gmono = nz.front()->mono_;
    std::vector<LaurentPoly> pool;
    for (const auto* t : nz) {
        gmono = ExpVec::min(gmono, t->mono_);
        for (const auto& [f, e] : t->factors_)
            if (std::find(pool.begin(), pool.end(), f) == pool.end()) pool.push_back(f);
    }
    std::vector<std::int64_t> gexp(pool.size(), 0);
    std::vector<std::vector<std::int64_t>> texp(nz.size(), std::vector<std::int64_t>(pool.size(), 0));
    for (Index a = 0; a < nz.size(); ++a)
        for (const auto& [f, e] : nz[a]->factors_) {
            Index idx = static_cast<Index>(std::find(pool.begin(), pool.end(), f) - pool.begin());
            texp[a][idx] = e;
        }
    for (Index p = 0; p < pool.size(); ++p) {
        gexp[p] = texp[0][p];
        for (Index a = 1; a < nz.size(); ++a) gexp[p] = std::min(gexp[p], texp[a][p]);
    }

    std::map<std::pair<Index, std::int64_t>, LaurentPoly> powcache;
    auto fpow = [&](Index p, std::int64_t k) -> const LaurentPoly& {
        auto key = std::make_pair(p, k);
        auto it = powcache.find(key);
        if (it == powcache.end()) it = powcache.emplace(key, pool[p].pow(k)).first;
        return it->second;
    };
    LaurentPoly S(nvars);
    for (Index a = 0; a < nz.size(); ++a) {
        LaurentPoly r = LaurentPoly::monomial(nvars, nz[a]->mono_ - gmono, nz[a]->coeff_);
        for (Index p = 0; p < pool.size(); ++p) {
            std::int64_t k = texp[a][p] - gexp[p];
            if (k > 0) r = r * fpow(p, k);
        }
        S = S + r;
    }
    if (S.is_zero()) return RationalExpr(nvars);

    RationalExpr out(nvars);
    out.coeff_ = 1;
    out.mono_ = gmono;
    for (Index p = 0; p < pool.size(); ++p) out.add_factor(pool[p], gexp[p]);

    NormalizedPoly np = normalize_poly(S);
    out.coeff_ *= np.c;
    out.mono_ = out.mono_ + np.m;
    LaurentPoly P = np.f;
    for (Index p = 0; p < pool.size() && !P.is_constant(); ++p) {
        while (!P.is_constant() && P.num_terms() >= pool[p].num_terms()) {
            auto q = exact_divide(P, pool[p]);
            if (!q) break;
            out.add_factor(pool[p], 1);
            NormalizedPoly nq = normalize_poly(*q);
            out.coeff_ *= nq.c;
            out.mono_ = out.mono_ + nq.m;
            P = nq.f;
        }
    }
    if (!P.is_constant()) out.add_factor(P, 1);
    out.canonicalize();
    return out;
}

LaurentPoly RationalExpr::num() const {
    if (is_zero()) return LaurentPoly(nvars_);
    LaurentPoly r = LaurentPoly::monomial(nvars_, mono_, coeff_);
    for (const auto& [f, e] : factors_)
        if (e > 0) r = r * f.pow(e);
    return r;
}

LaurentPoly RationalExpr::den() const {
    LaurentPoly r = LaurentPoly::constant(nvars_, 1);
    for (const auto& [f, e] : factors_)
        if (e < 0) r = r * f.pow(-e);
    return r;
}

std::optional<LaurentPoly> RationalExpr::to_laurent() const {
    if (is_laurent()) return num();
    return exact_divide(num(), den());
}

bool operator==(const RationalExpr& a, const RationalExpr& b) {
    if (a.nvars_ != b.nvars_) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    RationalExpr q = a / b;
    if (q.factors_.empty()) return q.coeff_.is_one() && q.mono_.is_zero();
    return q.num() == q.den();
}

RationalExpr RationalExpr::substitute(const std::vector<RationalExpr>& images) const {
    if (images.size() != nvars_) throw ValidationError(kMod, "substitution arity mismatch");
    Index tn = images.empty() ? 0 : images.front().nvars_;
    if (is_zero()) return RationalExpr(tn);
    auto mono_image = [&](const ExpVec& e, const Rat& c) {
        RationalExpr r = constant(tn, c);
        for (Index i = 0; i < nvars_; ++i) {
            Rat k = e[i];
            if (!k.is_zero()) r = r * images[i].pow(k);
        }
        return r;
    };
    RationalExpr r = mono_image(mono_, coeff_);
    for (const auto& [f, e] : factors_) {
        std::vector<RationalExpr> parts;
        parts.reserve(f.num_terms());
        for (Index t = 0; t < f.num_terms(); ++t) parts.push_back(mono_image(f.exponent(t), f.coeff(t)));
        r = r * sum(parts).pow(e);
    }
    return r;
}

RationalExpr RationalExpr::monomial_map(const RatMatrix& M) const {
    if (M.cols() != nvars_) throw ValidationError(kMod, "monomial map shape mismatch");
    RationalExpr r(M.rows());
    if (is_zero()) return r;
    r.coeff_ = coeff_;
    r.mono_ = mono_.transformed(M);
    for (const auto& [f, e] : factors_) r.absorb_poly(f.monomial_map(M), e);
    r.canonicalize();
    return r;
}

RationalExpr RationalExpr::log_euler(Index i) const {
    if (i >= nvars_) throw ValidationError(kMod, "variable index out of range");
    if (is_zero()) throw ValidationError(kMod, "logarithmic derivative of zero");
    std::vector<RationalExpr> parts;
    parts.push_back(constant(nvars_, mono_[i]));
    for (const auto& [f, e] : factors_) {
        LaurentPoly df = f.euler(i);
        if (df.is_zero()) continue;
        parts.push_back(RationalExpr(df.scaled(Rat(static_cast<long>(e)))) / RationalExpr(f));
    }
    return sum(parts);
}

std::optional<Rat> RationalExpr::evaluate(const RatVec& point) const {
    if (is_zero()) return Rat();
    if (!mono_.is_integral()) throw ValidationError(kMod, "evaluation needs integral exponents");
    auto m = LaurentPoly::monomial(nvars_, mono_, coeff_).evaluate(point);
    if (!m) return std::nullopt;
    Rat v = *m;
    for (const auto& [f, e] : factors_) {
        auto fv = f.evaluate(point);
        if (!fv) return std::nullopt;
        if (fv->is_zero()) {
            if (e < 0) return std::nullopt;
            return Rat();
        }
        v *= rat_pow(*fv, e);
    }
    return v;
}

std::string RationalExpr::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::vector<std::string> parts;
    for (Index i = 0; i < nvars_; ++i) {
        Rat e = mono_[i];
        if (!e.is_zero()) parts.push_back(var + std::to_string(i + 1) + exp_suffix(e));
    }
    for (const auto& [f, e] : factors_)
        parts.push_back("(" + f.str(var) + ")" + exp_suffix(Rat(static_cast<long>(e))));
    std::string body;
    for (const auto& p : parts) body += (body.empty() ? "" : "*") + p;
    if (body.empty()) return coeff_.str();
    if (coeff_.is_one()) return body;
    if (coeff_ == Rat(-1)) return "-" + body;
    return coeff_.str() + "*" + body;
}

}  // namespace ctw
