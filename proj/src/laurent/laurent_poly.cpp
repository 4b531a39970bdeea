#include "ctw/laurent/laurent_poly.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ctw/error.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "laurent-ring";

struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using TermMap = std::unordered_map<std::vector<std::int64_t>, Rat, VecHash>;

std::size_t g_parallel_threshold = 40000;

std::string exponent_str(const Rat& r) {
    if (r.is_integer()) return r.str();
    return "(" + r.str() + ")";
}
}  // namespace

void set_parallel_mul_threshold(std::size_t pairs) { g_parallel_threshold = pairs; }
std::size_t parallel_mul_threshold() { return g_parallel_threshold; }

LaurentPoly LaurentPoly::constant(Index nvars, const Rat& c) {
    LaurentPoly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({std::vector<std::int64_t>(nvars, 0), c});
    return p;
}

LaurentPoly LaurentPoly::monomial(Index nvars, const ExpVec& e, const Rat& c) {
    if (e.size() != nvars) throw ValidationError(kMod, "monomial length mismatch");
    LaurentPoly p(nvars);
    if (!c.is_zero()) {
        p.den_ = e.den();
        p.terms_.push_back({e.numerators(), c});
    }
    return p;
}

LaurentPoly LaurentPoly::variable(Index nvars, Index i) { return monomial(nvars, ExpVec::unit(nvars, i)); }

LaurentPoly LaurentPoly::from_terms(Index nvars, const std::vector<std::pair<ExpVec, Rat>>& terms) {
    std::int64_t l = 1;
    for (const auto& [e, c] : terms) {
        if (e.size() != nvars) throw ValidationError(kMod, "term length mismatch");
        l = lcm64(l, e.den());
    }
    std::vector<Term> raw;
    raw.reserve(terms.size());
    for (const auto& [e, c] : terms) {
        std::vector<std::int64_t> num(e.numerators());
        for (auto& x : num) x = checked_mul(x, l / e.den());
        raw.push_back({std::move(num), c});
    }
    return accumulate(nvars, l, std::move(raw));
}

LaurentPoly LaurentPoly::accumulate(Index nvars, std::int64_t den, std::vector<Term>&& raw) {
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
    LaurentPoly p(nvars);
    p.den_ = den;
    for (auto& t : raw) {
        if (!p.terms_.empty() && p.terms_.back().e == t.e) {
            p.terms_.back().c += t.c;
        } else {
            if (!p.terms_.empty() && p.terms_.back().c.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().c.is_zero()) p.terms_.pop_back();
    p.normalize();
    return p;
}

void LaurentPoly::normalize() {
    // Callers keep terms sorted and merged; only the denominator is minimized here.
    if (terms_.empty()) {
        den_ = 1;
        return;
    }
    std::int64_t g = den_;
    for (const auto& t : terms_)
        for (auto x : t.e) {
            g = gcd64(g, x);
            if (g == 1) return;
        }
    if (g > 1) {
        for (auto& t : terms_)
            for (auto& x : t.e) x /= g;
        den_ /= g;
    }
}

LaurentPoly LaurentPoly::with_den(std::int64_t den) const {
    if (den == den_) return *this;
    if (den % den_ != 0) throw ConsistencyError(kMod, "incompatible exponent denominators");
    LaurentPoly p = *this;
    std::int64_t f = den / den_;
    for (auto& t : p.terms_)
        for (auto& x : t.e) x = checked_mul(x, f);
    p.den_ = den;
    return p;
}

bool LaurentPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (auto x : terms_[0].e)
        if (x) return false;
    return true;
}

std::vector<std::pair<ExpVec, Rat>> LaurentPoly::terms() const {
    std::vector<std::pair<ExpVec, Rat>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.emplace_back(ExpVec(t.e, den_), t.c);
    return out;
}

Rat LaurentPoly::coefficient(const ExpVec& e) const {
    if (e.size() != nvars_) throw ValidationError(kMod, "exponent length mismatch");
    if (den_ % e.den() != 0) return Rat();
    std::vector<std::int64_t> key(e.numerators());
    for (auto& x : key) x = checked_mul(x, den_ / e.den());
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, const std::vector<std::int64_t>& k) { return t.e < k; });
    return (it != terms_.end() && it->e == key) ? it->c : Rat();
}

ExpVec LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw ValidationError(kMod, "min_exponent of zero polynomial");
    std::vector<std::int64_t> m = terms_[0].e;
    for (const auto& t : terms_)
        for (Index i = 0; i < nvars_; ++i) m[i] = std::min(m[i], t.e[i]);
    return ExpVec(std::move(m), den_);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw ValidationError(kMod, "variable count mismatch");
    if (terms_.empty()) return o;
    if (o.terms_.empty()) return *this;
    std::int64_t l = lcm64(den_, o.den_);
    LaurentPoly a = with_den(l), b = o.with_den(l);
    LaurentPoly r(nvars_);
    r.den_ = l;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    Index i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].e < b.terms_[j].e)) {
            r.terms_.push_back(std::move(a.terms_[i++]));
        } else if (i == a.terms_.size() || b.terms_[j].e < a.terms_[i].e) {
            r.terms_.push_back(std::move(b.terms_[j++]));
        } else {
            Rat c = a.terms_[i].c + b.terms_[j].c;
            if (!c.is_zero()) r.terms_.push_back({std::move(a.terms_[i].e), c});
            ++i;
            ++j;
        }
    }
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
    if (c.is_zero()) return LaurentPoly(nvars_);
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
}

LaurentPoly LaurentPoly::shifted(const ExpVec& e) const {
    if (e.size() != nvars_) throw ValidationError(kMod, "shift length mismatch");
    if (terms_.empty()) return *this;
    std::int64_t l = lcm64(den_, e.den());
    LaurentPoly r = with_den(l);
    std::vector<std::int64_t> s(e.numerators());
    for (auto& x : s) x = checked_mul(x, l / e.den());
    for (auto& t : r.terms_)
        for (Index i = 0; i < nvars_; ++i) t.e[i] = checked_add(t.e[i], s[i]);
    r.normalize();
    return r;
}

LaurentPoly mul_serial(const LaurentPoly& a0, const LaurentPoly& b0) {
    if (a0.nvars_ != b0.nvars_) throw ValidationError(kMod, "variable count mismatch");
    if (a0.is_zero() || b0.is_zero()) return LaurentPoly(a0.nvars_);
    std::int64_t l = lcm64(a0.den_, b0.den_);
    LaurentPoly a = a0.with_den(l), b = b0.with_den(l);
    const Index n = a.nvars_;
    TermMap acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    std::vector<std::int64_t> e(n);
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            for (Index i = 0; i < n; ++i) e[i] = checked_add(ta.e[i], tb.e[i]);
            auto [it, fresh] = acc.try_emplace(e, ta.c);
            if (fresh)
                it->second *= tb.c;
            else
                it->second += ta.c * tb.c;
        }
    std::vector<LaurentPoly::Term> raw;
    raw.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!c.is_zero()) raw.push_back({k, std::move(c)});
    return LaurentPoly::accumulate(n, l, std::move(raw));
}

LaurentPoly mul_parallel(const LaurentPoly& a0, const LaurentPoly& b0) {
    if (a0.nvars_ != b0.nvars_) throw ValidationError(kMod, "variable count mismatch");
    if (a0.is_zero() || b0.is_zero()) return LaurentPoly(a0.nvars_);
    std::int64_t l = lcm64(a0.den_, b0.den_);
    LaurentPoly a = a0.with_den(l), b = b0.with_den(l);
    const Index n = a.nvars_;
    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<TermMap> partial(nthreads);
    bool overflow = false;
    const long na = static_cast<long>(a.terms_.size());
#pragma omp parallel num_threads(nthreads)
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        TermMap& acc = partial[tid];
        std::vector<std::int64_t> e(n);
#pragma omp for schedule(static)
        for (long ia = 0; ia < na; ++ia) {
            const auto& ta = a.terms_[ia];
            for (const auto& tb : b.terms_) {
                for (Index i = 0; i < n; ++i)
                    if (__builtin_add_overflow(ta.e[i], tb.e[i], &e[i])) overflow = true;
                auto [it, fresh] = acc.try_emplace(e, ta.c);
                if (fresh)
                    it->second *= tb.c;
                else
                    it->second += ta.c * tb.c;
            }
        }
    }
    if (overflow) throw ConsistencyError(kMod, "exponent overflow");
    // Deterministic merge: concatenate, then sort and sum in accumulate().
    std::vector<LaurentPoly::Term> raw;
    for (auto& m : partial)
        for (auto& [k, c] : m)
            if (!c.is_zero()) raw.push_back({k, std::move(c)});
    return LaurentPoly::accumulate(n, l, std::move(raw));
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (terms_.size() * o.terms_.size() >= g_parallel_threshold) return mul_parallel(*this, o);
    return mul_serial(*this, o);
}

LaurentPoly LaurentPoly::pow(std::int64_t k) const {
    if (k < 0) {
        if (!is_monomial()) throw ValidationError(kMod, "negative power of a non-monomial");
        Rat c = terms_[0].c;
        Rat ck = 1;
        for (std::int64_t i = 0; i < -k; ++i) ck *= c;
        return monomial(nvars_, ExpVec(terms_[0].e, den_).scaled(Rat(static_cast<long>(k))), ck.inverse());
    }
    LaurentPoly result = constant(nvars_, 1), base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

LaurentPoly LaurentPoly::monomial_map(const RatMatrix& M) const {
    if (M.cols() != nvars_) throw ValidationError(kMod, "monomial map shape mismatch");
    std::vector<std::pair<ExpVec, Rat>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.emplace_back(ExpVec(t.e, den_).transformed(M), t.c);
    return from_terms(M.rows(), out);
}

LaurentPoly LaurentPoly::euler(Index i) const {
    if (i >= nvars_) throw ValidationError(kMod, "variable index out of range");
    LaurentPoly r(nvars_);
    r.den_ = den_;
    for (const auto& t : terms_) {
        if (t.e[i] == 0) continue;
        r.terms_.push_back({t.e, t.c * Rat(Integer(static_cast<long>(t.e[i])), Integer(static_cast<long>(den_)))});
    }
    r.normalize();
    return r;
}

std::optional<Rat> LaurentPoly::evaluate(const RatVec& point) const {
    if (point.size() != nvars_) throw ValidationError(kMod, "evaluation point length mismatch");
    if (den_ != 1) throw ValidationError(kMod, "evaluation needs integral exponents");
    Rat sum;
    for (const auto& t : terms_) {
        Rat v = t.c;
        for (Index i = 0; i < nvars_; ++i) {
            std::int64_t k = t.e[i];
            if (k == 0) continue;
            if (point[i].is_zero()) {
                if (k < 0) return std::nullopt;
                v = Rat();
                break;
            }
            mpq_class base = k > 0 ? point[i].raw() : mpq_class(1 / point[i].raw());
            std::uint64_t m = static_cast<std::uint64_t>(k > 0 ? k : -k);
            mpz_class num, den;
            mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), m);
            mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), m);
            v *= Rat(num, den);
        }
        sum += v;
    }
    return sum;
}

std::string LaurentPoly::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (Index idx = terms_.size(); idx-- > 0;) {
        const Term& t = terms_[idx];
        std::string mono;
        for (Index i = 0; i < nvars_; ++i) {
            if (t.e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += var + std::to_string(i + 1);
            Rat e(Integer(static_cast<long>(t.e[i])), Integer(static_cast<long>(den_)));
            if (!e.is_one()) mono += "^" + exponent_str(e);
        }
        Rat c = t.c;
        bool neg = c.sign() < 0;
        Rat a = c.abs();
        std::string body;
        if (mono.empty())
            body = a.str();
        else if (a.is_one())
            body = mono;
        else
            body = a.str() + "*" + mono;
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

bool structurally_less(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    if (a.den_ != b.den_) return a.den_ < b.den_;
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (Index i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].e != b.terms_[i].e) return a.terms_[i].e < b.terms_[i].e;
        if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c;
    }
    return false;
}

std::optional<LaurentPoly> exact_divide(const LaurentPoly& f0, const LaurentPoly& g0) {
    if (f0.nvars_ != g0.nvars_) throw ValidationError(kMod, "variable count mismatch");
    if (g0.is_zero()) throw ValidationError(kMod, "division by zero polynomial");
    if (f0.is_zero()) return LaurentPoly(f0.nvars_);
    if (g0.terms_.size() > f0.terms_.size()) return std::nullopt;
    std::int64_t l = lcm64(f0.den_, g0.den_);
    LaurentPoly f = f0.with_den(l), g = g0.with_den(l);
    const Index n = f.nvars_;
    const auto& lg = g.terms_.back();
    // Per-variable degree bounds of any quotient: degrees are additive.
    std::vector<std::int64_t> lo(n), hi(n);
    for (Index i = 0; i < n; ++i) {
        std::int64_t fl = f.terms_.front().e[i], fh = fl, gl = g.terms_.front().e[i], gh = gl;
        for (const auto& t : f.terms_) fl = std::min(fl, t.e[i]), fh = std::max(fh, t.e[i]);
        for (const auto& t : g.terms_) gl = std::min(gl, t.e[i]), gh = std::max(gh, t.e[i]);
        lo[i] = checked_add(fl, -gl);
        hi[i] = checked_add(fh, -gh);
        if (lo[i] > hi[i]) return std::nullopt;
    }

    std::map<std::vector<std::int64_t>, Rat> rem;
    for (auto& t : f.terms_) rem.emplace(t.e, t.c);
    std::vector<LaurentPoly::Term> q;
    std::vector<std::int64_t> qe(n), key(n);
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        for (Index i = 0; i < n; ++i) qe[i] = checked_add(top->first[i], -lg.e[i]);
        for (Index i = 0; i < n; ++i)
            if (qe[i] < lo[i] || qe[i] > hi[i]) return std::nullopt;
        Rat qc = top->second / lg.c;
        for (const auto& tg : g.terms_) {
            for (Index i = 0; i < n; ++i) key[i] = checked_add(qe[i], tg.e[i]);
            auto [it, fresh] = rem.try_emplace(key);
            it->second -= qc * tg.c;
            if (it->second.is_zero()) rem.erase(it);
        }
        q.push_back({qe, qc});
    }
    return LaurentPoly::accumulate(n, l, std::move(q));
}

}  // namespace ctw
