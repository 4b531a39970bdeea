#include "ctw/laurent/exp_vec.hpp"

#include "ctw/error.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "laurent-ring";

std::vector<std::int64_t> rescale(const std::vector<std::int64_t>& v, std::int64_t f) {
    std::vector<std::int64_t> out(v.size());
    for (Index i = 0; i < v.size(); ++i) out[i] = checked_mul(v[i], f);
    return out;
}
}  // namespace

ExpVec::ExpVec(std::vector<std::int64_t> num, std::int64_t den) : num_(std::move(num)), den_(den) {
    if (den_ <= 0) throw ValidationError(kMod, "exponent denominator must be positive");
    normalize();
}

void ExpVec::normalize() {
    std::int64_t g = den_;
    for (auto x : num_) g = gcd64(g, x);
    if (g > 1) {
        for (auto& x : num_) x /= g;
        den_ /= g;
    }
}

ExpVec ExpVec::from_rats(const RatVec& v) {
    std::int64_t l = 1;
    for (const auto& x : v) {
        if (!x.den().fits_slong_p()) throw ConsistencyError(kMod, "exponent denominator too large");
        l = lcm64(l, x.den().get_si());
    }
    std::vector<std::int64_t> num(v.size());
    for (Index i = 0; i < v.size(); ++i) num[i] = (v[i] * Rat(static_cast<long>(l))).to_int64();
    return ExpVec(std::move(num), l);
}

ExpVec ExpVec::unit(Index n, Index i, std::int64_t value) {
    ExpVec e(n);
    e.num_[i] = value;
    return e;
}

Rat ExpVec::operator[](Index i) const {
    return Rat(Integer(static_cast<long>(num_[i])), Integer(static_cast<long>(den_)));
}

RatVec ExpVec::to_rats() const {
    RatVec v(num_.size());
    for (Index i = 0; i < num_.size(); ++i) v[i] = (*this)[i];
    return v;
}

bool ExpVec::is_zero() const {
    for (auto x : num_)
        if (x) return false;
    return true;
}

ExpVec ExpVec::operator+(const ExpVec& o) const {
    if (size() != o.size()) throw ValidationError(kMod, "exponent length mismatch");
    if (den_ == o.den_) {
        std::vector<std::int64_t> r(size());
        for (Index i = 0; i < size(); ++i) r[i] = checked_add(num_[i], o.num_[i]);
        return ExpVec(std::move(r), den_);
    }
    std::int64_t l = lcm64(den_, o.den_);
    auto a = rescale(num_, l / den_), b = rescale(o.num_, l / o.den_);
    for (Index i = 0; i < size(); ++i) a[i] = checked_add(a[i], b[i]);
    return ExpVec(std::move(a), l);
}

ExpVec ExpVec::operator-() const {
    ExpVec r = *this;
    for (auto& x : r.num_) x = -x;
    return r;
}

ExpVec ExpVec::operator-(const ExpVec& o) const { return *this + (-o); }

ExpVec ExpVec::scaled(const Rat& s) const {
    if (!s.num().fits_slong_p() || !s.den().fits_slong_p())
        throw ConsistencyError(kMod, "exponent scale too large");
    std::int64_t p = s.num().get_si(), q = s.den().get_si();
    return ExpVec(rescale(num_, p), checked_mul(den_, q));
}

ExpVec ExpVec::min(const ExpVec& a, const ExpVec& b) {
    if (a.size() != b.size()) throw ValidationError(kMod, "exponent length mismatch");
    std::int64_t l = lcm64(a.den_, b.den_);
    auto x = rescale(a.num_, l / a.den_), y = rescale(b.num_, l / b.den_);
    for (Index i = 0; i < x.size(); ++i) x[i] = std::min(x[i], y[i]);
    return ExpVec(std::move(x), l);
}

ExpVec ExpVec::transformed(const RatMatrix& M) const {
    if (M.cols() != size()) throw ValidationError(kMod, "exponent map shape mismatch");
    return ExpVec::from_rats(M * to_rats());
}

std::string ExpVec::str() const {
    std::string s = "(";
    for (Index i = 0; i < size(); ++i) {
        if (i) s += ',';
        s += (*this)[i].str();
    }
    return s + ")";
}

std::strong_ordering operator<=>(const ExpVec& a, const ExpVec& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (Index i = 0; i < a.size(); ++i) {
        // a_i/da vs b_i/db
        __int128 l = static_cast<__int128>(a.num_[i]) * b.den_;
        __int128 r = static_cast<__int128>(b.num_[i]) * a.den_;
        if (l != r) return l < r ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

}  // namespace ctw
