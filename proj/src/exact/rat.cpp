#include "ctw/exact/rat.hpp"

#include <ostream>

#include "ctw/error.hpp"

namespace ctw {

Rat::Rat(const Integer& num, const Integer& den) {
    if (den == 0) throw ValidationError("exact-core", "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.empty()) throw ValidationError("exact-core", "empty rational literal");
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string n = s.substr(0, slash);
    std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d) || d[0] == '-' || d[0] == '+')
        throw ValidationError("exact-core", "malformed rational literal '" + text + "'");
    if (n[0] == '+') n = n.substr(1);
    return Rat(Integer(n), Integer(d));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw ValidationError("exact-core", "division by zero");
    v_ /= o.v_;
    return *this;
}

Integer Rat::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Integer Rat::ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Rat Rat::inverse() const {
    if (is_zero()) throw ValidationError("exact-core", "inverse of zero");
    return Rat(mpq_class(1 / v_));
}

bool Rat::fits_int64() const {
    if (!is_integer()) return false;
    const Integer& n = v_.get_num();
    static const Integer lo("-9223372036854775808"), hi("9223372036854775807");
    return n >= lo && n <= hi;
}

std::int64_t Rat::to_int64() const {
    if (!fits_int64()) throw ConsistencyError("exact-core", "value " + str() + " is not an int64");
    // mpz_get_si is long; long is 64-bit on the supported targets.
    return static_cast<std::int64_t>(mpz_get_si(v_.get_num_mpz_t()));
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rat::hash() const {
    // Low limbs of numerator and denominator are enough to spread buckets.
    std::size_t h = mpz_size(v_.get_num_mpz_t()) ? mpz_getlimbn(v_.get_num_mpz_t(), 0) : 0;
    h = h * 1000003u ^ static_cast<std::size_t>(sgn(v_) + 1);
    h = h * 1000003u ^ mpz_getlimbn(v_.get_den_mpz_t(), 0);
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    std::int64_t g = gcd64(a, b);
    std::int64_t r = checked_mul(a / g, b);
    return r < 0 ? -r : r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ConsistencyError("exact-core", "exponent overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ConsistencyError("exact-core", "exponent overflow");
    return r;
}

}  // namespace ctw
