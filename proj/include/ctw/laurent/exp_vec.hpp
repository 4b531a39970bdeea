#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ctw/exact/matrix.hpp"

namespace ctw {

/// Exponent vector with rational entries, stored as int64 numerators over a
/// shared positive denominator (kept minimal).
class ExpVec {
public:
    ExpVec() = default;
    explicit ExpVec(Index n) : num_(n, 0) {}
    ExpVec(std::vector<std::int64_t> num, std::int64_t den);
    static ExpVec from_rats(const RatVec& v);
    static ExpVec unit(Index n, Index i, std::int64_t value = 1);

    Index size() const { return num_.size(); }
    Rat operator[](Index i) const;
    std::int64_t den() const { return den_; }
    const std::vector<std::int64_t>& numerators() const { return num_; }
    RatVec to_rats() const;

    bool is_zero() const;
    bool is_integral() const { return den_ == 1; }
    /// Entry i is integral.
    bool integral_at(Index i) const { return num_[i] % den_ == 0; }

    ExpVec operator+(const ExpVec& o) const;
    ExpVec operator-(const ExpVec& o) const;
    ExpVec operator-() const;
    ExpVec scaled(const Rat& s) const;
    /// Componentwise minimum.
    static ExpVec min(const ExpVec& a, const ExpVec& b);
    /// M·v as a new exponent vector.
    ExpVec transformed(const RatMatrix& M) const;

    std::string str() const;

    friend bool operator==(const ExpVec&, const ExpVec&) = default;
    /// Lexicographic on the rational values.
    friend std::strong_ordering operator<=>(const ExpVec& a, const ExpVec& b);

private:
    void normalize();
    std::vector<std::int64_t> num_;
    std::int64_t den_ = 1;
};

}  // namespace ctw
