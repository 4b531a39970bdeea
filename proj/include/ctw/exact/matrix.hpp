#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "ctw/exact/rat.hpp"

namespace ctw {

using RatVec = std::vector<Rat>;
using Index = std::size_t;
using IndexList = std::vector<Index>;

/// Dense row-major matrix over Q.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static RatMatrix identity(Index n);
    static RatMatrix zero(Index rows, Index cols) { return RatMatrix(rows, cols); }
    static RatMatrix diagonal(const RatVec& diag);
    static RatMatrix column(const RatVec& v);
    static RatMatrix row(const RatVec& v);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
    const Rat& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

    RatVec row_vec(Index i) const;
    RatVec col_vec(Index j) const;
    void set_col(Index j, const RatVec& v);
    void set_row(Index i, const RatVec& v);

    RatMatrix transpose() const;
    /// Rows `ri` and columns `ci`, in the given order.
    RatMatrix sub(const IndexList& ri, const IndexList& ci) const;
    /// Writes `block` at rows `ri`, columns `ci`.
    void set_sub(const IndexList& ri, const IndexList& ci, const RatMatrix& block);

    bool is_zero() const;
    bool is_integer() const;
    bool is_skew() const;
    /// Lcm of all entry denominators.
    Integer common_denominator() const;

    Index rank() const;
    Rat det() const;
    /// Exact inverse, or nullopt if singular.
    std::optional<RatMatrix> inverse() const;
    /// Throws ConsistencyError if singular.
    RatMatrix inv() const;

    RatMatrix& operator+=(const RatMatrix& o);
    RatMatrix& operator-=(const RatMatrix& o);
    RatMatrix& operator*=(const Rat& s);
    friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
    friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
    friend RatMatrix operator*(RatMatrix a, const Rat& s) { return a *= s; }
    friend RatMatrix operator*(const Rat& s, RatMatrix a) { return a *= s; }
    RatMatrix operator-() const;
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatVec operator*(const RatMatrix& a, const RatVec& v);

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// "[[a,b],[c,d]]"
    std::string str() const;

    const std::vector<Rat>& data() const { return data_; }

private:
    Index rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

/// Row-reduced echelon form; `pivots` receives pivot columns.
RatMatrix rref(const RatMatrix& m, IndexList* pivots = nullptr);

/// Basis of {x : M x = 0} as column vectors.
std::vector<RatVec> right_nullspace(const RatMatrix& m);

/// v^T w
Rat dot(const RatVec& v, const RatVec& w);

}  // namespace ctw
