#include "ctw/exact/matrix.hpp"

#include <sstream>

#include "ctw/error.hpp"

namespace ctw {

namespace {

void require_same_shape(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("exact-core", "matrix shape mismatch");
}

std::size_t bit_weight(const Rat& r) {
    return mpz_sizeinbase(r.raw().get_num_mpz_t(), 2) + mpz_sizeinbase(r.raw().get_den_mpz_t(), 2);
}

}  // namespace

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ValidationError("exact-core", "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RatMatrix RatMatrix::identity(Index n) {
    RatMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::diagonal(const RatVec& diag) {
    RatMatrix m(diag.size(), diag.size());
    for (Index i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

RatMatrix RatMatrix::column(const RatVec& v) {
    RatMatrix m(v.size(), 1);
    for (Index i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

RatMatrix RatMatrix::row(const RatVec& v) {
    RatMatrix m(1, v.size());
    for (Index i = 0; i < v.size(); ++i) m(0, i) = v[i];
    return m;
}

RatVec RatMatrix::row_vec(Index i) const {
    return RatVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

RatVec RatMatrix::col_vec(Index j) const {
    RatVec v(rows_);
    for (Index i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void RatMatrix::set_col(Index j, const RatVec& v) {
    if (v.size() != rows_) throw ValidationError("exact-core", "column length mismatch");
    for (Index i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

void RatMatrix::set_row(Index i, const RatVec& v) {
    if (v.size() != cols_) throw ValidationError("exact-core", "row length mismatch");
    for (Index j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::sub(const IndexList& ri, const IndexList& ci) const {
    RatMatrix s(ri.size(), ci.size());
    for (Index a = 0; a < ri.size(); ++a)
        for (Index b = 0; b < ci.size(); ++b) s(a, b) = (*this)(ri[a], ci[b]);
    return s;
}

void RatMatrix::set_sub(const IndexList& ri, const IndexList& ci, const RatMatrix& block) {
    if (block.rows() != ri.size() || block.cols() != ci.size())
        throw ValidationError("exact-core", "block shape mismatch");
    for (Index a = 0; a < ri.size(); ++a)
        for (Index b = 0; b < ci.size(); ++b) (*this)(ri[a], ci[b]) = block(a, b);
}

bool RatMatrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

bool RatMatrix::is_integer() const {
    for (const auto& x : data_)
        if (!x.is_integer()) return false;
    return true;
}

bool RatMatrix::is_skew() const {
    if (!is_square()) return false;
    for (Index i = 0; i < rows_; ++i)
        for (Index j = i; j < cols_; ++j)
            if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
}

Integer RatMatrix::common_denominator() const {
    Integer l = 1;
    for (const auto& x : data_) l = lcm(l, x.den());
    return l;
}

RatMatrix rref(const RatMatrix& m, IndexList* pivots) {
    RatMatrix a = m;
    IndexList piv;
    Index r = 0;
    for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
        // Smallest bit-length pivot keeps intermediate entries small.
        Index best = a.rows();
        for (Index i = r; i < a.rows(); ++i)
            if (!a(i, c).is_zero() && (best == a.rows() || bit_weight(a(i, c)) < bit_weight(a(best, c))))
                best = i;
        if (best == a.rows()) continue;
        if (best != r)
            for (Index j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(best, j));
        Rat inv = a(r, c).inverse();
        for (Index j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (Index i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Rat f = a(i, c);
            for (Index j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = piv;
    return a;
}

Index RatMatrix::rank() const {
    IndexList piv;
    rref(*this, &piv);
    return piv.size();
}

Rat RatMatrix::det() const {
    if (!is_square()) throw ValidationError("exact-core", "determinant of non-square matrix");
    RatMatrix a = *this;
    Rat d = 1;
    const Index n = rows_;
    for (Index c = 0; c < n; ++c) {
        Index p = n;
        for (Index i = c; i < n; ++i)
            if (!a(i, c).is_zero()) { p = i; break; }
        if (p == n) return Rat();
        if (p != c) {
            for (Index j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
            d = -d;
        }
        d *= a(c, c);
        Rat inv = a(c, c).inverse();
        for (Index i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            Rat f = a(i, c) * inv;
            for (Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
    if (!is_square()) return std::nullopt;
    const Index n = rows_;
    RatMatrix aug(n, 2 * n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = 1;
    }
    IndexList piv;
    RatMatrix red = rref(aug, &piv);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    RatMatrix out(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) out(i, j) = red(i, n + j);
    return out;
}

RatMatrix RatMatrix::inv() const {
    auto r = inverse();
    if (!r) throw ConsistencyError("exact-core", "matrix is singular");
    return *r;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
    require_same_shape(*this, o);
    for (Index i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
    require_same_shape(*this, o);
    for (Index i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

RatMatrix& RatMatrix::operator*=(const Rat& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw ValidationError("exact-core", "matrix product shape mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (Index j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatVec operator*(const RatMatrix& a, const RatVec& v) {
    if (a.cols() != v.size()) throw ValidationError("exact-core", "matrix-vector shape mismatch");
    RatVec out(a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
    return out;
}

Rat dot(const RatVec& v, const RatVec& w) {
    if (v.size() != w.size()) throw ValidationError("exact-core", "vector length mismatch");
    Rat s;
    for (Index i = 0; i < v.size(); ++i)
        if (!v[i].is_zero() && !w[i].is_zero()) s += v[i] * w[i];
    return s;
}

std::vector<RatVec> right_nullspace(const RatMatrix& m) {
    IndexList piv;
    RatMatrix red = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (Index p : piv) is_piv[p] = true;
    std::vector<RatVec> basis;
    for (Index f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        RatVec v(m.cols());
        v[f] = 1;
        for (Index r = 0; r < piv.size(); ++r) v[piv[r]] = -red(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string RatMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (Index i = 0; i < rows_; ++i) {
        if (i) os << ',';
        os << '[';
        for (Index j = 0; j < cols_; ++j) {
            if (j) os << ',';
            os << (*this)(i, j).str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace ctw
