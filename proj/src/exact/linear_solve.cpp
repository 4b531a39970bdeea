#include "ctw/exact/linear_solve.hpp"

#include "ctw/error.hpp"

namespace ctw {

RatMatrix AffineFamily::member(const RatVec& coeffs) const {
    if (coeffs.size() != nullspace_basis.size())
        throw ValidationError("exact-core", "wrong number of family coefficients");
    RatMatrix x = particular;
    for (Index i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) x += nullspace_basis[i] * coeffs[i];
    return x;
}

std::optional<AffineFamily> solve_affine(const RatMatrix& A, const RatMatrix& Y) {
    if (A.cols() != Y.cols()) throw ValidationError("exact-core", "solve_affine: column count mismatch");
    const Index m = A.rows(), n = A.cols(), p = Y.rows();
    // Row r of X solves A^T x = (row r of Y)^T; reduce all right-hand sides at once.
    RatMatrix aug(n, m + p);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) aug(i, j) = A(j, i);
        for (Index r = 0; r < p; ++r) aug(i, m + r) = Y(r, i);
    }
    IndexList piv;
    RatMatrix red = rref(aug, &piv);
    Index rank = 0;
    while (rank < piv.size() && piv[rank] < m) ++rank;
    if (rank < piv.size()) return std::nullopt;  // a pivot in the Y part: inconsistent

    AffineFamily fam;
    fam.rank_A = rank;
    fam.particular = RatMatrix(p, m);
    for (Index r = 0; r < p; ++r)
        for (Index k = 0; k < rank; ++k) fam.particular(r, piv[k]) = red(k, m + r);

    std::vector<RatVec> null = right_nullspace(A.transpose());
    for (Index r = 0; r < p; ++r)
        for (const auto& z : null) {
            RatMatrix b(p, m);
            b.set_row(r, z);
            fam.nullspace_basis.push_back(std::move(b));
        }
    return fam;
}

namespace {

// Unimodular column operation on columns a, b of both M and U:
// [col_a col_b] <- [col_a col_b] * [[x, -v],[y, u]]  with x*u + y*v = g ... expressed via
// the extended gcd so that M(i,a) becomes g and M(i,b) becomes 0.
void gcd_columns(RatMatrix& M, RatMatrix& U, Index i, Index a, Index b) {
    Integer p = M(i, a).num(), q = M(i, b).num();
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Integer pg = p / g, qg = q / g;
    auto apply = [&](RatMatrix& X) {
        for (Index r = 0; r < X.rows(); ++r) {
            Rat ca = X(r, a), cb = X(r, b);
            X(r, a) = ca * Rat(s) + cb * Rat(t);
            X(r, b) = cb * Rat(pg) - ca * Rat(qg);
        }
    };
    apply(M);
    apply(U);
}

}  // namespace

HermiteResult column_hermite(const RatMatrix& M0) {
    if (!M0.is_integer()) throw ValidationError("exact-core", "column_hermite needs an integer matrix");
    RatMatrix M = M0;
    RatMatrix U = RatMatrix::identity(M.cols());
    Index col = 0;
    for (Index i = 0; i < M.rows() && col < M.cols(); ++i) {
        for (Index j = col + 1; j < M.cols(); ++j)
            if (!M(i, j).is_zero()) {
                if (M(i, col).is_zero()) {
                    for (Index r = 0; r < M.rows(); ++r) std::swap(M(r, col), M(r, j));
                    for (Index r = 0; r < U.rows(); ++r) std::swap(U(r, col), U(r, j));
                } else {
                    gcd_columns(M, U, i, col, j);
                }
            }
        if (!M(i, col).is_zero()) {
            if (M(i, col).sign() < 0) {
                for (Index r = 0; r < M.rows(); ++r) M(r, col) = -M(r, col);
                for (Index r = 0; r < U.rows(); ++r) U(r, col) = -U(r, col);
            }
            ++col;
        }
    }
    return {M, U, col};
}

std::optional<std::vector<Integer>> solve_integer_system(const RatMatrix& M0, const RatVec& b0) {
    if (M0.rows() != b0.size()) throw ValidationError("exact-core", "integer system shape mismatch");
    RatMatrix M = M0;
    RatVec b = b0;
    for (Index i = 0; i < M.rows(); ++i) {
        Integer l = 1;
        for (Index j = 0; j < M.cols(); ++j) l = lcm(l, M(i, j).den());
        for (Index j = 0; j < M.cols(); ++j) M(i, j) *= Rat(l);
        b[i] *= Rat(l);
    }
    HermiteResult h = column_hermite(M);
    RatVec w(M.cols());
    Index col = 0;
    for (Index i = 0; i < M.rows(); ++i) {
        Rat acc = b[i];
        for (Index j = 0; j < col; ++j) acc -= h.H(i, j) * w[j];
        if (col < M.cols() && !h.H(i, col).is_zero()) {
            Rat v = acc / h.H(i, col);
            if (!v.is_integer()) return std::nullopt;
            w[col++] = v;
        } else if (!acc.is_zero()) {
            return std::nullopt;
        }
    }
    RatVec z = h.U * w;
    std::vector<Integer> out;
    out.reserve(z.size());
    for (const auto& x : z) out.push_back(x.num());
    return out;
}

IntegerSolution integer_solution(const RatMatrix& particular, const std::vector<RatMatrix>& basis) {
    const Index R = particular.rows(), C = particular.cols(), N = R * C;
    auto flat = [&](const RatMatrix& m) {
        if (m.rows() != R || m.cols() != C) throw ValidationError("exact-core", "basis shape mismatch");
        return m.data();
    };
    RatVec p = flat(particular);

    // K: integer rows spanning the orthogonal complement of the direction space.
    RatMatrix K;
    if (basis.empty()) {
        K = RatMatrix::identity(N);
    } else {
        RatMatrix Bm(basis.size(), N);
        for (Index i = 0; i < basis.size(); ++i) Bm.set_row(i, flat(basis[i]));
        std::vector<RatVec> perp = right_nullspace(Bm);
        K = RatMatrix(perp.size(), N);
        for (Index i = 0; i < perp.size(); ++i) {
            Integer l = 1;
            for (const auto& x : perp[i]) l = lcm(l, x.den());
            RatVec row = perp[i];
            for (auto& x : row) x *= Rat(l);
            K.set_row(i, row);
        }
    }
    RatVec Kp = K * p;
    Integer bound = particular.common_denominator();

    IntegerSolution out;
    for (Integer r = 1; r <= bound; ++r) {
        RatVec rhs = Kp;
        for (auto& x : rhs) x *= Rat(r);
        auto z = solve_integer_system(K, rhs);
        if (!z) continue;
        RatMatrix m(R, C);
        for (Index i = 0; i < N; ++i) m(i / C, i % C) = Rat(z->at(i), r);
        out.min_denominator = r;
        out.best = m;
        if (r == 1) out.integral = m;
        return out;
    }
    throw ConsistencyError("exact-core", "integer_solution: denominator bound not attained");
}

}  // namespace ctw
