#include "ctw/variation/variation.hpp"

#include <functional>

#include "ctw/error.hpp"
#include "ctw/mutation/mutation.hpp"
#include "ctw/poisson/poisson.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "variation-solver";

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

PolyMatrix poly_matrix(const VariationFamily& fam) {
    Index n = fam.particular.V.rows();
    PolyMatrix P(n, std::vector<LaurentPoly>(n));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) P[i][j] = fam.entry_poly(i, j);
    return P;
}

PolyMatrix lift(const RatMatrix& m, Index nvars) {
    PolyMatrix P(m.rows(), std::vector<LaurentPoly>(m.cols(), LaurentPoly(nvars)));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) P[i][j] = LaurentPoly::constant(nvars, m(i, j));
    return P;
}

PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b, Index nvars) {
    Index r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    PolyMatrix out(r, std::vector<LaurentPoly>(c, LaurentPoly(nvars)));
    for (Index i = 0; i < r; ++i)
        for (Index l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (Index j = 0; j < c; ++j)
                if (!b[l][j].is_zero()) out[i][j] = out[i][j] + a[i][l] * b[l][j];
        }
    return out;
}

PolyMatrix transpose(const PolyMatrix& a) {
    if (a.empty()) return a;
    PolyMatrix out(a[0].size(), std::vector<LaurentPoly>(a.size()));
    for (Index i = 0; i < a.size(); ++i)
        for (Index j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
    return out;
}

LaurentPoly poly_det(const PolyMatrix& m, Index nvars) {
    Index n = m.size();
    if (n == 0) return LaurentPoly::constant(nvars, Rat(1));
    if (n == 1) return m[0][0];
    LaurentPoly total(nvars);
    for (Index j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMatrix minor(n - 1);
        for (Index i = 1; i < n; ++i)
            for (Index c = 0; c < n; ++c)
                if (c != j) minor[i - 1].push_back(m[i][c]);
        LaurentPoly term = m[0][j] * poly_det(minor, nvars);
        total = (j % 2 == 0) ? total + term : total - term;
    }
    return total;
}

// Candidate free coordinates in preference order.
std::vector<std::pair<Index, Index>> candidates(const Seed& s, Side side) {
    std::vector<std::pair<Index, Index>> out;
    const auto& uf = s.unfrozen();
    const auto& fr = s.frozen();
    // frozen-frozen off-diagonal, column-major
    for (Index c : fr)
        for (Index r : fr)
            if (r != c) out.emplace_back(r, c);
    // off-block, row-major
    if (side == Side::A) {
        for (Index r : fr)
            for (Index c : uf) out.emplace_back(r, c);
    } else {
        for (Index r : uf)
            for (Index c : fr) out.emplace_back(r, c);
    }
    for (Index f : fr) out.emplace_back(f, f);
    return out;
}

// Rewrites the family so parameter a is the value of entry coords[a].
VariationFamily parametrize(VariationMap particular, const std::vector<RatMatrix>& raw) {
    VariationFamily fam;
    Index m = raw.size();
    if (m == 0) {
        fam.particular = std::move(particular);
        return fam;
    }
    std::vector<std::pair<Index, Index>> chosen;
    Index rank = 0;
    for (const auto& cand : candidates(particular.source, particular.side)) {
        RatMatrix T(m, chosen.size() + 1);
        for (Index a = 0; a < m; ++a) {
            for (Index j = 0; j < chosen.size(); ++j) T(a, j) = raw[a](chosen[j].first, chosen[j].second);
            T(a, chosen.size()) = raw[a](cand.first, cand.second);
        }
        Index r = T.rank();
        if (r > rank) {
            rank = r;
            chosen.push_back(cand);
            if (rank == m) break;
        }
    }
    if (rank != m) throw ConsistencyError(kMod, "family directions are not determined by free entries");
    RatMatrix T(m, m);
    for (Index a = 0; a < m; ++a)
        for (Index j = 0; j < m; ++j) T(a, j) = raw[a](chosen[j].first, chosen[j].second);
    RatMatrix Q = T.inv();
    Index n = particular.V.rows();
    for (Index j = 0; j < m; ++j) {
        RatMatrix u(n, n);
        for (Index a = 0; a < m; ++a)
            if (!Q(j, a).is_zero()) u += raw[a] * Q(j, a);
        fam.basis.push_back(std::move(u));
    }
    for (Index j = 0; j < m; ++j) {
        Rat v = particular.V(chosen[j].first, chosen[j].second);
        if (!v.is_zero()) particular.V -= fam.basis[j] * v;
    }
    fam.particular = std::move(particular);
    fam.coords = chosen;
    fam.names = parameter_names(m);
    return fam;
}

void require_similar(const Seed& a, const Seed& b, const Permutation& sigma) {
    if (!is_similarity(a, b, sigma)) throw InfeasibleError(kMod, "seeds are not similar via the given permutation");
}

}  // namespace

std::vector<std::string> parameter_names(Index dim) {
    static const std::vector<std::string> greek{"λ", "μ", "α", "β", "γ", "ν"};
    std::vector<std::string> out;
    for (Index i = 0; i < dim; ++i) out.push_back(dim <= greek.size() ? greek[i] : "p" + std::to_string(i + 1));
    return out;
}

std::string ascii_alias(const std::string& name) {
    static const std::vector<std::pair<std::string, std::string>> table{
        {"λ", "lambda"}, {"μ", "mu"}, {"α", "alpha"}, {"β", "beta"}, {"γ", "gamma"}, {"ν", "nu"}};
    for (const auto& [g, a] : table)
        if (g == name) return a;
    return name;
}

VariationMap VariationFamily::member(const RatVec& params) const {
    if (params.size() != basis.size()) throw ValidationError(kMod, "parameter count mismatch");
    VariationMap m = particular;
    for (Index a = 0; a < basis.size(); ++a)
        if (!params[a].is_zero()) m.V += basis[a] * params[a];
    return m;
}

LaurentPoly VariationFamily::entry_poly(Index i, Index j) const {
    Index m = basis.size();
    LaurentPoly p = LaurentPoly::constant(m, particular.V(i, j));
    for (Index a = 0; a < m; ++a)
        if (!basis[a](i, j).is_zero()) p = p + LaurentPoly::variable(m, a).scaled(basis[a](i, j));
    return p;
}

std::optional<Index> VariationFamily::param_index(const std::string& name) const {
    for (Index a = 0; a < names.size(); ++a)
        if (names[a] == name || ascii_alias(names[a]) == name) return a;
    return std::nullopt;
}

VariationFamily solve_M_variation(const Seed& t, const Seed& tp, const Permutation& sigma) {
    require_similar(t, tp, sigma);
    Index n = t.n();
    const auto& uf = t.unfrozen();
    const auto& fr = t.frozen();
    RatMatrix Ps = permutation_matrix(sigma, n);
    RatMatrix Y = (tp.B * Ps).sub(fr, uf);
    auto sol = solve_affine(t.B_tilde(), Y);
    if (!sol) throw InfeasibleError(kMod, "M-side variation system is inconsistent");
    VariationMap vm{Side::A, t, tp, sigma, Ps};
    vm.V.set_sub(fr, t.partition.all(), sol->particular);
    std::vector<RatMatrix> raw;
    for (const auto& b : sol->nullspace_basis) {
        RatMatrix full(n, n);
        full.set_sub(fr, t.partition.all(), b);
        raw.push_back(std::move(full));
    }
    VariationFamily fam = parametrize(std::move(vm), raw);
    Report chk = is_variation(fam.particular);
    if (!chk.ok()) throw ConsistencyError(kMod, "particular M-variation fails: " + chk.first_failure()->name);
    return fam;
}

VariationFamily solve_N_variation(const Seed& a, const Seed& b, const Permutation& tau) {
    require_similar(a, b, tau);
    Index n = a.n();
    const auto& uf = a.unfrozen();
    const auto& fr = a.frozen();
    RatMatrix Pt = permutation_matrix(tau, n);
    RatMatrix Wa = omega_from_seed(a).W, Wb = omega_from_seed(b).W;
    RatMatrix A = (Wb * Pt).sub(a.partition.all(), uf);
    auto sol = solve_affine(A, Wa.sub(fr, uf));
    if (!sol) throw InfeasibleError(kMod, "N-side variation system is inconsistent");
    VariationMap vm{Side::X, a, b, tau, Pt};
    vm.V.set_sub(a.partition.all(), fr, sol->particular.transpose());
    std::vector<RatMatrix> raw;
    for (const auto& x : sol->nullspace_basis) {
        RatMatrix full(n, n);
        full.set_sub(a.partition.all(), fr, x.transpose());
        raw.push_back(std::move(full));
    }
    VariationFamily fam = parametrize(std::move(vm), raw);
    Report chk = is_variation(fam.particular);
    if (!chk.ok()) throw ConsistencyError(kMod, "particular N-variation fails: " + chk.first_failure()->name);
    return fam;
}

PoissonFilter poisson_subfamily(const VariationFamily& fam, const RatMatrix& Fs, const RatMatrix& Ft) {
    PoissonFilter out;
    Index m = fam.dim();
    Index n = fam.particular.V.rows();
    PolyMatrix V = poly_matrix(fam);
    PolyMatrix R = mul(mul(transpose(V), lift(Ft, m), m), V, m);
    std::vector<RatVec> rows;
    RatVec rhs;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            LaurentPoly e = R[i][j] - LaurentPoly::constant(m, Fs(i, j));
            if (e.is_zero()) continue;
            RatVec row(m);
            Rat c;
            for (const auto& [exp, coef] : e.terms()) {
                Rat deg;
                for (Index a = 0; a < m; ++a) deg += exp[a];
                if (deg.is_zero()) {
                    c = coef;
                    continue;
                }
                if (deg != Rat(1)) {
                    out.status = PoissonFilter::Status::Nonlinear;
                    return out;
                }
                for (Index a = 0; a < m; ++a)
                    if (exp[a] == Rat(1)) row[a] = coef;
            }
            rows.push_back(row);
            rhs.push_back(-c);
        }
    if (rows.empty()) {
        out.status = PoissonFilter::Status::Linear;
        out.family = fam;
        return out;
    }
    if (m == 0) return out;  // constant, nonzero residual
    RatMatrix L(m, rows.size()), Y(1, rows.size());
    for (Index e = 0; e < rows.size(); ++e) {
        for (Index a = 0; a < m; ++a) L(a, e) = rows[e][a];
        Y(0, e) = rhs[e];
    }
    auto sol = solve_affine(L, Y);
    if (!sol) return out;
    VariationMap base = fam.member(sol->particular.row_vec(0));
    std::vector<RatMatrix> raw;
    for (const auto& q : sol->nullspace_basis) {
        RatMatrix w(n, n);
        for (Index a = 0; a < m; ++a)
            if (!q(0, a).is_zero()) w += fam.basis[a] * q(0, a);
        raw.push_back(std::move(w));
    }
    out.status = PoissonFilter::Status::Linear;
    out.family = parametrize(std::move(base), raw);
    if (!is_poisson(out.family->particular, Fs, Ft)) throw ConsistencyError(kMod, "Poisson subfamily base fails");
    return out;
}

PoissonFilter poisson_subfamily(const VariationFamily& fam) {
    if (fam.particular.side != Side::X) throw ValidationError(kMod, "A-side Poisson filter needs Lambda forms");
    return poisson_subfamily(fam, omega_from_seed(fam.particular.source).W,
                             omega_from_seed(fam.particular.target).W);
}

LaurentPoly det_polynomial(const VariationFamily& fam) { return poly_det(poly_matrix(fam), fam.dim()); }

IntegralRefinement integral_member(const VariationFamily& fam) {
    IntegralRefinement out;
    out.solution = integer_solution(fam.particular.V, fam.basis);
    if (out.solution.integral) {
        VariationMap m = fam.particular;
        m.V = *out.solution.integral;
        out.member = std::move(m);
    }
    auto fr = full_rank_check(fam.particular.source);
    out.witness_rows = fr.witness_rows;
    return out;
}

Report is_variation(const VariationMap& map) {
    Report r;
    const Seed& a = map.source;
    const Seed& b = map.target;
    Index n = a.n();
    bool shape = map.V.rows() == n && map.V.cols() == n && b.n() == n && map.sigma.size() == n;
    r.add("shape", shape);
    if (!shape) return r;
    r.add("similar via sigma", is_similarity(a, b, map.sigma));
    const auto& uf = a.unfrozen();
    if (map.side == Side::A) {
        bool rows_ok = true;
        for (Index k : uf) {
            RatVec expect(n);
            expect[k] = Rat(1);
            if (map.V.row_vec(map.sigma(k)) != expect) rows_ok = false;
        }
        r.add("unfrozen rows follow sigma", rows_ok);
        bool pstar = true;
        for (Index k : uf)
            if (map.V * a.B.col_vec(k) != b.B.col_vec(map.sigma(k))) pstar = false;
        r.add("var(p* e_k) = p* e'_{sigma k}", pstar);
    } else {
        bool cols_ok = true;
        for (Index k : uf) {
            RatVec expect(n);
            expect[map.sigma(k)] = Rat(1);
            if (map.V.col_vec(k) != expect) cols_ok = false;
        }
        r.add("unfrozen columns follow sigma", cols_ok);
        RatMatrix Wa = omega_from_seed(a).W, Wb = omega_from_seed(b).W;
        RatMatrix lhs = map.V.transpose() * Wb * map.V;
        r.add("omega(var e_i, var e_k) = omega(e_i, e_k) for unfrozen k",
              lhs.sub(a.partition.all(), uf) == Wa.sub(a.partition.all(), uf));
    }
    return r;
}

bool is_poisson(const VariationMap& map, const RatMatrix& Fs, const RatMatrix& Ft) {
    return map.V.transpose() * Ft * map.V == Fs;
}

bool is_poisson(const VariationMap& map) {
    if (map.side != Side::X) throw ValidationError(kMod, "A-side Poisson check needs Lambda forms");
    return is_poisson(map, omega_from_seed(map.source).W, omega_from_seed(map.target).W);
}

VariationMap pullback(const VariationMap& m) {
    if (m.side != Side::A) throw ValidationError(kMod, "pullback expects an M-side map");
    if (m.source.d.size() != m.target.d.size()) throw ValidationError(kMod, "dimension mismatch");
    for (Index k = 0; k < m.source.n(); ++k)
        if (m.source.d[k] != m.target.d[m.sigma(k)])
            throw ValidationError(kMod, "d does not match across the similarity");
    VariationMap out{Side::X, m.target, m.source, m.sigma.inverse(),
                     m.source.D_inv() * m.V.transpose() * m.target.D()};
    return out;
}

VariationMap inverse(const VariationMap& map) {
    auto inv = map.V.inverse();
    if (!inv) throw InfeasibleError(kMod, "variation map is not invertible");
    return VariationMap{map.side, map.target, map.source, map.sigma.inverse(), *inv};
}

bool is_lattice_bijection(const VariationMap& map) {
    return map.V.is_integer() && map.V.det().abs() == Rat(1);
}

VariationMap transport(const VariationMap& map, Index j) {
    map.source.require_unfrozen(j, kMod);
    Index sj = map.sigma(j);
    RatMatrix pa = trans_matrix(map.source, j, 1, map.side).P;
    RatMatrix pb = trans_matrix(map.target, sj, 1, map.side).P;
    VariationMap out{map.side, mutate_B(map.source, j), mutate_B(map.target, sj), map.sigma, pb * map.V * pa};
    Report chk = is_variation(out);
    if (!chk.ok()) throw ConsistencyError(kMod, "transported map is not a variation: " + chk.first_failure()->name);
    if (map.side == Side::X && is_poisson(map) && !is_poisson(out))
        throw ConsistencyError(kMod, "transport lost the Poisson property");
    if (is_lattice_bijection(map) != is_lattice_bijection(out))
        throw ConsistencyError(kMod, "transport changed lattice invertibility");
    return out;
}

Report transport_square_check(const VariationMap& map, Index j) {
    Report r;
    VariationMap moved = transport(map, j);
    Index n = map.source.n();
    for (Index i = 0; i < n; ++i) {
        RationalExpr g = RationalExpr::variable(n, i);
        RationalExpr lhs = apply_variation(map, mutate_expr(g, map.source, j, map.side));
        RationalExpr rhs = mutate_expr(apply_variation(moved, g), map.target, map.sigma(j), map.side);
        r.add("square on generator " + std::to_string(i + 1), lhs == rhs, lhs.str() + " vs " + rhs.str());
    }
    return r;
}

RationalExpr apply_variation(const VariationMap& map, const RationalExpr& expr) {
    if (expr.nvars() != map.source.n()) throw ValidationError(kMod, "expression does not live on the source seed");
    return expr.monomial_map(map.V);
}

}  // namespace ctw
