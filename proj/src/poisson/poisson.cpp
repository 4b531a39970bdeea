#include "ctw/poisson/poisson.hpp"

#include "ctw/error.hpp"
#include "ctw/exact/linear_solve.hpp"
#include "ctw/mutation/mutation.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "poisson-structures";

std::vector<Rat> deltas(const Seed& seed, std::int64_t alpha) {
    std::vector<Rat> out;
    for (Index k : seed.unfrozen()) out.push_back(Rat(static_cast<long>(alpha)) / Rat(static_cast<long>(seed.d[k])));
    return out;
}

// Unknowns λ_ij, i < j; equations (Λ B̃)_{ik} = rhs_ik.
struct LambdaSystem {
    RatMatrix M;  // equations x unknowns
    std::vector<std::pair<Index, Index>> unknowns;
};

LambdaSystem lambda_system(const Seed& seed) {
    Index n = seed.n();
    const auto& uf = seed.unfrozen();
    LambdaSystem s;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) s.unknowns.emplace_back(i, j);
    s.M = RatMatrix(n * uf.size(), s.unknowns.size());
    for (Index u = 0; u < s.unknowns.size(); ++u) {
        auto [i, j] = s.unknowns[u];
        for (Index c = 0; c < uf.size(); ++c) {
            // Λ_ij = +x, Λ_ji = -x
            s.M(i * uf.size() + c, u) += seed.B(j, uf[c]);
            s.M(j * uf.size() + c, u) -= seed.B(i, uf[c]);
        }
    }
    return s;
}

RatMatrix assemble(const LambdaSystem& s, Index n, const RatMatrix& row) {
    RatMatrix L(n, n);
    for (Index u = 0; u < s.unknowns.size(); ++u) {
        auto [i, j] = s.unknowns[u];
        L(i, j) = row(0, u);
        L(j, i) = -row(0, u);
    }
    return L;
}
}  // namespace

OmegaForm omega_from_seed(const Seed& seed) {
    OmegaForm w{seed.B.transpose() * seed.D()};
    if (!w.W.is_skew()) throw ConsistencyError(kMod, "omega is not skew-symmetric");
    return w;
}

Report check_compatible(const RatMatrix& L, const Seed& seed, std::optional<std::int64_t> alpha) {
    Report r;
    Index n = seed.n();
    const auto& uf = seed.unfrozen();
    r.add("shape", L.rows() == n && L.cols() == n);
    if (L.rows() != n || L.cols() != n) return r;
    r.add("skew-symmetric", L.is_skew());
    r.add("integral", L.is_integer());
    RatMatrix P = L * seed.B_tilde();
    bool offdiag = true, positive = true, uniform = true;
    std::optional<Rat> a;
    for (Index c = 0; c < uf.size(); ++c) {
        for (Index i = 0; i < n; ++i)
            if (i != uf[c] && !P(i, c).is_zero()) offdiag = false;
        Rat dk = -P(uf[c], c);
        if (dk.sign() <= 0 || !dk.is_integer()) positive = false;
        Rat ak = dk * Rat(static_cast<long>(seed.d[uf[c]]));
        if (a && *a != ak) uniform = false;
        a = ak;
    }
    r.add("Lambda B-tilde vanishes off the diagonal", offdiag);
    r.add("delta_k positive integers", positive);
    r.add("delta_k d_k independent of k", uniform);
    if (alpha && a) r.add("alpha matches", *a == Rat(static_cast<long>(*alpha)), a->str());
    return r;
}

LambdaForm solve_compatible_lambda(const Seed& seed, std::optional<std::int64_t> alpha, std::int64_t max_multiple) {
    if (!full_rank_check(seed).is_full_rank)
        throw InfeasibleError(kMod, "B-tilde is not of full rank; no compatible Lambda exists");
    Index n = seed.n();
    const auto& uf = seed.unfrozen();
    LambdaSystem sys = lambda_system(seed);
    auto attempt = [&](std::int64_t a) -> std::optional<LambdaForm> {
        auto dl = deltas(seed, a);
        for (const auto& x : dl)
            if (!x.is_integer()) return std::nullopt;
        RatMatrix rhs(1, n * uf.size());
        for (Index c = 0; c < uf.size(); ++c) rhs(0, uf[c] * uf.size() + c) = -dl[c];
        if (sys.unknowns.empty()) return std::nullopt;
        auto fam = solve_affine(sys.M.transpose(), rhs);
        if (!fam) return std::nullopt;
        auto is = integer_solution(fam->particular, fam->nullspace_basis);
        if (!is.integral) return std::nullopt;
        return LambdaForm{assemble(sys, n, *is.integral), dl, a, fam->dim()};
    };
    std::optional<LambdaForm> out;
    if (alpha) {
        if (*alpha <= 0) throw ValidationError(kMod, "alpha must be positive");
        out = attempt(*alpha);
        if (!out) throw InfeasibleError(kMod, "no integer compatible Lambda for alpha = " + std::to_string(*alpha));
    } else {
        std::int64_t base = 1;
        for (Index k : uf) base = lcm64(base, seed.d[k]);
        for (std::int64_t m = 1; m <= max_multiple && !out; ++m) out = attempt(checked_mul(base, m));
        if (!out) throw InfeasibleError(kMod, "no integer compatible Lambda within the alpha search bound");
    }
    Report chk = check_compatible(out->Lambda, seed, out->alpha);
    if (!chk.ok()) throw ConsistencyError(kMod, "solved Lambda fails compatibility: " + chk.first_failure()->name);
    return *out;
}

LambdaForm mutate_lambda(const LambdaForm& form, const Seed& seed, Index k) {
    Report in = check_compatible(form.Lambda, seed, form.alpha);
    if (!in.ok()) throw ValidationError(kMod, "input Lambda is not compatible: " + in.first_failure()->name);
    auto Pp = trans_matrix(seed, k, 1, Side::A).P;
    auto Pm = trans_matrix(seed, k, -1, Side::A).P;
    RatMatrix Lp = Pp.transpose() * form.Lambda * Pp;
    RatMatrix Lm = Pm.transpose() * form.Lambda * Pm;
    if (!(Lp == Lm)) throw ConsistencyError(kMod, "mutated Lambda depends on the sign");
    Seed tp = mutate_B(seed, k);
    Report out = check_compatible(Lp, tp, form.alpha);
    if (!out.ok()) throw ConsistencyError(kMod, "mutated Lambda is not compatible: " + out.first_failure()->name);
    return LambdaForm{Lp, deltas(tp, form.alpha), form.alpha, form.family_dim};
}

RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, const RatMatrix& c) {
    Index n = f.nvars();
    if (g.nvars() != n || c.rows() != n || c.cols() != n) throw ValidationError(kMod, "bracket arity mismatch");
    if (f.is_zero() || g.is_zero()) return RationalExpr(n);
    std::vector<RationalExpr> lf, lg;
    for (Index i = 0; i < n; ++i) {
        lf.push_back(f.log_euler(i));
        lg.push_back(g.log_euler(i));
    }
    std::vector<RationalExpr> terms;
    for (Index i = 0; i < n; ++i) {
        if (lf[i].is_zero()) continue;
        for (Index j = 0; j < n; ++j) {
            if (c(i, j).is_zero() || lg[j].is_zero()) continue;
            terms.push_back(lf[i] * lg[j] * RationalExpr::constant(n, c(i, j)));
        }
    }
    if (terms.empty()) return RationalExpr(n);
    return f * g * RationalExpr::sum(terms);
}

Report check_lambda_omega_link(const LambdaForm& form, const Seed& seed) {
    Report r;
    const auto& uf = seed.unfrozen();
    RatMatrix W = omega_from_seed(seed).W;
    RatMatrix Bt = seed.B_tilde();
    RatMatrix lhs = Bt.transpose() * form.Lambda * Bt;
    RatMatrix rhs = W.sub(uf, uf) * Rat(static_cast<long>(-form.alpha));
    r.add("B-tilde^T Lambda B-tilde = -alpha W_uf", lhs == rhs, lhs.str() + " vs " + rhs.str());
    // ⟨f_l, e_j⟩ = δ_lj / d_j
    bool pair_ok = true;
    for (Index i = 0; i < seed.n() && pair_ok; ++i)
        for (Index j = 0; j < seed.n(); ++j) {
            Rat v = seed.B(j, i) / Rat(static_cast<long>(seed.d[j]));
            if (v != W(i, j)) {
                pair_ok = false;
                break;
            }
        }
    r.add("<p* e_i, e_j> = omega(e_i, e_j)", pair_ok);
    return r;
}

}  // namespace ctw
