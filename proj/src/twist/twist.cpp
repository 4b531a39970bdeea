#include "ctw/twist/twist.hpp"

#include <random>

#include "ctw/error.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "twist-builder";

RationalExpr gen(Index n, Index i) { return RationalExpr::variable(n, i); }

IndexList reversed(IndexList s) {
    std::reverse(s.begin(), s.end());
    return s;
}

RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b, const IndexList& uf, const IndexList& fr, Index n) {
    RatMatrix out(n, n);
    out.set_sub(uf, uf, a);
    out.set_sub(fr, fr, b);
    return out;
}

RatMatrix uf_perm(const Permutation& sigma, const IndexList& uf) {
    Index m = uf.size();
    RatMatrix P(m, m);
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b)
            if (sigma(uf[a]) == uf[b]) P(b, a) = Rat(1);
    return P;
}

RationalExpr random_small(std::mt19937& rng, Index n) {
    std::uniform_int_distribution<int> ex(-2, 2), kind(0, 2);
    std::vector<std::int64_t> e1(n), e2(n);
    for (auto& x : e1) x = ex(rng);
    for (auto& x : e2) x = ex(rng);
    RationalExpr m1 = RationalExpr::monomial(n, ExpVec(e1, 1));
    RationalExpr m2 = RationalExpr::monomial(n, ExpVec(e2, 1));
    switch (kind(rng)) {
        case 0: return m1;
        case 1: return m1 + m2;
        default: return m1 * (RationalExpr::constant(n, Rat(1)) + m2);
    }
}

}  // namespace

std::string to_string(TwistKind k) {
    switch (k) {
        case TwistKind::DT: return "dt";
        case TwistKind::Principal: return "principal";
        default: return "custom";
    }
}

TwistSpec make_twist(const Seed& base, const IndexList& seq, const VariationMap& var, TwistKind kind) {
    for (Index k : seq) base.require_unfrozen(k, kMod);
    if (var.source.B != base.B || var.source.d != base.d) throw ValidationError(kMod, "variation does not start at the base seed");
    Seed end = mutate_B(base, seq);
    if (var.target.B != end.B) throw ValidationError(kMod, "variation does not end at the mutated seed");
    Report chk = is_variation(var);
    if (!chk.ok()) throw ValidationError(kMod, "not a variation map: " + chk.first_failure()->name);
    return TwistSpec{kind, var.side, base, seq, var.sigma, var, false};
}

RationalExpr apply_twist(const TwistSpec& spec, const RationalExpr& expr) {
    if (expr.nvars() != spec.base.n()) throw ValidationError(kMod, "expression does not live on the twist's seed");
    if (!spec.mutation_first) return pull_back(apply_variation(spec.variation, expr), spec.base, spec.seq, spec.side);
    return apply_variation(spec.variation, pull_back(expr, spec.variation.source, spec.seq, spec.side));
}

TwistSpec invert_twist(const TwistSpec& spec) {
    TwistSpec out = spec;
    out.variation = inverse(spec.variation);
    out.sigma = out.variation.sigma;
    out.mutation_first = !spec.mutation_first;
    // μ*_{seq} from base is undone by μ*_{reversed seq} from the endpoint
    out.seq = reversed(spec.seq);
    return out;
}

DTTwist build_dt_twist(const Seed& t, Index max_depth) {
    auto search = find_t1(t, max_depth);
    if (!search.witness) throw InfeasibleError(kMod, "no t[1] within depth " + std::to_string(max_depth));
    DTTwist out;
    out.witness = *search.witness;
    const auto& w = out.witness;
    auto traj = run_trajectory(t, w.seq);
    Index n = t.n();
    RatMatrix F = traj.F_final(), E = traj.E_final();
    auto Finv = F.inverse(), Einv = E.inverse();
    if (!Finv || !Einv) throw ConsistencyError(kMod, "transition products are singular");
    VariationMap vM{Side::A, t, w.t1, w.sigma, -*Finv};
    VariationMap vN{Side::X, t, w.t1, w.sigma, -*Einv};
    Report rM = is_variation(vM), rN = is_variation(vN);
    if (!rM.ok()) throw ConsistencyError(kMod, "-F⁻¹ is not a variation: " + rM.first_failure()->name);
    if (!rN.ok()) throw ConsistencyError(kMod, "-E⁻¹ is not a variation: " + rN.first_failure()->name);
    RatMatrix minus_id = -RatMatrix::identity(n);
    if (F * vM.V != minus_id || E * vN.V != minus_id) throw ConsistencyError(kMod, "ψ∘var ≠ -Id");
    if (inverse(pullback(vM)).V != vN.V) throw ConsistencyError(kMod, "var^N is not the inverse pullback of var^M");
    if (!is_poisson(vN)) throw ConsistencyError(kMod, "var^N does not preserve ω");
    if (full_rank_check(t).is_full_rank) {
        LambdaForm L = solve_compatible_lambda(t);
        LambdaForm Lp = L;
        Seed cur = t;
        for (Index k : w.seq) {
            Lp = mutate_lambda(Lp, cur, k);
            cur = mutate_B(cur, k);
        }
        if (!is_poisson(vM, L.Lambda, Lp.Lambda)) throw ConsistencyError(kMod, "var^M does not preserve Λ");
        out.lambda = L;
    }
    out.twA = make_twist(t, w.seq, vM, TwistKind::DT);
    out.twX = make_twist(t, w.seq, vN, TwistKind::DT);
    Report pc = p_commutation_check(out.twA, out.twX);
    if (!pc.ok()) throw ConsistencyError(kMod, "p* does not intertwine the DT twists: " + pc.first_failure()->name);
    return out;
}

Seed make_principal(const RatMatrix& B_uf, const std::vector<std::int64_t>& d_uf) {
    Index m = B_uf.rows();
    if (B_uf.cols() != m || d_uf.size() != m) throw ValidationError(kMod, "principal block shape mismatch");
    RatMatrix B(2 * m, 2 * m);
    std::vector<std::int64_t> d(2 * m);
    IndexList frozen;
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < m; ++j) B(i, j) = B_uf(i, j);
        B(i, m + i) = Rat(-1);
        B(m + i, i) = Rat(1);
        d[i] = d[m + i] = d_uf[i];
        frozen.push_back(m + i);
    }
    return Seed::make(B, d, frozen);
}

PrincipalTwist build_principal_twist(const Seed& t0, const IndexList& seq) {
    const auto& uf = t0.unfrozen();
    const auto& fr = t0.frozen();
    Index m = uf.size(), n = t0.n();
    if (fr.size() != m) throw ValidationError(kMod, "principal seed needs as many frozen as unfrozen vertices");
    for (Index a = 0; a < m; ++a) {
        if (t0.d[fr[a]] != t0.d[uf[a]]) throw ValidationError(kMod, "principal seed needs the repeated symmetrizer");
        for (Index b = 0; b < m; ++b) {
            Rat low = a == b ? Rat(1) : Rat(0);
            if (t0.B(fr[a], uf[b]) != low || t0.B(uf[a], fr[b]) != -low || !t0.B(fr[a], fr[b]).is_zero())
                throw ValidationError(kMod, "seed is not of principal shape");
        }
    }
    auto traj = run_trajectory(t0, seq);
    const Seed& t = traj.final_seed();
    auto sims = find_similarities(t0, t);
    if (sims.empty()) throw InfeasibleError(kMod, "endpoint is not similar to the principal seed");
    const Permutation& sigma = sims.front();
    PrincipalTwist out;
    out.C = traj.C(seq.size());
    out.G = traj.G(seq.size());
    RatMatrix Bt_low = t.B.sub(fr, uf);
    if (Bt_low != out.C) throw ConsistencyError(kMod, "frozen block of B(t) is not C");
    auto Ginv = out.G.inverse();
    if (!Ginv || t.B.sub(uf, fr) != -*Ginv) throw ConsistencyError(kMod, "upper block of B(t) is not -G⁻¹");
    RatMatrix Ps = uf_perm(sigma, uf);
    VariationMap vM{Side::A, t0, t, sigma, block_diag(Ps, out.C * Ps, uf, fr, n)};
    VariationMap vN{Side::X, t0, t, sigma, block_diag(Ps, out.G * Ps, uf, fr, n)};
    Report rM = is_variation(vM), rN = is_variation(vN);
    if (!rM.ok()) throw ConsistencyError(kMod, "diag(Id, C) is not a variation: " + rM.first_failure()->name);
    if (!rN.ok()) throw ConsistencyError(kMod, "diag(Id, G) is not a variation: " + rN.first_failure()->name);
    if (inverse(pullback(vM)).V != vN.V) throw ConsistencyError(kMod, "var^N is not the inverse pullback of var^M");

    // Λ = α B^{-T} D on the principal seed
    auto Binv = t0.B.inverse();
    if (!Binv) throw ConsistencyError(kMod, "principal B is singular");
    RatMatrix L0 = Binv->transpose() * t0.D();
    Integer den = L0.common_denominator();
    std::int64_t alpha = den.get_si();
    L0 = L0 * Rat(den);
    if (!check_compatible(L0, t0, alpha).ok()) throw ConsistencyError(kMod, "α B^{-T} D is not compatible");
    LambdaForm L{L0, {}, alpha, 0};
    for (Index k = 0; k < m; ++k) L.delta.push_back(Rat(alpha) / Rat(static_cast<long>(t0.d[uf[k]])));
    LambdaForm Lt = L;
    for (Index s = 0; s < seq.size(); ++s) Lt = mutate_lambda(Lt, traj.seeds[s], seq[s]);
    if (!is_poisson(vM, L.Lambda, Lt.Lambda)) throw ConsistencyError(kMod, "VᵀΛ(t)V ≠ Λ");
    if (!is_poisson(vN)) throw ConsistencyError(kMod, "VᵀW(t)V ≠ W");
    out.lambda = L;
    out.composites = {vM.V * t0.B, t.B * vN.V};
    if (out.composites[0] != out.composites[1]) throw ConsistencyError(kMod, "p* square composites differ");
    out.twA = make_twist(t0, seq, vM, TwistKind::Principal);
    out.twX = make_twist(t0, seq, vN, TwistKind::Principal);
    Report pc = p_commutation_check(out.twA, out.twX);
    if (!pc.ok()) throw ConsistencyError(kMod, "p* does not intertwine the principal twists");
    return out;
}

RationalExpr apply_p_star(const Seed& seed, const RationalExpr& x_expr) {
    if (x_expr.nvars() != seed.n()) throw ValidationError(kMod, "expression does not live on the seed");
    return x_expr.monomial_map(seed.B);
}

Report p_commutation_check(const TwistSpec& twA, const TwistSpec& twX) {
    Report r;
    if (twA.side != Side::A || twX.side != Side::X) throw ValidationError(kMod, "p* commutation needs an A-twist and an X-twist");
    if (twA.base.B != twX.base.B) throw ValidationError(kMod, "twists live on different seeds");
    const Seed& t = twX.base;
    Index n = t.n();
    for (Index i = 0; i < n; ++i) {
        RationalExpr lhs = apply_p_star(t, apply_twist(twX, gen(n, i)));
        RationalExpr rhs = apply_twist(twA, apply_p_star(t, gen(n, i)));
        r.add("p*(tw^X(X" + std::to_string(i + 1) + ")) = tw^A(p*(X" + std::to_string(i + 1) + "))", lhs == rhs,
              lhs.str("A") + " vs " + rhs.str("A"));
    }
    return r;
}

std::vector<BasisImage> basis_images(const TwistSpec& spec, const std::vector<RationalExpr>& family) {
    std::vector<BasisImage> out;
    const auto& uf = spec.base.unfrozen();
    for (const auto& f : family) {
        RationalExpr img = apply_twist(spec, f);
        BasisImage bi{std::nullopt, RationalExpr::constant(img.nvars(), Rat(1))};
        for (Index j = 0; j < family.size(); ++j) {
            RationalExpr ratio = img / family[j];
            if (!ratio.is_monomial() || !ratio.coeff().is_one()) continue;
            bool frozen_only = true;
            for (Index k : uf)
                if (!ratio.mono()[k].is_zero()) frozen_only = false;
            if (!frozen_only) continue;
            bi.index = j;
            bi.factor = ratio;
            break;
        }
        out.push_back(std::move(bi));
    }
    return out;
}

Report verify_twist(const TwistSpec& spec, const VerifyOptions& opts) {
    Report r;
    Index n = spec.base.n();
    if (opts.poisson) {
        std::optional<RatMatrix> c = opts.bracket;
        if (!c && spec.side == Side::X) c = bracket_matrix(omega_from_seed(spec.base));
        if (!c) {
            r.add("poisson", false, "A-side check needs a Λ bracket");
        } else {
            bool ok = true;
            std::string detail;
            for (Index i = 0; i < n && ok; ++i)
                for (Index j = i + 1; j < n && ok; ++j) {
                    auto lhs = poisson_bracket(apply_twist(spec, gen(n, i)), apply_twist(spec, gen(n, j)), *c);
                    auto rhs = apply_twist(spec, poisson_bracket(gen(n, i), gen(n, j), *c));
                    if (lhs != rhs) {
                        ok = false;
                        detail = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                    }
                }
            r.add("poisson", ok, detail);
        }
    }
    if (opts.p_partner) r.merge(p_commutation_check(*opts.p_partner, spec), "p_commutation: ");
    if (opts.homomorphism) {
        std::mt19937 rng(opts.rng_seed);
        bool ok = true;
        for (unsigned s = 0; s < opts.random_pairs && ok; ++s) {
            RationalExpr f = random_small(rng, n), g = random_small(rng, n);
            if (apply_twist(spec, f * g) != apply_twist(spec, f) * apply_twist(spec, g)) ok = false;
            if (apply_twist(spec, f + g) != apply_twist(spec, f) + apply_twist(spec, g)) ok = false;
        }
        r.add("homomorphism", ok);
    }
    if (!opts.basis_family.empty()) {
        auto imgs = basis_images(spec, opts.basis_family);
        std::vector<bool> hit(opts.basis_family.size(), false);
        bool all_found = true, injective = true;
        for (const auto& bi : imgs) {
            if (!bi.index) {
                all_found = false;
                continue;
            }
            if (hit[*bi.index]) injective = false;
            hit[*bi.index] = true;
        }
        r.add("basis_permutation: images in family up to frozen monomials", all_found);
        r.add("basis_permutation: injective", injective);
    }
    return r;
}

}  // namespace ctw
