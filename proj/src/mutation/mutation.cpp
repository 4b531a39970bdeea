#include "ctw/mutation/mutation.hpp"

#include <map>
#include <set>
#include <string>

#include "ctw/error.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "mutation-engine";

void require_sign(int eps) {
    if (eps != 1 && eps != -1) throw ValidationError(kMod, "sign must be +1 or -1");
}

// 1 + X^v as a RationalExpr in n variables.
RationalExpr one_plus_monomial(Index n, const RatVec& v) {
    LaurentPoly p = LaurentPoly::constant(n, Rat(1)) + LaurentPoly::monomial(n, ExpVec::from_rats(v));
    return RationalExpr(p);
}

RatVec scaled(RatVec v, int eps) {
    for (auto& x : v) x *= Rat(eps);
    return v;
}

std::string key_of(const RatMatrix& B, const RatMatrix& C) { return B.str() + "|" + C.str(); }
}  // namespace

TransitionMatrix trans_matrix(const Seed& seed, Index k, int eps, Side side) {
    seed.require_unfrozen(k, kMod);
    require_sign(eps);
    Index n = seed.n();
    RatMatrix P = RatMatrix::identity(n);
    if (side == Side::X) {
        for (Index j = 0; j < n; ++j) P(k, j) = (Rat(eps) * seed.B(k, j)).pos();
    } else {
        for (Index i = 0; i < n; ++i) P(i, k) = (Rat(-eps) * seed.B(i, k)).pos();
    }
    P(k, k) = Rat(-1);
    return {P, side, k, eps};
}

Report verify_matrix_identities(const Seed& seed, Index k, int eps, const std::optional<RatMatrix>& Lambda) {
    Report r;
    auto PN = trans_matrix(seed, k, eps, Side::X).P;
    auto PM = trans_matrix(seed, k, eps, Side::A).P;
    Index n = seed.n();
    RatMatrix Id = RatMatrix::identity(n);
    Seed tp = mutate_B(seed, k);
    auto PNp = trans_matrix(tp, k, -eps, Side::X).P;
    auto PMp = trans_matrix(tp, k, -eps, Side::A).P;
    r.add("P^N involution", PN * PN == Id);
    r.add("P^M involution", PM * PM == Id);
    r.add("P^N_{k,-eps}(t') P^N_{k,eps}(t) = Id", PNp * PN == Id);
    r.add("P^M_{k,-eps}(t') P^M_{k,eps}(t) = Id", PMp * PM == Id);
    r.add("D P^M D^-1 = (P^N)^-T", seed.D() * PM * seed.D_inv() == PN.inv().transpose());
    r.add("B' = P^M B P^N", tp.B == PM * seed.B * PN);
    if (Lambda) {
        RatMatrix Lp = PM.transpose() * (*Lambda) * PM;
        RatMatrix prod = (*Lambda) * seed.B_tilde();
        RatMatrix prodp = Lp * tp.B_tilde();
        // compatibility with the same δ
        bool ok = Lp.is_skew();
        const auto& uf = seed.unfrozen();
        for (Index i = 0; i < n && ok; ++i)
            for (Index c = 0; c < uf.size() && ok; ++c) {
                Index kk = uf[c];
                Rat expect = (i == kk) ? prod(kk, c) : Rat(0);
                if (prodp(i, c) != expect) ok = false;
            }
        r.add("Lambda' = (P^M)^T Lambda P^M compatible with B'", ok, Lp.str());
    }
    return r;
}

std::vector<RationalExpr> mutation_images(const Seed& t, Index k, Side side, int eps) {
    t.require_unfrozen(k, kMod);
    require_sign(eps);
    Index n = t.n();
    std::vector<RationalExpr> img;
    img.reserve(n);
    if (side == Side::X) {
        RationalExpr Xk = RationalExpr::variable(n, k);
        RationalExpr onep = one_plus_monomial(n, scaled(RatVec(ExpVec::unit(n, k).to_rats()), eps));
        for (Index i = 0; i < n; ++i) {
            if (i == k) {
                img.push_back(Xk.inverse());
                continue;
            }
            const Rat& bki = t.B(k, i);
            RationalExpr e = RationalExpr::variable(n, i);
            Rat pe = (Rat(eps) * bki).pos();
            if (!pe.is_zero()) e = e * Xk.pow(pe.to_int64());
            if (!bki.is_zero()) e = e * onep.pow(-bki.to_int64());
            img.push_back(e);
        }
    } else {
        for (Index i = 0; i < n; ++i) {
            if (i != k) {
                img.push_back(RationalExpr::variable(n, i));
                continue;
            }
            ExpVec m = ExpVec::unit(n, k, -1);
            RatVec add(n, Rat(0));
            for (Index j = 0; j < n; ++j) add[j] = (Rat(-eps) * t.B(j, k)).pos();
            m = m + ExpVec::from_rats(add);
            RationalExpr e = RationalExpr::monomial(n, m);
            e = e * one_plus_monomial(n, scaled(t.B.col_vec(k), eps));
            img.push_back(e);
        }
    }
    return img;
}

RationalExpr mutate_expr(const RationalExpr& expr, const Seed& t, Index k, Side side, int eps) {
    if (expr.nvars() != t.n()) throw ValidationError(kMod, "expression arity does not match seed");
    return expr.substitute(mutation_images(t, k, side, eps));
}

RationalExpr pull_back(const RationalExpr& expr, const Seed& t0, const IndexList& seq, Side side) {
    std::vector<Seed> seeds{t0};
    for (Index k : seq) seeds.push_back(mutate_B(seeds.back(), k));
    RationalExpr cur = expr;
    for (Index s = seq.size(); s-- > 0;) cur = mutate_expr(cur, seeds[s], seq[s], side);
    return cur;
}

RationalExpr push_forward(const RationalExpr& expr, const Seed& t0, const IndexList& seq, Side side) {
    Seed cur_seed = t0;
    RationalExpr cur = expr;
    for (Index k : seq) {
        cur_seed = mutate_B(cur_seed, k);
        cur = mutate_expr(cur, cur_seed, k, side);
    }
    return cur;
}

RationalExpr apply_psi(const RationalExpr& expr, const Seed& t, Index k, int eps, Side side) {
    return expr.monomial_map(trans_matrix(t, k, eps, side).P);
}

RationalExpr apply_rho(const RationalExpr& expr, const Seed& t, Index k, int eps, Side side, bool inverse) {
    t.require_unfrozen(k, kMod);
    require_sign(eps);
    Index n = t.n();
    std::vector<RationalExpr> img;
    if (side == Side::X) {
        RationalExpr onep = one_plus_monomial(n, scaled(ExpVec::unit(n, k).to_rats(), eps));
        for (Index i = 0; i < n; ++i) {
            RationalExpr e = RationalExpr::variable(n, i);
            const Rat& bki = t.B(k, i);
            if (!bki.is_zero()) e = e * onep.pow(inverse ? bki.to_int64() : -bki.to_int64());
            img.push_back(e);
        }
    } else {
        for (Index i = 0; i < n; ++i) {
            RationalExpr e = RationalExpr::variable(n, i);
            if (i == k) e = e * one_plus_monomial(n, scaled(t.B.col_vec(k), eps)).pow(inverse ? 1 : -1);
            img.push_back(e);
        }
    }
    return expr.substitute(img);
}

Report hamiltonian_decompose_check(const Seed& seed, Index k, int eps, Side side) {
    Report r;
    Index n = seed.n();
    Seed tp = mutate_B(seed, k);
    auto direct = mutation_images(seed, k, side, eps);
    std::string s = std::string(side_name(side)) + " eps=" + (eps > 0 ? "+" : "-") + " ";
    for (Index i = 0; i < n; ++i) {
        RationalExpr g = RationalExpr::variable(n, i);
        RationalExpr lhs = apply_rho(apply_psi(g, seed, k, eps, side), seed, k, eps, side);
        RationalExpr rhs = apply_psi(apply_rho(g, tp, k, -eps, side, true), seed, k, eps, side);
        std::string name = s + "generator " + std::to_string(i + 1);
        r.add(name + ": mu* = rho o psi", lhs == direct[i], lhs.str(var_prefix(side)));
        r.add(name + ": rho o psi = psi o rho'(-eps)", lhs == rhs, rhs.str(var_prefix(side)));
    }
    return r;
}

std::optional<int> coherent_sign(const RatVec& v) {
    int s = 0;
    for (const auto& x : v) {
        int xs = x.sign();
        if (xs == 0) continue;
        if (s == 0) s = xs;
        else if (s != xs) return std::nullopt;
    }
    return s;
}

RatMatrix SeedTrajectory::C(Index s) const {
    const auto& uf = seeds.front().unfrozen();
    return E.at(s).sub(uf, uf);
}
RatMatrix SeedTrajectory::G(Index s) const {
    const auto& uf = seeds.front().unfrozen();
    return F.at(s).sub(uf, uf);
}
IndexList SeedTrajectory::sequence() const {
    IndexList out;
    for (const auto& st : steps) out.push_back(st.k);
    return out;
}

SeedTrajectory run_trajectory(const Seed& t0, const IndexList& seq) {
    SeedTrajectory tr;
    Index n = t0.n();
    tr.seeds.push_back(t0);
    tr.E.push_back(RatMatrix::identity(n));
    tr.F.push_back(RatMatrix::identity(n));
    const auto& uf = t0.unfrozen();
    const auto& fr = t0.frozen();
    RatMatrix D = t0.D();
    for (Index k : seq) {
        const Seed& t = tr.seeds.back();
        t.require_unfrozen(k, kMod);
        RatVec ck = tr.E.back().sub(uf, {k}).col_vec(0);
        auto sg = coherent_sign(ck);
        if (!sg || *sg == 0)
            throw ConsistencyError(kMod, "c-vector " + std::to_string(k + 1) + " is not sign-coherent");
        int eps = *sg;
        RatMatrix E = tr.E.back() * trans_matrix(t, k, eps, Side::X).P;
        RatMatrix F = tr.F.back() * trans_matrix(t, k, eps, Side::A).P;
        for (Index j = 0; j < n; ++j) {
            if (!coherent_sign(E.col_vec(j)))
                throw ConsistencyError(kMod, "column " + std::to_string(j + 1) + " of E not sign-coherent");
            if (!coherent_sign(F.row_vec(j)))
                throw ConsistencyError(kMod, "row " + std::to_string(j + 1) + " of F not sign-coherent");
        }
        if (!(E.transpose() * D * F == D)) throw ConsistencyError(kMod, "E^T D F != D");
        if (!E.sub(fr, uf).is_zero() || !(E.sub(fr, fr) == RatMatrix::identity(fr.size())))
            throw ConsistencyError(kMod, "E lost its block form");
        if (!F.sub(uf, fr).is_zero() || !(F.sub(fr, fr) == RatMatrix::identity(fr.size())))
            throw ConsistencyError(kMod, "F lost its block form");
        tr.steps.push_back({k, eps});
        tr.seeds.push_back(mutate_B(t, k));
        tr.E.push_back(std::move(E));
        tr.F.push_back(std::move(F));
    }
    return tr;
}

std::vector<RationalExpr> cluster_in_initial(const Seed& t0, const IndexList& seq, Side side) {
    Index n = t0.n();
    std::vector<RationalExpr> out;
    Seed t = t0;
    if (side == Side::A) {
        std::vector<LaurentPoly> cur;
        for (Index i = 0; i < n; ++i) cur.push_back(LaurentPoly::variable(n, i));
        for (Index k : seq) {
            t.require_unfrozen(k, kMod);
            LaurentPoly plus = LaurentPoly::constant(n, Rat(1)), minus = LaurentPoly::constant(n, Rat(1));
            for (Index j = 0; j < n; ++j) {
                const Rat& b = t.B(j, k);
                if (b.sign() > 0) plus = plus * cur[j].pow(b.to_int64());
                else if (b.sign() < 0) minus = minus * cur[j].pow((-b).to_int64());
            }
            auto q = exact_divide(plus + minus, cur[k]);
            if (!q) throw ConsistencyError(kMod, "exchange relation is not Laurent at vertex " + std::to_string(k + 1));
            cur[k] = std::move(*q);
            t = mutate_B(t, k);
        }
        for (auto& p : cur) out.emplace_back(p);
        return out;
    }
    std::vector<RationalExpr> cur;
    for (Index i = 0; i < n; ++i) cur.push_back(RationalExpr::variable(n, i));
    RationalExpr one = RationalExpr::constant(n, Rat(1));
    for (Index k : seq) {
        t.require_unfrozen(k, kMod);
        RationalExpr xk = cur[k];
        RationalExpr onep = RationalExpr::sum({one, xk});
        std::vector<RationalExpr> next(n);
        for (Index i = 0; i < n; ++i) {
            if (i == k) {
                next[i] = xk.inverse();
                continue;
            }
            const Rat& b = t.B(k, i);
            RationalExpr e = cur[i];
            if (b.sign() > 0) e = e * xk.pow(b.to_int64());
            if (!b.is_zero()) e = e * onep.pow(-b.to_int64());
            next[i] = e;
        }
        cur = std::move(next);
        t = mutate_B(t, k);
    }
    return cur;
}

ClusterExpansion expand_cluster_variable(const Seed& t0, const IndexList& seq, Index i, Side side) {
    if (i >= t0.n()) throw ValidationError(kMod, "vertex out of range");
    SeedTrajectory tr = run_trajectory(t0, seq);
    auto all = cluster_in_initial(t0, seq, side);
    ClusterExpansion ce{all[i], ExpVec(t0.n()), std::nullopt, std::nullopt};
    if (side == Side::A) {
        ExpVec expected = ExpVec::from_rats(tr.F_final().col_vec(i));
        auto lp = all[i].to_laurent();
        if (!lp) throw ConsistencyError(kMod, "A-side cluster variable is not Laurent");
        if (full_rank_check(t0).is_full_rank) {
            auto pd = pointed_decompose(*lp, t0, Side::A);
            if (!pd) throw ConsistencyError(kMod, "A-side cluster variable is not pointed");
            if (!(pd->degree == expected))
                throw ConsistencyError(kMod, "degree " + pd->degree.str() + " differs from col F = " + expected.str());
            ce.pointed = std::move(pd);
        }
        ce.degree = expected;
    } else {
        ExpVec expected = ExpVec::from_rats(tr.E_final().col_vec(i));
        auto rd = ratio_decompose(all[i], t0);
        if (!rd) throw ConsistencyError(kMod, "X-side cluster variable has no normalized ratio form");
        if (!(rd->degree == expected))
            throw ConsistencyError(kMod, "degree " + rd->degree.str() + " differs from col E = " + expected.str());
        ce.degree = expected;
        ce.ratio = std::move(rd);
    }
    return ce;
}

namespace {

struct Node {
    Seed seed;
    RatMatrix E;
    IndexList seq;
};

std::optional<Permutation> negative_permutation(const RatMatrix& C, const IndexList& uf, Index n) {
    Index m = C.rows();
    std::vector<Index> img(n);
    for (Index i = 0; i < n; ++i) img[i] = i;
    std::vector<bool> used(m, false);
    for (Index j = 0; j < m; ++j) {
        std::optional<Index> hit;
        for (Index r = 0; r < m; ++r) {
            const Rat& x = C(r, j);
            if (x.is_zero()) continue;
            if (x != Rat(-1) || hit) return std::nullopt;
            hit = r;
        }
        if (!hit || used[*hit]) return std::nullopt;
        used[*hit] = true;
        // col_{σk} C = -e_k : here j = σ(k) with k = hit
        img[uf[*hit]] = uf[j];
    }
    return Permutation(img);
}

std::vector<Node> expand(const Node& nd, const Seed& t0) {
    std::vector<Node> out;
    const auto& uf = t0.unfrozen();
    for (Index k : uf) {
        if (!nd.seq.empty() && nd.seq.back() == k) continue;
        RatVec ck = nd.E.sub(uf, {k}).col_vec(0);
        auto sg = coherent_sign(ck);
        if (!sg || *sg == 0) throw ConsistencyError(kMod, "c-vector not sign-coherent during search");
        Node ch{mutate_B(nd.seed, k), nd.E * trans_matrix(nd.seed, k, *sg, Side::X).P, nd.seq};
        ch.seq.push_back(k);
        out.push_back(std::move(ch));
    }
    return out;
}

T1Search search(const Seed& t0, Index max_depth, bool parallel, std::size_t max_nodes) {
    T1Search res;
    const auto& uf = t0.unfrozen();
    Index n = t0.n();
    std::set<std::string> seen;
    std::vector<Node> frontier{Node{t0, RatMatrix::identity(n), {}}};
    seen.insert(key_of(t0.B, RatMatrix::identity(uf.size())));
    res.explored = 1;
    for (Index depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
        std::vector<std::vector<Node>> kids(frontier.size());
        const long fs = static_cast<long>(frontier.size());
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (long f = 0; f < fs; ++f) kids[f] = expand(frontier[f], t0);
        } else {
            for (long f = 0; f < fs; ++f) kids[f] = expand(frontier[f], t0);
        }
        std::vector<Node> next;
        for (auto& group : kids)
            for (auto& ch : group) {
                RatMatrix C = ch.E.sub(uf, uf);
                if (!seen.insert(key_of(ch.seed.B, C)).second) continue;
                ++res.explored;
                if (auto sigma = negative_permutation(C, uf, n)) {
                    for (Index k : uf)
                        if (t0.d[k] != t0.d[(*sigma)(k)])
                            throw ConsistencyError(kMod, "t[1] permutation does not preserve d");
                    if (!is_similarity(t0, ch.seed, *sigma))
                        throw ConsistencyError(kMod, "t[1] is not similar to t0");
                    res.witness = T1Witness{ch.seq, *sigma, C, ch.seed, res.explored};
                    return res;
                }
                if (res.explored >= max_nodes) {
                    res.truncated = true;
                    return res;
                }
                next.push_back(std::move(ch));
            }
        frontier = std::move(next);
    }
    return res;
}

}  // namespace

T1Search find_t1(const Seed& t0, Index max_depth, bool parallel, std::size_t max_nodes) {
    return search(t0, max_depth, parallel, max_nodes);
}

T1Search find_t1_serial(const Seed& t0, Index max_depth, std::size_t max_nodes) {
    return search(t0, max_depth, false, max_nodes);
}

}  // namespace ctw
