#include "ctw/laurent/pointed.hpp"

#include "ctw/error.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "laurent-ring";
}

DominanceOrder::DominanceOrder(const Seed& seed) : seed_(seed), Bt_(seed.B_tilde()) {
    FullRankInfo fr = full_rank_check(seed);
    if (!fr.is_full_rank)
        throw ValidationError(kMod, "dominance order undecidable: B-tilde is not of full rank");
    rows_ = fr.witness_rows;
    IndexList cols(seed.partition.n_uf());
    for (Index k = 0; k < cols.size(); ++k) cols[k] = k;
    BJinv_ = Bt_.sub(rows_, cols).inv();
    // w = -B̃ (B̃ᵀB̃)⁻¹ 1  gives  wᵀ B̃ e_k = -1 for every k.
    RatMatrix G = (Bt_.transpose() * Bt_).inv();
    RatVec ones(cols.size(), Rat(1));
    w_ = Bt_ * (G * ones);
    for (auto& x : w_) x = -x;
}

std::optional<RatVec> DominanceOrder::solve(const ExpVec& mp, const ExpVec& m) const {
    RatVec diff = (mp - m).to_rats();
    RatVec dj(rows_.size());
    for (Index a = 0; a < rows_.size(); ++a) dj[a] = diff[rows_[a]];
    RatVec n = BJinv_ * dj;
    if (Bt_ * n != diff) return std::nullopt;
    return n;
}

bool DominanceOrder::leq(const ExpVec& mp, const ExpVec& m) const {
    auto n = solve(mp, m);
    if (!n) return false;
    for (const auto& x : *n)
        if (!x.is_integer() || x.sign() < 0) return false;
    return true;
}

Rat DominanceOrder::height(const ExpVec& m) const { return dot(w_, m.to_rats()); }

bool dominance_leq(const ExpVec& mp, const ExpVec& m, const Seed& seed) {
    if (mp == m) return true;
    return DominanceOrder(seed).leq(mp, m);
}

bool dominance_leq_x(const ExpVec& np, const ExpVec& n, const Seed& seed) {
    ExpVec diff = np - n;
    for (Index i = 0; i < seed.n(); ++i) {
        Rat v = diff[i];
        if (seed.partition.is_frozen(i) ? !v.is_zero() : (!v.is_integer() || v.sign() < 0)) return false;
    }
    return true;
}

namespace {

std::optional<PointedDecomposition> pointed_x(const LaurentPoly& f, const Seed& seed) {
    ExpVec deg = f.min_exponent();
    if (!f.coefficient(deg).is_one()) return std::nullopt;
    const Index m = seed.partition.n_uf();
    std::vector<std::pair<ExpVec, Rat>> fterms;
    for (Index t = 0; t < f.num_terms(); ++t) {
        ExpVec e = f.exponent(t);
        if (!dominance_leq_x(e, deg, seed)) return std::nullopt;
        ExpVec diff = e - deg;
        std::vector<std::int64_t> z(m);
        for (Index a = 0; a < m; ++a) z[a] = diff[seed.unfrozen()[a]].to_int64();
        fterms.emplace_back(ExpVec(z, 1), f.coeff(t));
    }
    return PointedDecomposition{deg, LaurentPoly::from_terms(m, fterms)};
}

std::optional<PointedDecomposition> pointed_a(const LaurentPoly& f, const Seed& seed) {
    DominanceOrder order(seed);
    Index best = 0;
    Rat hbest = order.height(f.exponent(0));
    bool tie = false;
    for (Index t = 1; t < f.num_terms(); ++t) {
        Rat h = order.height(f.exponent(t));
        if (h > hbest) {
            hbest = h;
            best = t;
            tie = false;
        } else if (h == hbest) {
            tie = true;
        }
    }
    if (tie || !f.coeff(best).is_one()) return std::nullopt;
    ExpVec deg = f.exponent(best);
    const Index m = seed.partition.n_uf();
    std::vector<std::pair<ExpVec, Rat>> fterms;
    for (Index t = 0; t < f.num_terms(); ++t) {
        auto n = order.solve(f.exponent(t), deg);
        if (!n) return std::nullopt;
        std::vector<std::int64_t> z(m);
        for (Index a = 0; a < m; ++a) {
            if (!(*n)[a].is_integer() || (*n)[a].sign() < 0) return std::nullopt;
            z[a] = (*n)[a].to_int64();
        }
        fterms.emplace_back(ExpVec(z, 1), f.coeff(t));
    }
    return PointedDecomposition{deg, LaurentPoly::from_terms(m, fterms)};
}

}  // namespace

std::optional<PointedDecomposition> pointed_decompose(const LaurentPoly& f, const Seed& seed, Side side) {
    if (f.is_zero()) throw ValidationError(kMod, "pointed_decompose of zero");
    if (f.nvars() != seed.n()) throw ValidationError(kMod, "polynomial does not live on this seed");
    return side == Side::A ? pointed_a(f, seed) : pointed_x(f, seed);
}

std::optional<RatioDecomposition> ratio_decompose(const RationalExpr& f, const Seed& seed) {
    if (f.is_zero() || f.nvars() != seed.n()) return std::nullopt;
    if (!f.coeff().is_one()) return std::nullopt;
    const Index m = seed.partition.n_uf();
    RatioDecomposition out{f.mono(), LaurentPoly::constant(m, 1), LaurentPoly::constant(m, 1)};
    for (const auto& [poly, e] : f.factors()) {
        if (!poly.constant_term().is_one()) return std::nullopt;
        auto pd = pointed_x(poly, seed);
        if (!pd || !pd->degree.is_zero()) return std::nullopt;
        if (e > 0)
            out.P = out.P * pd->f_poly.pow(e);
        else
            out.Q = out.Q * pd->f_poly.pow(-e);
    }
    return out;
}

LaurentPoly recompose(const PointedDecomposition& pd, const Seed& seed, Side side) {
    const Index n = seed.n(), m = seed.partition.n_uf();
    RatMatrix Z(n, m);  // exponent image of each Z_k
    if (side == Side::A) {
        Z = seed.B_tilde();
    } else {
        for (Index a = 0; a < m; ++a) Z(seed.unfrozen()[a], a) = 1;
    }
    return pd.f_poly.monomial_map(Z).shifted(pd.degree);
}

}  // namespace ctw
