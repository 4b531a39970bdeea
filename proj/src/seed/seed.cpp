#include "ctw/seed/seed.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ctw/error.hpp"

namespace ctw {

namespace {
constexpr const char* kMod = "seed-model";

std::string pair_str(Index i, Index j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}
}  // namespace

Seed Seed::make(const RatMatrix& B, std::vector<std::int64_t> d, const IndexList& frozen,
                std::vector<std::string> labels) {
    if (!B.is_square()) throw ValidationError(kMod, "B must be square");
    Seed s;
    s.partition = IndexPartition(B.rows(), frozen);
    s.B = B;
    s.d = std::move(d);
    s.labels = std::move(labels);
    Report r = validate(s);
    if (!r.ok()) throw ValidationError(kMod, r.first_failure()->detail);
    return s;
}

RatMatrix Seed::B_tilde() const { return B.sub(partition.all(), unfrozen()); }

RatMatrix Seed::D() const {
    RatVec v;
    for (auto x : d) v.push_back(Rat(Integer(1), Integer(static_cast<long>(x))));
    return RatMatrix::diagonal(v);
}

RatMatrix Seed::D_inv() const {
    RatVec v;
    for (auto x : d) v.push_back(Rat(static_cast<long>(x)));
    return RatMatrix::diagonal(v);
}

std::int64_t Seed::d_lcm() const {
    std::int64_t l = 1;
    for (auto x : d) l = lcm64(l, x);
    return l;
}

std::string Seed::label(Index i) const {
    return i < labels.size() ? labels[i] : std::to_string(i + 1);
}

void Seed::require_unfrozen(Index k, const char* module) const {
    if (k >= n() || partition.is_frozen(k))
        throw ValidationError(module, "vertex " + std::to_string(k + 1) + " is not unfrozen");
}

Report validate(const Seed& s) {
    Report r;
    const Index n = s.B.rows();
    bool shape = s.B.is_square() && s.partition.n() == n && s.d.size() == n &&
                 (s.labels.empty() || s.labels.size() == n);
    r.add("shape", shape, shape ? "" : "B, d, partition and labels must agree on n");
    if (!shape) return r;
    bool dpos = true;
    for (Index i = 0; i < n && dpos; ++i)
        if (s.d[i] <= 0) {
            dpos = false;
            r.add("d positive", false, "d_" + std::to_string(i + 1) + " must be positive");
        }
    if (dpos) r.add("d positive", true);
    if (!s.B.is_integer()) {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (!s.B(i, j).is_integer()) {
                    r.add("B integral", false, "entry " + pair_str(i, j) + " is not an integer");
                    return r;
                }
    }
    r.add("B integral", true);
    if (!dpos) return r;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) {
            Rat lhs = s.B(i, j) / Rat(static_cast<long>(s.d[i]));
            Rat rhs = -s.B(j, i) / Rat(static_cast<long>(s.d[j]));
            if (lhs != rhs) {
                r.add("DB skew-symmetric", false,
                      "b_ij/d_i != -b_ji/d_j at " + pair_str(i, j));
                return r;
            }
        }
    r.add("DB skew-symmetric", true);
    return r;
}

std::vector<IndexList> components(const RatMatrix& B) {
    const Index n = B.rows();
    std::vector<int> comp(n, -1);
    std::vector<IndexList> out;
    for (Index s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        IndexList stack{s}, members;
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            Index i = stack.back();
            stack.pop_back();
            members.push_back(i);
            for (Index j = 0; j < n; ++j)
                if (comp[j] < 0 && (!B(i, j).is_zero() || !B(j, i).is_zero())) {
                    comp[j] = comp[s];
                    stack.push_back(j);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    return out;
}

SymmetrizerResult find_skew_symmetrizer(const RatMatrix& B) {
    SymmetrizerResult res;
    if (!B.is_square() || !B.is_integer()) return res;
    const Index n = B.rows();
    auto comps = components(B);
    res.unique = comps.size() <= 1;
    std::vector<Rat> d(n);
    for (const auto& c : comps) {
        d[c.front()] = 1;
        IndexList stack{c.front()};
        std::vector<bool> seen(n, false);
        seen[c.front()] = true;
        while (!stack.empty()) {
            Index i = stack.back();
            stack.pop_back();
            for (Index j : c) {
                if (B(i, j).is_zero() && B(j, i).is_zero()) continue;
                // b_ij/d_i = -b_ji/d_j needs opposite nonzero signs.
                if (B(i, j).is_zero() || B(j, i).is_zero() || B(i, j).sign() == B(j, i).sign()) return res;
                Rat dj = -B(j, i) * d[i] / B(i, j);
                if (!seen[j]) {
                    seen[j] = true;
                    d[j] = dj;
                    stack.push_back(j);
                } else if (d[j] != dj) {
                    return res;
                }
            }
        }
        Integer l = 1, g = 0;
        for (Index i : c) l = lcm(l, d[i].den());
        for (Index i : c) g = gcd(g, (d[i] * Rat(l)).num());
        for (Index i : c) d[i] = d[i] * Rat(l) / Rat(g);
    }
    for (Index i = 0; i < n; ++i)
        if (!B(i, i).is_zero()) return res;
    res.symmetrizable = true;
    for (const auto& x : d) res.d.push_back(x.to_int64());
    return res;
}

RatMatrix mutate_B_matrix(const RatMatrix& B, Index k, int eps) {
    const Index n = B.rows();
    RatMatrix out(n, n);
    const Rat e(eps);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out(i, j) = -B(i, j);
            } else {
                out(i, j) = B(i, j) + B(i, k) * (e * B(k, j)).pos() + (-e * B(i, k)).pos() * B(k, j);
            }
        }
    return out;
}

Seed mutate_B(const Seed& seed, Index k) {
    seed.require_unfrozen(k, kMod);
    Seed out = seed;
    out.B = mutate_B_matrix(seed.B, k, +1);
    if (out.B != mutate_B_matrix(seed.B, k, -1))
        throw ConsistencyError(kMod, "mutation rule depends on the sign");
    return out;
}

Seed mutate_B(const Seed& seed, const IndexList& seq) {
    Seed s = seed;
    for (Index k : seq) s = mutate_B(s, k);
    return s;
}

RatVec p_star_full(const Seed& seed, const RatVec& n) {
    if (n.size() != seed.n()) throw ValidationError(kMod, "p*: vector length mismatch");
    return seed.B * n;
}

RatVec p_star(const Seed& seed, const RatVec& n) {
    if (n.size() != seed.n()) throw ValidationError(kMod, "p*: vector length mismatch");
    for (Index j : seed.frozen())
        if (!n[j].is_zero()) throw ValidationError(kMod, "p*: vector not supported on unfrozen indices");
    return seed.B * n;
}

bool is_similarity(const Seed& t, const Seed& tp, const Permutation& sigma) {
    if (!(t.partition == tp.partition) || sigma.size() != t.n()) return false;
    for (Index j : t.frozen())
        if (sigma(j) != j) return false;
    for (Index i : t.unfrozen()) {
        if (tp.partition.is_frozen(sigma(i))) return false;
        if (t.d[i] != tp.d[sigma(i)]) return false;
        for (Index j : t.unfrozen())
            if (t.B(i, j) != tp.B(sigma(i), sigma(j))) return false;
    }
    return true;
}

std::vector<Permutation> find_similarities(const Seed& t, const Seed& tp) {
    std::vector<Permutation> out;
    if (!(t.partition == tp.partition)) return out;
    const IndexList& uf = t.unfrozen();
    const Index m = uf.size();
    // Row multisets of the unfrozen block prune most branches.
    auto signature = [&](const Seed& s, Index i) {
        std::vector<Rat> row;
        for (Index j : uf) row.push_back(s.B(i, j));
        std::sort(row.begin(), row.end());
        return row;
    };
    std::vector<std::vector<Rat>> sig_t(m), sig_tp(m);
    for (Index a = 0; a < m; ++a) {
        sig_t[a] = signature(t, uf[a]);
        sig_tp[a] = signature(tp, uf[a]);
    }
    std::vector<Index> img = t.partition.all();
    std::vector<bool> used(m, false);
    std::function<void(Index)> rec = [&](Index a) {
        if (a == m) {
            out.emplace_back(img);
            return;
        }
        Index i = uf[a];
        for (Index b = 0; b < m; ++b) {
            if (used[b]) continue;
            Index si = uf[b];
            if (t.d[i] != tp.d[si] || sig_t[a] != sig_tp[b]) continue;
            bool ok = t.B(i, i) == tp.B(si, si);
            for (Index c = 0; c < a && ok; ++c) {
                Index j = uf[c];
                ok = t.B(i, j) == tp.B(si, img[j]) && t.B(j, i) == tp.B(img[j], si);
            }
            if (!ok) continue;
            used[b] = true;
            img[i] = si;
            rec(a + 1);
            used[b] = false;
            img[i] = i;
        }
    };
    rec(0);
    return out;
}

FullRankInfo full_rank_check(const Seed& seed) {
    FullRankInfo info;
    RatMatrix Bt = seed.B_tilde();
    info.rank = Bt.rank();
    const Index m = seed.partition.n_uf(), n = seed.n();
    info.is_full_rank = info.rank == m;
    if (!info.is_full_rank) return info;
    IndexList J(m);
    std::iota(J.begin(), J.end(), 0);
    IndexList first_invertible;
    // Lexicographic enumeration of m-subsets of rows.
    while (true) {
        Rat det = Bt.sub(J, IndexList([&] {
                             IndexList c(m);
                             std::iota(c.begin(), c.end(), 0);
                             return c;
                         }()))
                      .det();
        if (!det.is_zero() && first_invertible.empty()) first_invertible = J;
        if (det.abs().is_one()) {
            info.unimodular_minor = true;
            info.witness_rows = J;
            return info;
        }
        Index p = m;
        while (p > 0 && J[p - 1] == n - m + p - 1) --p;
        if (p == 0) break;
        ++J[p - 1];
        for (Index q = p; q < m; ++q) J[q] = J[q - 1] + 1;
    }
    info.witness_rows = first_invertible;
    return info;
}

}  // namespace ctw
