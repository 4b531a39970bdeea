#include <filesystem>

#include "commands.hpp"
#include "ctw/error.hpp"

namespace ctw::cli {

namespace {
using io::Json;
using io::to_json;

Side side_of(const Json& c) { return c.value("side", "A") == "X" ? Side::X : Side::A; }

IndexList seq_of(const Json& c, const Seed& s) { return c.contains("seq") ? io::index_list_from_json(c.at("seq"), s.n()) : IndexList{}; }

struct Context {
    Seed seed;
    std::optional<DTTwist> dt;
    std::optional<T1Witness> t1;
    const DTTwist& get_dt() {
        if (!dt) dt = build_dt_twist(seed);
        return *dt;
    }
    const T1Witness& get_t1() {
        if (!t1) {
            auto s = find_t1(seed);
            if (!s.witness) throw InfeasibleError("cli-frontend", "no t[1]");
            t1 = *s.witness;
        }
        return *t1;
    }
};

Json run_check(Context& ctx, const Json& c) {
    const Seed& s = ctx.seed;
    Index n = s.n();
    std::string op = c.at("op").get<std::string>();
    Json r;
    r["op"] = op;
    if (c.contains("label")) r["label"] = c.at("label");
    bool ok = true;
    if (op == "expand") {
        Side side = side_of(c);
        Index i = c.at("index").get<Index>() - 1;
        auto ex = expand_cluster_variable(s, seq_of(c, s), i, side);
        r["got"] = ex.expr.str(var_prefix(side));
        ok = ex.expr == io::expr_from_json(c.at("expect"), n);
    } else if (op == "cgmat") {
        auto tr = run_trajectory(s, seq_of(c, s));
        r["E"] = to_json(tr.E_final());
        r["F"] = to_json(tr.F_final());
        const Json& e = c.at("expect");
        if (e.contains("E")) ok = ok && tr.E_final() == io::matrix_from_json(e.at("E"));
        if (e.contains("F")) ok = ok && tr.F_final() == io::matrix_from_json(e.at("F"));
    } else if (op == "dt_variation") {
        const auto& dt = ctx.get_dt();
        r["M"] = to_json(dt.twA.variation.V);
        r["N"] = to_json(dt.twX.variation.V);
        ok = dt.twA.variation.V == io::matrix_from_json(c.at("expect").at("M")) &&
             dt.twX.variation.V == io::matrix_from_json(c.at("expect").at("N"));
    } else if (op == "dt_image") {
        const auto& dt = ctx.get_dt();
        Side side = side_of(c);
        const TwistSpec& tw = side == Side::A ? dt.twA : dt.twX;
        auto in = io::expr_from_json(c.at("input"), n);
        auto img = apply_twist(tw, in);
        r["input"] = in.str(var_prefix(side));
        r["got"] = img.str(var_prefix(side));
        ok = img == io::expr_from_json(c.at("expect"), n);
    } else if (op == "basis_permutation") {
        const auto& dt = ctx.get_dt();
        Side side = side_of(c);
        const TwistSpec& tw = side == Side::A ? dt.twA : dt.twX;
        std::vector<RationalExpr> fam;
        for (const auto& f : c.at("family")) fam.push_back(io::expr_from_json(f, n));
        auto imgs = basis_images(tw, fam);
        Json got = Json::array(), factors = Json::array();
        const Json& e = c.at("expect");
        for (Index a = 0; a < imgs.size(); ++a) {
            got.push_back(imgs[a].index ? Json(*imgs[a].index + 1) : Json(nullptr));
            factors.push_back(imgs[a].factor.str(var_prefix(side)));
            ok = ok && imgs[a].index && *imgs[a].index + 1 == e.at("images")[a].get<Index>() &&
                 imgs[a].factor == io::expr_from_json(e.at("factors")[a], n);
        }
        r["images"] = got;
        r["factors"] = factors;
    } else if (op == "t1") {
        const auto& w = ctx.get_t1();
        r["seq"] = io::index_list_to_json(w.seq);
        r["sigma"] = to_json(w.sigma);
        const Json& e = c.at("expect");
        ok = w.seq == io::index_list_from_json(e.at("seq"), n) && w.sigma == io::permutation_from_json(e.at("sigma")) &&
             w.t1.B == io::matrix_from_json(e.at("B"));
    } else if (op == "family") {
        const auto& w = ctx.get_t1();
        Side side = side_of(c);
        auto fam = side == Side::A ? solve_M_variation(s, w.t1, w.sigma) : solve_N_variation(s, w.t1, w.sigma);
        const Json& e = c.at("expect");
        r["dim"] = fam.dim();
        r["names"] = fam.names;
        Json params = Json::array();
        for (Index a = 0; a < fam.dim(); ++a)
            params.push_back(fam.names[a] + " = V(" + std::to_string(fam.coords[a].first + 1) + "," +
                             std::to_string(fam.coords[a].second + 1) + ")");
        r["parameters"] = params;
        ok = fam.dim() == e.at("dim").get<Index>() && fam.names == e.at("names").get<std::vector<std::string>>();
        if (ok && e.contains("entries")) {
            Json entries = Json::array();
            for (const auto& en : e.at("entries")) {
                Index i = en.at("at")[0].get<Index>() - 1, k = en.at("at")[1].get<Index>() - 1;
                LaurentPoly p = fam.entry_poly(i, k);
                entries.push_back("V(" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ") = " + param_poly_str(p, fam.names));
                ok = ok && p == io::poly_from_json(en.at("poly"), fam.dim());
            }
            r["entries"] = entries;
        }
        if (ok && e.contains("det")) {
            LaurentPoly det = det_polynomial(fam);
            r["det"] = param_poly_str(det, fam.names);
            ok = det == io::poly_from_json(e.at("det"), fam.dim());
        }
        if (e.contains("poisson_dim")) {
            auto pf = side == Side::X ? poisson_subfamily(fam) : PoissonFilter{};
            Index pd = pf.family ? pf.family->dim() : 0;
            r["poisson_dim"] = pd;
            ok = ok && pf.family && pd == e.at("poisson_dim").get<Index>();
        }
    } else if (op == "member_twist") {
        const auto& w = ctx.get_t1();
        Side side = side_of(c);
        auto fam = side == Side::A ? solve_M_variation(s, w.t1, w.sigma) : solve_N_variation(s, w.t1, w.sigma);
        RatVec p(fam.dim());
        for (auto it = c.at("params").begin(); it != c.at("params").end(); ++it) {
            auto idx = fam.param_index(it.key());
            if (!idx) throw ValidationError("cli-frontend", "unknown parameter " + it.key());
            p[*idx] = io::rat_from_json(it.value());
        }
        TwistSpec tw = make_twist(s, w.seq, fam.member(p));
        r["V"] = to_json(tw.variation.V);
        Json images = Json::array();
        for (const auto& im : c.at("images")) {
            auto in = io::expr_from_json(im.at("input"), n);
            auto got = apply_twist(tw, in);
            bool pass = got == io::expr_from_json(im.at("expect"), n);
            images.push_back(im.value("label", "") + ": " + in.str(var_prefix(side)) + " -> " + got.str(var_prefix(side)));
            ok = ok && pass;
        }
        r["images"] = images;
    } else {
        throw ValidationError("cli-frontend", "unknown gallery op " + op);
    }
    r["passed"] = ok;
    return r;
}

}  // namespace

Json cmd_examples(const JobConfig& cfg) {
    if (cfg.kind != "a1" && cfg.kind != "sl3" && cfg.kind != "digon")
        throw ValidationError("cli-frontend", "example must be a1, sl3 or digon");
    std::filesystem::path file = std::filesystem::path(cfg.data_dir) / "gallery" / (cfg.kind + ".json");
    Json g = io::load_file(file.string());
    Context ctx{io::seed_from_json(g.at("seed")), std::nullopt, std::nullopt};
    Json out;
    out["name"] = cfg.kind;
    Json checks = Json::array();
    bool ok = true;
    for (const auto& c : g.at("checks")) {
        Json r = run_check(ctx, c);
        ok = ok && r.at("passed").get<bool>();
        checks.push_back(std::move(r));
    }
    out["checks"] = checks;
    out["ok"] = ok;
    return out;
}

}  // namespace ctw::cli
