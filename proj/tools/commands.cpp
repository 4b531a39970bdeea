#include "commands.hpp"

#include "ctw/error.hpp"
#include "ctw/quantum/quantum.hpp"

namespace ctw::cli {

namespace {
constexpr const char* kMod = "cli-frontend";
using io::Json;
using io::to_json;

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(kMod, msg); }

Side parse_side(const std::string& s) {
    if (s == "A") return Side::A;
    if (s == "X") return Side::X;
    bad("--side must be A or X");
}

Seed load_seed(const std::string& path) {
    if (path.empty()) bad("--seed FILE is required");
    io::Json j = io::load_file(path);
    return io::seed_from_json(j.contains("seed") && j.at("seed").is_object() ? j.at("seed") : j);
}

Json expr_json(const RationalExpr& e, Side side) { return e.str(var_prefix(side)); }

Json generator_images(const TwistSpec& spec) {
    Json out = Json::object();
    Index n = spec.base.n();
    for (Index i = 0; i < n; ++i) {
        auto g = RationalExpr::variable(n, i);
        out[var_prefix(spec.side) + std::to_string(i + 1)] = expr_json(apply_twist(spec, g), spec.side);
    }
    return out;
}

Permutation choose_sigma(const JobConfig& cfg, const Seed& t, const Seed& tp) {
    if (!cfg.sigma.empty()) {
        IndexList img = io::parse_sequence(cfg.sigma, t.n());
        Permutation s(img);
        if (!is_similarity(t, tp, s)) throw InfeasibleError(kMod, "--sigma is not a similarity");
        return s;
    }
    auto sims = find_similarities(t, tp);
    if (sims.empty()) throw InfeasibleError(kMod, "seeds are not similar");
    return sims.front();
}

Seed target_seed(const JobConfig& cfg, const Seed& t) {
    if (!cfg.target_path.empty()) return load_seed(cfg.target_path);
    return mutate_B(t, io::parse_sequence(cfg.seq, t.n()));
}

RatMatrix lambda_along(const LambdaForm& L0, const Seed& t, const IndexList& seq) {
    LambdaForm L = L0;
    Seed cur = t;
    for (Index k : seq) {
        L = mutate_lambda(L, cur, k);
        cur = mutate_B(cur, k);
    }
    return L.Lambda;
}

Json family_json(const VariationFamily& fam) {
    Json j = to_json(fam);
    j["det"] = param_poly_str(det_polynomial(fam), fam.names);
    return j;
}

}  // namespace

std::string param_poly_str(const LaurentPoly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    auto terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (Index a = 0; a < e.size(); ++a) {
            if (e[a].is_zero()) continue;
            if (!mono.empty()) mono += "*";
            mono += names[a];
            if (e[a] != Rat(1)) mono += "^" + e[a].str();
        }
        Rat mag = c.abs();
        std::string body = mono.empty() ? mag.str() : (mag == Rat(1) ? mono : mag.str() + "*" + mono);
        if (out.empty()) out = (c.sign() < 0 ? "-" : "") + body;
        else out += (c.sign() < 0 ? " - " : " + ") + body;
    }
    return out;
}

RatVec parse_params(const std::string& text, const VariationFamily& fam) {
    RatVec p(fam.dim());
    if (text.empty()) return p;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) bad("parameter assignment \"" + tok + "\" needs name=value");
        std::string name = tok.substr(0, eq);
        auto idx = fam.param_index(name);
        if (!idx) bad("unknown parameter \"" + name + "\"");
        try {
            p[*idx] = Rat::parse(tok.substr(eq + 1));
        } catch (const std::exception&) {
            bad("bad value in \"" + tok + "\"");
        }
    }
    return p;
}

Json cmd_seed_check(const JobConfig& cfg) {
    Seed s = load_seed(cfg.seed_path);
    Json j;
    j["seed"] = to_json(s);
    j["validation"] = to_json(validate(s));
    auto sym = find_skew_symmetrizer(s.B);
    j["symmetrizer"] = sym.d;
    j["symmetrizer_unique"] = sym.unique;
    Json comps = Json::array();
    for (const auto& c : components(s.B)) comps.push_back(io::index_list_to_json(c));
    j["components"] = comps;
    j["connected"] = comps.size() <= 1;
    auto fr = full_rank_check(s);
    j["rank"] = fr.rank;
    j["full_rank"] = fr.is_full_rank;
    j["unimodular_minor"] = fr.unimodular_minor;
    j["witness_rows"] = io::index_list_to_json(fr.witness_rows);
    return j;
}

Json cmd_mutate(const JobConfig& cfg) {
    Seed s = load_seed(cfg.seed_path);
    return to_json(mutate_B(s, io::parse_sequence(cfg.seq, s.n())));
}

Json cmd_expand(const JobConfig& cfg) {
    Seed s = load_seed(cfg.seed_path);
    Side side = parse_side(cfg.side);
    if (cfg.index < 1 || cfg.index > s.n()) bad("--index out of range");
    auto ex = expand_cluster_variable(s, io::parse_sequence(cfg.seq, s.n()), cfg.index - 1, side);
    Json j;
    j["expr"] = expr_json(ex.expr, side);
    j["degree"] = to_json(ex.degree);
    if (ex.pointed) {
        j["pointed"] = {{"degree", to_json(ex.pointed->degree)}, {"F", ex.pointed->f_poly.str("Z")}};
    }
    if (ex.ratio) {
        j["ratio"] = {{"degree", to_json(ex.ratio->degree)}, {"P", ex.ratio->P.str("Z")}, {"Q", ex.ratio->Q.str("Z")}};
    }
    return j;
}

Json cmd_cgmat(const JobConfig& cfg) {
    Seed s = load_seed(cfg.seed_path);
    IndexList seq = io::parse_sequence(cfg.seq, s.n());
    auto tr = run_trajectory(s, seq);
    Json j;
    j["C"] = to_json(tr.C(seq.size()));
    j["G"] = to_json(tr.G(seq.size()));
    j["E"] = to_json(tr.E_final());
    j["F"] = to_json(tr.F_final());
    Json steps = Json::array();
    for (const auto& st : tr.steps) steps.push_back({{"k", st.k + 1}, {"sign", st.eps}});
    j["steps"] = steps;
    j["seed"] = to_json(tr.final_seed());
    return j;
}

Json cmd_var_solve(const JobConfig& cfg) {
    Seed t = load_seed(cfg.seed_path);
    Seed tp = target_seed(cfg, t);
    Side side = parse_side(cfg.side);
    Permutation sigma = choose_sigma(cfg, t, tp);
    VariationFamily fam = side == Side::A ? solve_M_variation(t, tp, sigma) : solve_N_variation(t, tp, sigma);
    Json j;
    j["family"] = family_json(fam);
    std::optional<RatMatrix> Fs, Ft;
    if (side == Side::X) {
        Fs = omega_from_seed(t).W;
        Ft = omega_from_seed(tp).W;
    } else if (cfg.poisson || !cfg.params.empty()) {
        if (cfg.seq.empty() && cfg.poisson) bad("A-side Poisson filter needs --seq to carry Λ");
        if (full_rank_check(t).is_full_rank) {
            LambdaForm L = solve_compatible_lambda(t, cfg.alpha);
            Fs = L.Lambda;
            Ft = lambda_along(L, t, io::parse_sequence(cfg.seq, t.n()));
        } else if (cfg.poisson) {
            throw InfeasibleError(kMod, "no compatible Λ: seed is not of full rank");
        }
    }
    if (cfg.poisson) {
        auto pf = poisson_subfamily(fam, *Fs, *Ft);
        const char* st = pf.status == PoissonFilter::Status::Linear ? "linear"
                         : pf.status == PoissonFilter::Status::Nonlinear ? "nonlinear" : "empty";
        j["poisson"] = {{"status", st}};
        if (pf.family) j["poisson"]["family"] = family_json(*pf.family);
    }
    if (cfg.integral) {
        auto ref = integral_member(fam);
        j["integral"] = {{"found", ref.member.has_value()}, {"witness_rows", io::index_list_to_json(ref.witness_rows)}};
        if (ref.member) j["integral"]["V"] = to_json(ref.member->V);
    }
    if (!cfg.params.empty()) {
        auto mem = fam.member(parse_params(cfg.params, fam));
        j["member"] = {{"V", to_json(mem.V)}, {"variation", to_json(is_variation(mem))},
                       {"lattice_bijection", is_lattice_bijection(mem)}};
        if (Fs) j["member"]["poisson"] = is_poisson(mem, *Fs, *Ft);
    }
    return j;
}

Json cmd_twist(const JobConfig& cfg) {
    Seed t = load_seed(cfg.seed_path);
    Json j;
    j["kind"] = cfg.kind;
    if (cfg.kind == "dt") {
        auto dt = build_dt_twist(t, cfg.depth);
        j["witness"] = {{"seq", io::index_list_to_json(dt.witness.seq)}, {"sigma", to_json(dt.witness.sigma)},
                        {"C", to_json(dt.witness.C)}};
        VerifyOptions va;
        if (dt.lambda) va.bracket = bracket_matrix(*dt.lambda);
        else va.poisson = false;
        VerifyOptions vx;
        vx.p_partner = dt.twA;
        j["A"] = {{"spec", to_json(dt.twA)}, {"images", generator_images(dt.twA)}, {"verify", to_json(verify_twist(dt.twA, va))}};
        j["X"] = {{"spec", to_json(dt.twX)}, {"images", generator_images(dt.twX)}, {"verify", to_json(verify_twist(dt.twX, vx))}};
        return j;
    }
    if (cfg.kind == "principal") {
        Seed t0 = t.frozen().empty() ? make_principal(t.B, t.d) : t;
        auto pt = build_principal_twist(t0, io::parse_sequence(cfg.seq, t.n()));
        j["C"] = to_json(pt.C);
        j["G"] = to_json(pt.G);
        j["composites"] = {to_json(pt.composites[0]), to_json(pt.composites[1])};
        VerifyOptions va;
        va.bracket = bracket_matrix(pt.lambda);
        VerifyOptions vx;
        vx.p_partner = pt.twA;
        j["A"] = {{"spec", to_json(pt.twA)}, {"images", generator_images(pt.twA)}, {"verify", to_json(verify_twist(pt.twA, va))}};
        j["X"] = {{"spec", to_json(pt.twX)}, {"images", generator_images(pt.twX)}, {"verify", to_json(verify_twist(pt.twX, vx))}};
        return j;
    }
    if (cfg.kind == "custom") {
        Side side = parse_side(cfg.side);
        IndexList seq = io::parse_sequence(cfg.seq, t.n());
        Seed tp = mutate_B(t, seq);
        Permutation sigma = choose_sigma(cfg, t, tp);
        auto fam = side == Side::A ? solve_M_variation(t, tp, sigma) : solve_N_variation(t, tp, sigma);
        auto mem = fam.member(parse_params(cfg.params, fam));
        TwistSpec spec = make_twist(t, seq, mem);
        VerifyOptions v;
        if (side == Side::A) {
            if (full_rank_check(t).is_full_rank) v.bracket = bracket_matrix(solve_compatible_lambda(t, cfg.alpha));
            else v.poisson = false;
        } else if (!mem.V.det().is_zero()) {
            RatMatrix U = tp.D_inv() * mem.V.inv().transpose() * t.D();
            v.p_partner = make_twist(t, seq, VariationMap{Side::A, t, tp, sigma, U});
        }
        j["spec"] = to_json(spec);
        j["images"] = generator_images(spec);
        j["verify"] = to_json(verify_twist(spec, v));
        return j;
    }
    bad("twist kind must be dt, principal or custom");
}

std::string pretty(const Json& j) {
    std::string out;
    std::function<void(const Json&, int)> walk = [&](const Json& v, int ind) {
        std::string pad(ind, ' ');
        for (auto it = v.begin(); it != v.end(); ++it) {
            const Json& x = it.value();
            out += pad + it.key() + ":";
            bool matrix = x.is_array() && !x.empty() && x[0].is_array() &&
                          std::all_of(x.begin(), x.end(), [](const Json& r) {
                              return r.is_array() && std::all_of(r.begin(), r.end(), [](const Json& e) { return e.is_primitive(); });
                          });
            if (x.is_object()) {
                out += "\n";
                walk(x, ind + 2);
            } else if (matrix) {
                out += "\n";
                for (const auto& row : x) {
                    out += pad + "  [";
                    for (Index c = 0; c < row.size(); ++c) out += (c ? " " : "") + (row[c].is_string() ? row[c].get<std::string>() : row[c].dump());
                    out += "]\n";
                }
            } else if (x.is_array() && std::any_of(x.begin(), x.end(), [](const Json& e) { return e.is_object(); })) {
                out += "\n";
                for (const auto& e : x) {
                    if (e.is_object()) {
                        out += pad + "  -\n";
                        walk(e, ind + 4);
                    } else {
                        out += pad + "  - " + e.dump() + "\n";
                    }
                }
            } else {
                out += " " + (x.is_string() ? x.get<std::string>() : x.dump()) + "\n";
            }
        }
    };
    if (j.is_object()) walk(j, 0);
    else out = j.dump() + "\n";
    return out;
}

}  // namespace ctw::cli
