#include "ctw/io/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ctw/error.hpp"

namespace ctw::io {

namespace {
constexpr const char* kMod = "cli-frontend";

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(kMod, msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Side side_from_json(const Json& j) {
    if (!j.is_string()) bad("side must be \"A\" or \"X\"");
    std::string s = j.get<std::string>();
    if (s == "A") return Side::A;
    if (s == "X") return Side::X;
    bad("side must be \"A\" or \"X\"");
}

}  // namespace

Json to_json(const Rat& r) {
    if (r.is_integer()) {
        Integer z = r.num();
        if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
    }
    return Json(r.str());
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const std::exception&) {
            bad("not a rational: " + j.dump());
        }
    }
    bad("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) bad("matrix must be an array of rows");
    Index r = j.size(), c = r ? j[0].size() : 0;
    RatMatrix m(r, c);
    for (Index i = 0; i < r; ++i) {
        if (!j[i].is_array() || j[i].size() != c) bad("matrix rows must have equal length");
        for (Index k = 0; k < c; ++k) m(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

Json to_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json index_list_to_json(const IndexList& idx) {
    Json a = Json::array();
    for (Index i : idx) a.push_back(i + 1);
    return a;
}

IndexList index_list_from_json(const Json& j, Index n) {
    if (!j.is_array()) bad("index list must be an array");
    IndexList out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) bad("indices must be integers");
        auto v = x.get<std::int64_t>();
        if (v < 1 || static_cast<Index>(v) > n) bad("index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
        out.push_back(static_cast<Index>(v - 1));
    }
    return out;
}

Json to_json(const Permutation& p) { return index_list_to_json(p.images()); }

Permutation permutation_from_json(const Json& j) {
    IndexList img = index_list_from_json(j, j.is_array() ? j.size() : 0);
    try {
        return Permutation(img);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("bad permutation: ") + e.what());
    }
}

Json to_json(const Seed& s) {
    Json j;
    j["n"] = s.n();
    j["frozen"] = index_list_to_json(s.frozen());
    j["B"] = to_json(s.B);
    j["d"] = s.d;
    if (!s.labels.empty()) j["labels"] = s.labels;
    return j;
}

Seed seed_from_json(const Json& j) {
    if (!j.is_object()) bad("seed must be a JSON object");
    const Json& jn = field(j, "n");
    if (!jn.is_number_integer() || jn.get<std::int64_t>() < 1) bad("n must be a positive integer");
    Index n = jn.get<std::int64_t>();
    RatMatrix B = matrix_from_json(field(j, "B"));
    if (B.rows() != n || B.cols() != n) bad("B must be n×n");
    std::vector<std::int64_t> d;
    if (j.contains("d")) {
        const Json& jd = j.at("d");
        if (!jd.is_array() || jd.size() != n) bad("d must have n entries");
        for (const auto& x : jd) {
            if (!x.is_number_integer()) bad("d entries must be integers");
            d.push_back(x.get<std::int64_t>());
        }
    } else {
        auto sym = find_skew_symmetrizer(B);
        if (!sym.symmetrizable) bad("B is not skew-symmetrizable");
        d = sym.d;
    }
    IndexList frozen = j.contains("frozen") ? index_list_from_json(j.at("frozen"), n) : IndexList{};
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const Json& jl = j.at("labels");
        if (!jl.is_array() || jl.size() != n) bad("labels must have n entries");
        for (const auto& x : jl) {
            if (!x.is_string()) bad("labels must be strings");
            labels.push_back(x.get<std::string>());
        }
    }
    return Seed::make(B, d, frozen, labels);
}

Json to_json(const VariationMap& m) {
    Json j;
    j["side"] = side_name(m.side);
    j["source"] = to_json(m.source);
    j["target"] = to_json(m.target);
    j["sigma"] = to_json(m.sigma);
    j["V"] = to_json(m.V);
    j["denominator"] = to_json(Rat(m.denominator()));
    return j;
}

VariationMap variation_from_json(const Json& j) {
    VariationMap m{side_from_json(field(j, "side")), seed_from_json(field(j, "source")),
                   seed_from_json(field(j, "target")), permutation_from_json(field(j, "sigma")),
                   matrix_from_json(field(j, "V"))};
    if (m.V.rows() != m.source.n() || m.V.cols() != m.source.n()) bad("V must be n×n");
    if (m.sigma.size() != m.source.n()) bad("sigma must have n entries");
    return m;
}

Json to_json(const VariationFamily& fam) {
    Json j;
    j["particular"] = to_json(fam.particular);
    j["dim"] = fam.dim();
    Json params = Json::array();
    for (Index a = 0; a < fam.dim(); ++a) {
        Json p;
        p["name"] = fam.names[a];
        p["entry"] = Json::array({fam.coords[a].first + 1, fam.coords[a].second + 1});
        p["direction"] = to_json(fam.basis[a]);
        params.push_back(std::move(p));
    }
    j["parameters"] = params;
    return j;
}

Json to_json(const TwistSpec& spec) {
    Json j;
    j["kind"] = to_string(spec.kind);
    j["side"] = side_name(spec.side);
    j["base"] = to_json(spec.base);
    j["sequence"] = index_list_to_json(spec.seq);
    j["sigma"] = to_json(spec.sigma);
    j["variation"] = to_json(spec.variation);
    j["mutation_first"] = spec.mutation_first;
    return j;
}

TwistSpec twist_from_json(const Json& j) {
    TwistSpec s;
    std::string kind = field(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (kind == "dt") s.kind = TwistKind::DT;
    else if (kind == "principal") s.kind = TwistKind::Principal;
    else if (kind == "custom") s.kind = TwistKind::Custom;
    else bad("kind must be dt, principal or custom");
    s.side = side_from_json(field(j, "side"));
    s.base = seed_from_json(field(j, "base"));
    s.seq = index_list_from_json(field(j, "sequence"), s.base.n());
    s.sigma = permutation_from_json(field(j, "sigma"));
    s.variation = variation_from_json(field(j, "variation"));
    const Json& mf = field(j, "mutation_first");
    if (!mf.is_boolean()) bad("mutation_first must be a boolean");
    s.mutation_first = mf.get<bool>();
    return s;
}

Json to_json(const Report& r) {
    Json j;
    j["ok"] = r.ok();
    Json checks = Json::array();
    for (const auto& it : r.items()) {
        Json c;
        c["name"] = it.name;
        c["passed"] = it.passed;
        if (!it.detail.empty()) c["detail"] = it.detail;
        checks.push_back(std::move(c));
    }
    j["checks"] = checks;
    return j;
}

Json to_json(const ExpVec& e) { return to_json(e.to_rats()); }

LaurentPoly poly_from_json(const Json& j, Index nvars) {
    if (!j.is_array()) bad("polynomial must be an array of [coef, exponents] terms");
    std::vector<std::pair<ExpVec, Rat>> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[1].is_array() || t[1].size() != nvars)
            bad("bad polynomial term " + t.dump());
        RatVec e;
        for (const auto& x : t[1]) e.push_back(rat_from_json(x));
        terms.emplace_back(ExpVec::from_rats(e), rat_from_json(t[0]));
    }
    return LaurentPoly::from_terms(nvars, terms);
}

Json to_json(const LaurentPoly& p) {
    Json a = Json::array();
    for (const auto& [e, c] : p.terms()) a.push_back(Json::array({to_json(c), to_json(e)}));
    return a;
}

RationalExpr expr_from_json(const Json& j, Index nvars) {
    if (j.is_object()) {
        RationalExpr num(poly_from_json(field(j, "num"), nvars));
        if (!j.contains("den")) return num;
        LaurentPoly den = poly_from_json(j.at("den"), nvars);
        if (den.is_zero()) bad("zero denominator");
        return num / RationalExpr(den);
    }
    return RationalExpr(poly_from_json(j, nvars));
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(std::string("JSON parse error: ") + e.what());
    }
}

Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

IndexList parse_sequence(const std::string& text, Index n) {
    IndexList out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            bad("bad sequence entry \"" + tok + "\"");
        }
        if (pos != tok.size()) bad("bad sequence entry \"" + tok + "\"");
        if (v < 1 || static_cast<Index>(v) > n) bad("sequence entry " + tok + " out of range 1.." + std::to_string(n));
        out.push_back(static_cast<Index>(v - 1));
    }
    return out;
}

}  // namespace ctw::io
