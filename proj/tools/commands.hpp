#pragma once

#include <optional>
#include <string>

#include "ctw/io/json_io.hpp"

namespace ctw::cli {

struct JobConfig {
    std::string command;
    std::string seed_path;
    std::string target_path;
    std::string seq;
    std::string sigma;
    std::string side = "A";
    std::optional<std::int64_t> alpha;
    Index depth = 12;
    Index index = 1;
    std::string params;
    std::string kind;     // twist kind or example name
    std::string data_dir;
    bool poisson = false;
    bool integral = false;
};

io::Json cmd_seed_check(const JobConfig& cfg);
io::Json cmd_mutate(const JobConfig& cfg);
io::Json cmd_expand(const JobConfig& cfg);
io::Json cmd_cgmat(const JobConfig& cfg);
io::Json cmd_var_solve(const JobConfig& cfg);
io::Json cmd_twist(const JobConfig& cfg);
/// Runs the gallery file; "ok" false when any expectation differs.
io::Json cmd_examples(const JobConfig& cfg);

/// Polynomial in the family parameters, printed with their names.
std::string param_poly_str(const LaurentPoly& p, const std::vector<std::string>& names);

/// Human-readable rendering of a result document.
std::string pretty(const io::Json& j);

/// "λ=1,mu=-1/2" -> parameter vector of fam.
RatVec parse_params(const std::string& text, const VariationFamily& fam);

}  // namespace ctw::cli
