#pragma once

#include <json.hpp>
#include <string>

#include "ctw/twist/twist.hpp"

namespace ctw::io {

using Json = nlohmann::json;

/// Integers as numbers, everything else as "p/q".
Json to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);

Json to_json(const RatVec& v);

/// 1-based index lists.
Json index_list_to_json(const IndexList& idx);
IndexList index_list_from_json(const Json& j, Index n);

/// sigma as 1-based images.
Json to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j);

/// {"n", "frozen" (1-based), "B", "d", "labels"?}; ValidationError on bad input.
Json to_json(const Seed& s);
Seed seed_from_json(const Json& j);

Json to_json(const VariationMap& m);
VariationMap variation_from_json(const Json& j);

Json to_json(const VariationFamily& fam);

Json to_json(const TwistSpec& spec);
TwistSpec twist_from_json(const Json& j);

Json to_json(const Report& r);
Json to_json(const ExpVec& e);

/// Polynomials as [[coef, [e_1..e_n]], ...]; expressions as a polynomial or
/// {"num": poly, "den": poly}.
LaurentPoly poly_from_json(const Json& j, Index nvars);
Json to_json(const LaurentPoly& p);
RationalExpr expr_from_json(const Json& j, Index nvars);

/// Sorted keys, two-space indent, trailing newline.
std::string render(const Json& j);
Json parse(const std::string& text);
Json load_file(const std::string& path);

/// Parses "1,2,1" into 0-based indices.
IndexList parse_sequence(const std::string& text, Index n);

}  // namespace ctw::io
