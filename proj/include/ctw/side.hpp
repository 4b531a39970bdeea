#pragma once

#include <string>

namespace ctw {

/// A: cluster A-side (lattice M, forms Λ). X: cluster Poisson side (lattice N, form ω).
enum class Side { A, X };

inline const char* side_name(Side s) { return s == Side::A ? "A" : "X"; }
inline std::string var_prefix(Side s) { return s == Side::A ? "A" : "X"; }

}  // namespace ctw
