#pragma once

#include <string>
#include <vector>

#include "ctw/exact/matrix.hpp"

namespace ctw {

/// Bijection on {0..n-1}, stored as images.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Index> images);
    static Permutation identity(Index n);

    Index size() const { return img_.size(); }
    Index operator()(Index i) const { return img_[i]; }
    Permutation inverse() const;
    /// (this ∘ other)(i) = this(other(i))
    Permutation compose(const Permutation& other) const;
    bool is_identity() const;
    const std::vector<Index>& images() const { return img_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<Index> img_;
};

/// P_σ with col_i = e_{σ(i)}, so col_k(H·P_σ) = col_{σ(k)}(H).
RatMatrix permutation_matrix(const Permutation& sigma, Index size);

}  // namespace ctw
