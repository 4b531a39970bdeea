#include "ctw/exact/permutation.hpp"

#include "ctw/error.hpp"

namespace ctw {

Permutation::Permutation(std::vector<Index> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Index v : img_) {
        if (v >= img_.size() || seen[v]) throw ValidationError("exact-core", "malformed permutation");
        seen[v] = true;
    }
}

Permutation Permutation::identity(Index n) {
    std::vector<Index> id(n);
    for (Index i = 0; i < n; ++i) id[i] = i;
    return Permutation(std::move(id));
}

Permutation Permutation::inverse() const {
    std::vector<Index> inv(img_.size());
    for (Index i = 0; i < img_.size(); ++i) inv[img_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
    if (other.size() != size()) throw ValidationError("exact-core", "permutation size mismatch");
    std::vector<Index> out(size());
    for (Index i = 0; i < size(); ++i) out[i] = img_[other(i)];
    return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
    for (Index i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

RatMatrix permutation_matrix(const Permutation& sigma, Index size) {
    if (sigma.size() != size) throw ValidationError("exact-core", "permutation size mismatch");
    RatMatrix p(size, size);
    for (Index i = 0; i < size; ++i) p(sigma(i), i) = 1;
    return p;
}

}  // namespace ctw
