#include "ctw/exact/index_partition.hpp"

#include <algorithm>

#include "ctw/error.hpp"

namespace ctw {

IndexPartition::IndexPartition(Index n, const IndexList& frozen) : n_(n), frozen_mask_(n, false) {
    for (Index f : frozen) {
        if (f >= n) throw ValidationError("exact-core", "frozen index out of range");
        if (frozen_mask_[f]) throw ValidationError("exact-core", "duplicate frozen index");
        frozen_mask_[f] = true;
    }
    for (Index i = 0; i < n; ++i) (frozen_mask_[i] ? frozen_ : unfrozen_).push_back(i);
}

IndexList IndexPartition::all() const {
    IndexList a(n_);
    for (Index i = 0; i < n_; ++i) a[i] = i;
    return a;
}

Index IndexPartition::uf_pos(Index i) const {
    auto it = std::lower_bound(unfrozen_.begin(), unfrozen_.end(), i);
    if (it == unfrozen_.end() || *it != i) throw ValidationError("exact-core", "index is not unfrozen");
    return static_cast<Index>(it - unfrozen_.begin());
}

Index IndexPartition::f_pos(Index i) const {
    auto it = std::lower_bound(frozen_.begin(), frozen_.end(), i);
    if (it == frozen_.end() || *it != i) throw ValidationError("exact-core", "index is not frozen");
    return static_cast<Index>(it - frozen_.begin());
}

}  // namespace ctw
