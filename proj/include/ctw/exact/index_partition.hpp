#pragma once

#include <vector>

#include "ctw/exact/matrix.hpp"

namespace ctw {

/// I = I_uf ⊔ I_f, both lists ascending.
class IndexPartition {
public:
    IndexPartition() = default;
    /// `frozen` need not be sorted; throws on out-of-range or duplicate entries.
    IndexPartition(Index n, const IndexList& frozen);

    Index n() const { return n_; }
    const IndexList& unfrozen() const { return unfrozen_; }
    const IndexList& frozen() const { return frozen_; }
    IndexList all() const;
    Index n_uf() const { return unfrozen_.size(); }
    Index n_f() const { return frozen_.size(); }
    bool is_frozen(Index i) const { return frozen_mask_.at(i); }
    /// Position of i inside unfrozen() (or frozen()).
    Index uf_pos(Index i) const;
    Index f_pos(Index i) const;

    friend bool operator==(const IndexPartition& a, const IndexPartition& b) {
        return a.n_ == b.n_ && a.frozen_ == b.frozen_;
    }

private:
    Index n_ = 0;
    IndexList unfrozen_, frozen_;
    std::vector<bool> frozen_mask_;
};

}  // namespace ctw
