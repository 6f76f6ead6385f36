#pragma once

#include <vector>

#include "nqg/hypercube.hpp"

namespace nqg {

// Expression tree of binary tables over input variables: a lazy carrier for
// iterated compositions whose explicit table may be too large to hold.
// Leaves name distinct variable indices (0-based); internal nodes hold a
// binary Hypercube applied to the two child values.
class ComposedQuasigroup {
public:
    static constexpr std::size_t default_materialize_cap = std::size_t{1} << 24;

    static ComposedQuasigroup variable(int k, int var_index);
    // Tree with `table` at the root; variable sets of the children must be disjoint.
    static ComposedQuasigroup compose(const Hypercube& table, const ComposedQuasigroup& left,
                                      const ComposedQuasigroup& right);

    int order() const { return k_; }
    // Number of leaf variables. Leaves must carry exactly 0..arity()-1 for
    // evaluation; compose() keeps that invariant checkable cheaply.
    int arity() const { return static_cast<int>(vars_.size()); }

    Symbol evaluate(const Point& p) const;
    Hypercube materialize(std::size_t cell_cap = default_materialize_cap) const;

private:
    struct Node {
        int table = -1;       // index into tables_, -1 for a leaf
        int left = -1, right = -1;
        int var = -1;         // variable index for a leaf
    };

    ComposedQuasigroup() = default;
    void check_complete() const;

    int k_ = 0;
    int root_ = -1;
    std::vector<Node> nodes_;
    std::vector<Hypercube> tables_;
    std::vector<int> vars_;  // sorted distinct variable indices
};

}  // namespace nqg
