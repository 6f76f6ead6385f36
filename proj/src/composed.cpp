#include "nqg/composed.hpp"

#include <algorithm>

namespace nqg {

ComposedQuasigroup ComposedQuasigroup::variable(int k, int var_index) {
    if (k < 1 || k > max_order) throw usage_error("order out of range");
    if (var_index < 0) throw usage_error("variable index must be nonnegative");
    ComposedQuasigroup c;
    c.k_ = k;
    c.nodes_.push_back(Node{-1, -1, -1, var_index});
    c.root_ = 0;
    c.vars_ = {var_index};
    return c;
}

ComposedQuasigroup ComposedQuasigroup::compose(const Hypercube& table,
                                               const ComposedQuasigroup& left,
                                               const ComposedQuasigroup& right) {
    if (table.arity() != 2) throw usage_error("node tables must be binary");
    if (table.order() != left.k_ || table.order() != right.k_)
        throw usage_error("all node tables must share one order");

    ComposedQuasigroup c;
    c.k_ = table.order();
    c.nodes_ = left.nodes_;
    c.tables_ = left.tables_;
    const int node_off = static_cast<int>(c.nodes_.size());
    const int table_off = static_cast<int>(c.tables_.size());
    for (Node nd : right.nodes_) {
        if (nd.table >= 0) {
            nd.table += table_off;
            nd.left += node_off;
            nd.right += node_off;
        }
        c.nodes_.push_back(nd);
    }
    c.tables_.insert(c.tables_.end(), right.tables_.begin(), right.tables_.end());
    c.tables_.push_back(table);
    c.nodes_.push_back(Node{static_cast<int>(c.tables_.size()) - 1, left.root_,
                            right.root_ + node_off, -1});
    c.root_ = static_cast<int>(c.nodes_.size()) - 1;

    c.vars_.resize(left.vars_.size() + right.vars_.size());
    std::merge(left.vars_.begin(), left.vars_.end(), right.vars_.begin(), right.vars_.end(),
               c.vars_.begin());
    if (std::adjacent_find(c.vars_.begin(), c.vars_.end()) != c.vars_.end())
        throw usage_error("variable index used in both subtrees");
    return c;
}

void ComposedQuasigroup::check_complete() const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] != static_cast<int>(i))
            throw usage_error("leaf variables must be exactly 0..n-1");
}

Symbol ComposedQuasigroup::evaluate(const Point& p) const {
    check_complete();
    if (static_cast<int>(p.size()) != arity()) throw usage_error("point arity mismatch");
    for (Symbol v : p)
        if (v >= k_) throw usage_error("point coordinate out of range");

    // Nodes are in post-order by construction (children precede parents).
    std::vector<Symbol> val(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& nd = nodes_[i];
        val[i] = nd.table < 0 ? p[nd.var]
                              : tables_[nd.table].at2(val[nd.left], val[nd.right]);
    }
    return val[root_];
}

Hypercube ComposedQuasigroup::materialize(std::size_t cell_cap) const {
    check_complete();
    checked_cell_count(k_, arity(), cell_cap, "materialization cap");
    return Hypercube::from_function(k_, arity(), [this](const Point& p) { return evaluate(p); });
}

}  // namespace nqg
