#pragma once

#include <utility>
#include <vector>

#include "nqg/hypercube.hpp"

namespace nqg {

// Quasigroup-consistent values on a sub-domain of Sigma^n. Two domain forms:
//  - box: the last coordinate avoids a value pair {a,b}, i.e. the domain is
//    Sigma^(n-1) x B with B = Sigma \ {a,b};
//  - explicit: an arbitrary point set.
// The constructor rejects any assignment where two domain points differing in
// exactly one coordinate share a value.
class PartialQuasigroup {
public:
    // `values` is vertex-major: for each vertex of Sigma^(n-1) (row-major,
    // last coordinate fastest) the k-2 values over B in ascending symbol order.
    static PartialQuasigroup box(int k, int n, Symbol a, Symbol b, std::vector<Symbol> values);
    static PartialQuasigroup from_points(int k, int n, std::vector<Point> points,
                                         std::vector<Symbol> values);
    // Restriction of a full table to the box avoiding {a,b}.
    static PartialQuasigroup restrict_box(const Hypercube& f, Symbol a, Symbol b);

    int order() const { return k_; }
    int arity() const { return n_; }

    bool is_box() const { return box_; }
    std::pair<Symbol, Symbol> box_pair() const;
    // Symbols of B in ascending order (box form only).
    const std::vector<Symbol>& box_symbols() const;
    std::size_t vertex_count() const;  // k^(n-1), box form only
    // Value at (vertex, B[pos]); vertex is a flat Sigma^(n-1) index.
    Symbol box_value(std::size_t vertex, int pos) const;

    const std::vector<Point>& points() const { return points_; }
    const std::vector<Symbol>& values() const { return values_; }

    bool operator==(const PartialQuasigroup&) const = default;

private:
    PartialQuasigroup() = default;
    void check_consistent() const;

    int k_ = 0, n_ = 0;
    bool box_ = false;
    Symbol a_ = 0, b_ = 0;
    std::vector<Symbol> bsyms_;
    std::vector<Point> points_;   // explicit form only
    std::vector<Symbol> values_;  // box: vertex-major; explicit: aligned with points_
};

}  // namespace nqg
