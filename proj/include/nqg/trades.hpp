#pragma once

#include <cstdint>
#include <vector>

#include "nqg/composed.hpp"
#include "nqg/hypercube.hpp"

namespace nqg {

// A value pair plus a point set closed under line partners: every member has,
// in every coordinate direction, the matching {a,b}-cell of its line in the
// set. Swapping a and b on the set yields another quasigroup.
struct Component {
    Symbol a = 0, b = 0;
    std::vector<Point> points;  // sorted lexicographically

    bool operator==(const Component&) const = default;
};

// Points where f takes value a or b, sorted. Size is 2*k^(n-1) whenever f is
// a quasigroup.
std::vector<Point> value_support(const Hypercube& f, Symbol a, Symbol b);

// Minimal switchable classes for the pair {a,b}: the two {a,b}-cells of every
// axis line are linked and the connected classes are returned, ordered by
// their least point.
std::vector<Component> find_components(const Hypercube& f, Symbol a, Symbol b);
std::vector<Component> find_components(const ComposedQuasigroup& f, Symbol a, Symbol b,
                                       std::size_t cell_cap = ComposedQuasigroup::default_materialize_cap);

// Component verification from scratch: values on the set lie in {a,b}, both
// occur, and every line partner is inside the set.
bool is_component(const Hypercube& f, const Component& c);

// Values a,b exchanged on c.points, all else unchanged. The component is
// re-verified, not trusted.
Hypercube switch_component(const Hypercube& f, const Component& c);

enum class FamilyStrategy { pair_partition, greedy, exact };

// Pairwise-disjoint components of f.
//  pair_partition: union of minimal components over the pairs {2i,2i+1}
//   (disjoint across i by construction);
//  greedy: largest-first selection over the minimal components of all pairs;
//  exact: branch-and-bound maximum disjoint family over all pairs, refused
//   above 20 candidate components.
std::vector<Component> disjoint_family(const Hypercube& f, FamilyStrategy strategy);

// Switches exactly the family members selected by the mask bits.
Hypercube switch_family(const Hypercube& f, const std::vector<Component>& family,
                        std::uint64_t mask);

// Minimal {2i,2i+1}-component counts of the psi tower, and their minimum.
struct AlphaReport {
    int n = 0, m = 0, k = 0;
    std::vector<std::size_t> per_pair;  // count for pair {2i,2i+1}, i = 0..m-1
    std::size_t alpha = 0;              // min over i
};

AlphaReport alpha_report(int n, int m,
                         std::size_t cell_cap = ComposedQuasigroup::default_materialize_cap);

}  // namespace nqg
