#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "nqg/bigcount.hpp"
#include "nqg/partial.hpp"

namespace nqg {

struct EnumOptions {
    std::size_t cell_cap = 4096;  // refuse full enumeration beyond k^n cells
    int workers = 1;              // subtree parallelism for counting
};

enum class EnumMode { all, loops };

// Exact count by depth-first completion of the table in lexicographic cell
// order with per-line candidate bitmasks. Mode `loops` pins every point with
// at most one nonzero coordinate to the identity value and counts Q'(n,k).
BigCount count_quasigroups(int n, int k, EnumMode mode, const EnumOptions& opts = {});

// Visits every enumerated table in deterministic lexicographic order
// (single-streamed regardless of the worker setting). The visitor returns
// false to stop early; the return value is the number of visits made.
std::uint64_t for_each_quasigroup(int n, int k, EnumMode mode,
                                  const std::function<bool(const Hypercube&)>& visit,
                                  const EnumOptions& opts = {});

// Exact number of full quasigroups extending a box-domain partial quasigroup,
// by backtracking over the two remaining hyperplanes.
BigCount count_extensions(const PartialQuasigroup& g, const EnumOptions& opts = {});

// Analysis of the two missing hyperplanes of a box-domain partial quasigroup:
// each Sigma^(n-1) vertex carries the pair of values missing from its fiber;
// vertices differing in one coordinate with intersecting pairs are linked.
// Connected classes of that graph each admit 0, 1 or 2 consistent value
// assignments, and extensions factor over the classes.
struct GammaReport {
    int k = 0, n = 0;  // of the ambient partial; vertices live in Sigma^(n-1)
    std::vector<std::pair<Symbol, Symbol>> missing;   // per vertex, flat order
    std::vector<std::vector<std::size_t>> components; // sorted vertex indices
    std::vector<int> choices;                         // per component: 0, 1 or 2

    BigCount choice_product() const;
    Point vertex_point(std::size_t index) const;
};

GammaReport gamma_analysis(const PartialQuasigroup& g);

}  // namespace nqg
