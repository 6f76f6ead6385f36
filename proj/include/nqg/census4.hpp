#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nqg/bigcount.hpp"
#include "nqg/enumerate.hpp"
#include "nqg/hypercube.hpp"

namespace nqg {

// A loop of order 4 is a-semilinear (a in {1,2,3}) when the indicator of its
// {0,a}-preimage is an affine mod-2 function of the per-coordinate {0,a}
// indicators. The affine constant is forced by the identity element:
// eps = (n+1) mod 2.
bool is_a_semilinear(const Hypercube& f, int a);

struct SemilinearClass {
    std::array<bool, 3> flags{};  // a = 1, 2, 3
    bool linear = false;          // two flags set (then necessarily all three)
    int epsilon = 0;

    int count() const { return int(flags[0]) + int(flags[1]) + int(flags[2]); }
};

SemilinearClass classify_semilinearity(const Hypercube& f);

// Witness that f factors as outer(inner(x_M), x_rest), with inner labelled so
// that it is a loop whenever f is: inner(x_M) = f(x_M, 0...0).
struct ReductionWitness {
    std::vector<int> inner_coords;  // M, sorted; 2 <= |M| < n
    Hypercube inner;                // |M|-ary
    Hypercube outer;                // (n-|M|+1)-ary, first argument is inner's value
};

// Scans coordinate subsets in size-then-lexicographic order; absence means no
// subset works, i.e. f is irreducible.
std::optional<ReductionWitness> find_reduction(const Hypercube& f);

// Recomposes a witness over all points (test aid).
Hypercube recompose(const ReductionWitness& w, int n);

enum class RootKind { irreducible, binary_root, higher_root };

// For loops of order 4, arity >= 3: the canonical outer operation. A binary
// root is recovered by freezing each side of a factoring bipartition at zeros
// and is verified on all points; the flat blocks are the maximal sub-loops
// not splittable by the same root.
struct RootClassification {
    RootKind kind = RootKind::irreducible;
    std::optional<Hypercube> root;        // binary_root only
    std::vector<int> split;               // a factoring bipartition side (binary_root only)
    std::vector<std::vector<int>> blocks; // flat partition (binary_root only)
};

RootClassification root_classification(const Hypercube& f);

// The four binary loops of order 4 in enumeration order.
const std::array<Hypercube, 4>& binary_loops_order4();

// Partition shape of an n-set: distinct block sizes with multiplicities.
struct PartitionShape {
    // (size, multiplicity), sizes strictly increasing, multiplicities >= 1
    std::vector<std::pair<int, int>> parts;

    int ground() const;  // sum of size*multiplicity
    int blocks() const;  // sum of multiplicities
};

// Number of set partitions of [ground()] with this shape:
// n! / prod(j_i!^{k_i}) / prod(k_i!).
BigCount partition_count(const PartitionShape& shape);

// All shapes of partitions of n (every integer partition of n).
std::vector<PartitionShape> partition_shapes(int n);

// Per-arity ledger of the order-4 loop counts. Root-anchored convention:
// r_a_star and r_star count loops whose root is ONE fixed admissible binary
// operation (so r_2 = 1: the root operation itself).
struct RecurrenceRow {
    int n = 0;
    BigCount ell_a;     // a-semilinear loops: 2^(2^n - n - 1)
    BigCount r_a_star;  // reducible a-semilinear, fixed a-semilinear binary root
    BigCount r_a_0;     // reducible a-semilinear, root arity >= 3
    BigCount r_star;    // reducible, fixed binary root
    BigCount r_0;       // reducible, root arity >= 3
    BigCount p_a;       // irreducible a-semilinear
    BigCount p;         // irreducible
    BigCount v;         // all loops = Q'(n,4)
    BigCount q;         // Q(n,4) = 4 * 6^n * v
};

std::vector<RecurrenceRow> q4_recurrence(int n_max);

// Exhaustive classification of all order-4 loops of arity n (3 or 4).
struct CensusRecord {
    int n = 0;
    std::uint64_t total = 0;
    std::uint64_t semilinear = 0;
    std::array<std::uint64_t, 3> a_semilinear{};  // a = 1, 2, 3
    std::uint64_t linear = 0;
    std::uint64_t reducible = 0;
    std::uint64_t binary_root_total = 0;
    std::array<std::uint64_t, 4> binary_root{};   // per root, enumeration order
    std::uint64_t higher_root = 0;
    std::uint64_t irreducible = 0;
    std::array<std::uint64_t, 3> irreducible_a_semilinear{};
    // reducible a-semilinear loops split by root: per (a, root) for binary
    // roots, per a for roots of arity >= 3
    std::array<std::array<std::uint64_t, 4>, 3> a_semilinear_binary_root{};
    std::array<std::uint64_t, 3> a_semilinear_higher_root{};
    std::uint64_t violating = 0;  // neither reducible nor semilinear (must be 0)
};

CensusRecord census(int n, const EnumOptions& opts = {});

}  // namespace nqg
