#pragma once

#include <optional>
#include <vector>

#include "nqg/bigcount.hpp"
#include "nqg/composed.hpp"

namespace nqg {

// c_k = log2(k!)/(k-2) + k/(k-4); defined for k >= 5. Evaluated in double
// (52-bit mantissa), well past the 30 significant bits the reports promise.
double upper_bound_constant(int k);

// c_k * (k-2)^n, an upper bound on log2 of the quasigroup count.
double upper_bound_log2(int n, int k);

// Exact exponent ((k-3)/2)^floor((n-1)/2) * ((k-1)/2)^ceil((n+1)/2);
// 2^exponent lower-bounds the quasigroup count for odd k >= 5.
BigCount lower_bound_log2(int n, int k);

// Independent-trade bounds: upper = floor(k^n / 2^n); lower is witnessed
// constructively (interleaved table for even k, pair-partition family of the
// psi tower for odd k >= 7). Odd k < 7 falls back to the pair-partition
// family of the cyclic-sum table, which is flagged as a generic witness.
struct TradeBounds {
    BigCount lower, upper;
    bool generic_lower = false;
};

TradeBounds trade_bounds(int n, int k,
                         std::size_t cell_cap = ComposedQuasigroup::default_materialize_cap);

// One step of log2 Q(n+1,k) <= (k-2) log2 Q(n,k) + (k/2)^n, iterated from an
// exact base count. The bound is integral only for even k, where the exact
// value is carried alongside.
struct ChainStep {
    int n = 0;
    double log2_bound = 0;
    std::optional<BigCount> exact;
};

std::vector<ChainStep> chain_bound(int n_from, int n_to, int k, const BigCount& base);

// Q(n,4) divided by 3^(n+1) * 2^(2^n + 1), as exact numerator/denominator and
// as a double.
std::pair<BigCount, BigCount> q4_asymptotic_ratio_exact(int n);
double q4_asymptotic_ratio(int n);

struct BoundsReport {
    int n = 0, k = 0;
    std::optional<double> c_k;                    // k >= 5
    std::optional<double> upper_log2;             // k >= 5, n >= 2
    std::optional<BigCount> lower_log2_exponent;  // odd k >= 5
    BigCount trd_upper;
    std::optional<BigCount> trd_lower;
    bool trd_lower_generic = false;
    int precision_bits = 50;  // binary digits carried by the real-valued fields
};

BoundsReport bounds_report(int n, int k,
                           std::size_t cell_cap = ComposedQuasigroup::default_materialize_cap);

}  // namespace nqg
