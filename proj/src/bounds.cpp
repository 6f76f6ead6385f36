#include "nqg/bounds.hpp"

#include <cmath>

#include "nqg/census4.hpp"
#include "nqg/constructions.hpp"
#include "nqg/trades.hpp"

namespace nqg {

double upper_bound_constant(int k) {
    if (k < 5) throw usage_error("the bound constant needs k >= 5 (k = 4 divides by zero)");
    double log2_fact = 0;
    for (int i = 2; i <= k; ++i) log2_fact += std::log2(static_cast<double>(i));
    return log2_fact / (k - 2) + static_cast<double>(k) / (k - 4);
}

double upper_bound_log2(int n, int k) {
    if (n < 2) throw usage_error("the upper bound needs n >= 2");
    return upper_bound_constant(k) * std::pow(static_cast<double>(k - 2), n);
}

BigCount lower_bound_log2(int n, int k) {
    if (k < 5 || k % 2 == 0) throw usage_error("the lower bound needs odd k >= 5");
    if (n < 2) throw usage_error("the lower bound needs n >= 2");
    const unsigned lo = static_cast<unsigned>((n - 1) / 2);
    const unsigned hi = static_cast<unsigned>((n + 1 + 1) / 2);  // ceil((n+1)/2)
    return bigpow(BigCount((k - 3) / 2), lo) * bigpow(BigCount((k - 1) / 2), hi);
}

TradeBounds trade_bounds(int n, int k, std::size_t cell_cap) {
    if (k < 3) throw usage_error("trade bounds need k >= 3");
    if (n < 1) throw usage_error("arity must be positive");
    TradeBounds tb;
    tb.upper = bigpow(BigCount(k), static_cast<unsigned>(n)) >> static_cast<unsigned>(n);

    if (k % 2 == 0) {
        const Hypercube f = interleaved_group(n, k, cell_cap);
        tb.lower = BigCount(disjoint_family(f, FamilyStrategy::pair_partition).size());
        return tb;
    }
    if (k >= 7) {
        const Hypercube f = big_psi(n, (k - 1) / 2).materialize(cell_cap);
        tb.lower = BigCount(disjoint_family(f, FamilyStrategy::pair_partition).size());
        return tb;
    }
    // Odd k < 7: the box construction needs an idempotent table of order
    // (k-1)/2 >= 3, which does not exist here. Count what the cyclic-sum
    // table offers and say so.
    checked_cell_count(k, n, cell_cap, "materialization cap");
    const Hypercube f = Hypercube::from_function(k, n, [&](const Point& p) {
        int s = 0;
        for (Symbol x : p) s += x;
        return static_cast<Symbol>(s % k);
    });
    tb.lower = BigCount(disjoint_family(f, FamilyStrategy::pair_partition).size());
    tb.generic_lower = true;
    return tb;
}

std::vector<ChainStep> chain_bound(int n_from, int n_to, int k, const BigCount& base) {
    if (k < 3) throw usage_error("chain bound needs k >= 3");
    if (n_from < 1 || n_to < n_from) throw usage_error("need 1 <= n_from <= n_to");
    if (base <= 0) throw usage_error("base count must be positive");

    std::vector<ChainStep> steps;
    double log2_bound = log2_approx(base);
    std::optional<BigCount> exact;
    if (k % 2 == 0) exact = base;
    steps.push_back(ChainStep{n_from, log2_bound, exact});
    for (int n = n_from; n < n_to; ++n) {
        log2_bound = (k - 2) * log2_bound + std::pow(k / 2.0, n);
        if (exact) {
            const BigCount exp2n = bigpow(BigCount(k / 2), static_cast<unsigned>(n));
            // Past a few million bits the exact value stops being useful.
            if (exp2n > (1 << 22) || log2_bound > double(1 << 22))
                exact.reset();
            else
                exact = bigpow(*exact, static_cast<unsigned>(k - 2)) *
                        pow2(exp2n.convert_to<unsigned long>());
        }
        steps.push_back(ChainStep{n + 1, log2_bound, exact});
    }
    return steps;
}

std::pair<BigCount, BigCount> q4_asymptotic_ratio_exact(int n) {
    const auto rows = q4_recurrence(n);
    const BigCount num = rows.back().q;
    const BigCount den =
        bigpow(BigCount(3), static_cast<unsigned>(n + 1)) * pow2((1ul << n) + 1);
    return {num, den};
}

double q4_asymptotic_ratio(int n) {
    const auto [num, den] = q4_asymptotic_ratio_exact(n);
    return std::exp2(log2_approx(num) - log2_approx(den));
}

BoundsReport bounds_report(int n, int k, std::size_t cell_cap) {
    BoundsReport rep;
    rep.n = n;
    rep.k = k;
    if (k >= 5) {
        rep.c_k = upper_bound_constant(k);
        if (n >= 2) rep.upper_log2 = upper_bound_log2(n, k);
        if (k % 2 == 1 && n >= 2) rep.lower_log2_exponent = lower_bound_log2(n, k);
    }
    const TradeBounds tb = trade_bounds(n, k, cell_cap);
    rep.trd_upper = tb.upper;
    rep.trd_lower = tb.lower;
    rep.trd_lower_generic = tb.generic_lower;
    return rep;
}

}  // namespace nqg
