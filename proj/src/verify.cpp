#include "nqg/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "nqg/bounds.hpp"
#include "nqg/census4.hpp"
#include "nqg/constructions.hpp"
#include "nqg/enumerate.hpp"
#include "nqg/json_io.hpp"
#include "nqg/trades.hpp"

namespace nqg {

std::string default_data_dir() {
    if (const char* env = std::getenv("NQG_DATA_DIR")) return env;
#ifdef NQG_DEFAULT_DATA_DIR
    return NQG_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass || r.skipped; });
}

namespace {

// Collects failures for one criterion; empty means pass.
struct Check {
    std::ostringstream notes;
    int failures = 0;
    std::uint64_t cases = 0;

    template <class A, class B>
    void equal(const A& got, const B& want, const std::string& what) {
        ++cases;
        if (!(got == want)) {
            ++failures;
            notes << "  FAIL " << what << ": expected " << want << ", got " << got << '\n';
        }
    }

    void require(bool ok, const std::string& what) {
        ++cases;
        if (!ok) {
            ++failures;
            notes << "  FAIL " << what << '\n';
        }
    }

    void note(const std::string& s) { notes << "  " << s << '\n'; }
};

// Randomized backtracking fill of selected cells of a k^n grid so that no
// value repeats on any axis line. Test-side machinery, deliberately separate
// from the enumeration kernel.
struct RandomFiller {
    int k, n;
    std::size_t cells;
    std::vector<std::size_t> strides;

    RandomFiller(int k_, int n_) : k(k_), n(n_) {
        cells = 1;
        for (int i = 0; i < n; ++i) cells *= static_cast<std::size_t>(k);
        strides.resize(static_cast<std::size_t>(n));
        std::size_t s = 1;
        for (int i = n - 1; i >= 0; --i) {
            strides[i] = s;
            s *= static_cast<std::size_t>(k);
        }
    }

    // line key along `axis`: cell index with that coordinate zeroed
    std::size_t line_key(std::size_t idx, int axis) const {
        const std::size_t coord = idx / strides[axis] % static_cast<std::size_t>(k);
        return idx - coord * strides[axis];
    }

    std::vector<Symbol> fill(const std::vector<std::size_t>& to_fill, std::mt19937_64& rng) const {
        const std::uint64_t full = (k == 64) ? ~0ull : (1ull << k) - 1;
        // Unlucky orders can thrash near the end of a fill; restarting with a
        // fresh shuffle converges much faster than exhausting the dead end.
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::vector<std::vector<std::uint64_t>> used(static_cast<std::size_t>(n));
            for (auto& u : used) u.assign(cells, 0);
            std::vector<Symbol> vals(cells, 0xFF);
            long budget = 100000;

            auto rec = [&](auto&& self, std::size_t pos) -> bool {
                if (pos == to_fill.size()) return true;
                if (--budget < 0) return false;
                const std::size_t idx = to_fill[pos];
                std::uint64_t avail = full;
                for (int a = 0; a < n; ++a) avail &= ~used[a][line_key(idx, a)];
                std::vector<Symbol> opts;
                while (avail) {
                    opts.push_back(static_cast<Symbol>(std::countr_zero(avail)));
                    avail &= avail - 1;
                }
                std::shuffle(opts.begin(), opts.end(), rng);
                for (Symbol s : opts) {
                    vals[idx] = s;
                    for (int a = 0; a < n; ++a) used[a][line_key(idx, a)] |= 1ull << s;
                    if (self(self, pos + 1)) return true;
                    if (budget < 0) return false;
                    for (int a = 0; a < n; ++a) used[a][line_key(idx, a)] &= ~(1ull << s);
                    vals[idx] = 0xFF;
                }
                return false;
            };
            if (rec(rec, 0)) return vals;
        }
        throw std::runtime_error("random fill failed");
    }

    Hypercube random_quasigroup(std::mt19937_64& rng) const {
        std::vector<std::size_t> all(cells);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return Hypercube(k, n, fill(all, rng));
    }

    PartialQuasigroup random_box(Symbol a, Symbol b, std::mt19937_64& rng) const {
        std::vector<std::size_t> to_fill;
        for (std::size_t i = 0; i < cells; ++i) {
            const Symbol last = static_cast<Symbol>(i % static_cast<std::size_t>(k));
            if (last != a && last != b) to_fill.push_back(i);
        }
        const auto vals = fill(to_fill, rng);
        std::vector<Symbol> box_vals;
        box_vals.reserve(to_fill.size());
        for (std::size_t i : to_fill) box_vals.push_back(vals[i]);
        return PartialQuasigroup::box(k, n, a, b, std::move(box_vals));
    }
};

Hypercube cyclic_table(int k, int n) {
    return Hypercube::from_function(k, n, [&](const Point& p) {
        int s = 0;
        for (Symbol x : p) s += x;
        return static_cast<Symbol>(s % k);
    });
}

bool is_box_component(const Component& c) {
    if (c.points.size() != 4) return false;
    const Symbol r = c.points[0][0], s = c.points[0][1];
    if (r % 2 != 0 || s % 2 != 0) return false;
    const std::vector<Point> want = {{r, s},
                                     {r, static_cast<Symbol>(s + 1)},
                                     {static_cast<Symbol>(r + 1), s},
                                     {static_cast<Symbol>(r + 1), static_cast<Symbol>(s + 1)}};
    return c.points == want;
}

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- criteria ------------------------------------------------------------

void crit_recurrence(Check& c, const VerifyOptions& opts) {
    const auto rows = q4_recurrence(8);
    const json fixture = load_json((opts.data_dir.empty() ? default_data_dir() : opts.data_dir) +
                                   "/q4_counts.json");
    const auto& loops = fixture.at("loops");
    const auto& quas = fixture.at("quasigroups");
    for (int n = 1; n <= 8; ++n) {
        c.equal(decimal(rows[n - 1].v), loops.at(n - 1).get<std::string>(),
                "Q'(n=" + std::to_string(n) + ",4)");
        c.equal(decimal(rows[n - 1].q), quas.at(n - 1).get<std::string>(),
                "Q(n=" + std::to_string(n) + ",4)");
    }
}

void crit_enumeration(Check& c, const EnumOptions& eo) {
    const struct {
        int n, k;
        EnumMode mode;
        const char* want;
    } cases[] = {
        {2, 2, EnumMode::all, "2"},      {2, 3, EnumMode::all, "12"},
        {3, 3, EnumMode::all, "24"},     {1, 4, EnumMode::all, "24"},
        {2, 4, EnumMode::all, "576"},    {3, 4, EnumMode::all, "55296"},
        {2, 4, EnumMode::loops, "4"},    {3, 4, EnumMode::loops, "64"},
        {4, 4, EnumMode::loops, "7132"},
    };
    for (const auto& t : cases)
        c.equal(decimal(count_quasigroups(t.n, t.k, t.mode, eo)), std::string(t.want),
                std::string("count(") + std::to_string(t.n) + "," + std::to_string(t.k) +
                    (t.mode == EnumMode::loops ? ",loops)" : ",all)"));
}

void crit_factorization_identity(Check& c, const EnumOptions& eo) {
    const std::pair<int, int> pairs[] = {{2, 2}, {2, 3}, {3, 3}, {1, 4}, {2, 4}, {3, 4}, {4, 4}};
    for (auto [n, k] : pairs) {
        const BigCount all = count_quasigroups(n, k, EnumMode::all, eo);
        const BigCount loops = count_quasigroups(n, k, EnumMode::loops, eo);
        const BigCount derived =
            BigCount(k) * bigpow(factorial(static_cast<unsigned>(k - 1)), static_cast<unsigned>(n)) * loops;
        c.equal(decimal(all), decimal(derived),
                "k*((k-1)!)^n*Q'(n,k) at (" + std::to_string(n) + "," + std::to_string(k) + ")");
    }
}

void census_against_row(Check& c, const CensusRecord& cs, const RecurrenceRow& row,
                        const std::array<SemilinearClass, 4>& root_class) {
    const std::string tag = " (n=" + std::to_string(cs.n) + ")";
    c.equal(decimal(cs.total), decimal(row.v), "census total vs ledger v" + tag);
    c.equal(decimal(cs.irreducible), decimal(row.p), "irreducible vs ledger p" + tag);
    c.equal(decimal(cs.higher_root), decimal(row.r_0), "higher-root vs ledger r_0" + tag);
    for (int r = 0; r < 4; ++r)
        c.equal(decimal(cs.binary_root[r]), decimal(row.r_star),
                "binary-root count for root " + std::to_string(r) + tag);
    for (int a = 0; a < 3; ++a) {
        c.equal(decimal(cs.a_semilinear[a]), decimal(row.ell_a),
                "a-semilinear count, a=" + std::to_string(a + 1) + tag);
        c.equal(decimal(cs.irreducible_a_semilinear[a]), decimal(row.p_a),
                "irreducible a-semilinear vs ledger p_a, a=" + std::to_string(a + 1) + tag);
        c.equal(decimal(cs.a_semilinear_higher_root[a]), decimal(row.r_a_0),
                "a-semilinear higher-root vs ledger r_a_0, a=" + std::to_string(a + 1) + tag);
        for (int r = 0; r < 4; ++r) {
            const BigCount want = root_class[r].flags[a] ? row.r_a_star : BigCount(0);
            c.equal(decimal(cs.a_semilinear_binary_root[a][r]), decimal(want),
                    "a-semilinear binary-root count, a=" + std::to_string(a + 1) + " root " +
                        std::to_string(r) + tag);
        }
    }
    c.equal(decimal(cs.reducible), decimal(cs.binary_root_total + cs.higher_root),
            "reducible = binary + higher" + tag);
    c.equal(decimal(cs.violating), std::string("0"), "loops neither reducible nor semilinear" + tag);
    c.equal(decimal(cs.linear), std::string("1"), "linear loops" + tag);
    c.equal(decimal(cs.semilinear), decimal(3 * row.ell_a - 2), "semilinear total" + tag);
}

void crit_census(Check& c, const VerifyOptions& opts, const EnumOptions& eo) {
    const auto rows = q4_recurrence(4);
    std::array<SemilinearClass, 4> root_class;
    for (std::size_t i = 0; i < 4; ++i) root_class[i] = classify_semilinearity(binary_loops_order4()[i]);

    const CensusRecord c3 = census(3, eo);
    census_against_row(c, c3, rows[2], root_class);
    // frozen reference points
    c.equal(c3.semilinear, std::uint64_t{46}, "semilinear loops (n=3)");
    c.equal(c3.irreducible, std::uint64_t{24}, "irreducible loops (n=3)");
    c.equal(c3.binary_root[0], std::uint64_t{10}, "per-root reducible loops (n=3)");

    if (opts.skip_slow) {
        c.note("skipped: arity-4 census (slow)");
        return;
    }
    const CensusRecord c4 = census(4, eo);
    census_against_row(c, c4, rows[3], root_class);
    c.equal(c4.total, std::uint64_t{7132}, "loops (n=4)");
    c.equal(c4.higher_root, std::uint64_t{576}, "higher-root loops (n=4)");
    c.equal(c4.binary_root_total, std::uint64_t{1048}, "binary-root loops (n=4)");
    c.equal(c4.binary_root[0], std::uint64_t{262}, "per-root reducible loops (n=4)");
    c.equal(c4.irreducible, std::uint64_t{5508}, "irreducible loops (n=4)");
    c.equal(c4.a_semilinear[0], std::uint64_t{2048}, "a-semilinear loops (n=4)");
}

void crit_semilinear_counts(Check& c, const EnumOptions& eo) {
    for (int n = 2; n <= 4; ++n) {
        std::array<std::uint64_t, 3> tally{};
        for_each_quasigroup(n, 4, EnumMode::loops, [&](const Hypercube& f) {
            for (int a = 1; a <= 3; ++a)
                if (is_a_semilinear(f, a)) ++tally[a - 1];
            return true;
        }, eo);
        const BigCount want = pow2((1ul << n) - static_cast<unsigned long>(n) - 1);
        for (int a = 1; a <= 3; ++a)
            c.equal(decimal(tally[a - 1]), decimal(want),
                    "a-semilinear loop count, n=" + std::to_string(n) + " a=" + std::to_string(a));
    }
}

void crit_psi(Check& c, const VerifyOptions& opts) {
    const std::string dir = opts.data_dir.empty() ? default_data_dir() : opts.data_dir;
    const Hypercube phi4 = load_hypercube(dir + "/phi4.json");
    const Hypercube psi9 = load_hypercube(dir + "/psi9.json");
    c.require(psi(4, phi4) == psi9, "psi(4, reference phi) reproduces the reference 9x9 table");

    for (int m = 3; m <= 8; ++m) {
        const Hypercube p = psi(m);
        c.require(validate_quasigroup(p), "psi(" + std::to_string(m) + ") is a quasigroup");
        for (int i = 0; i < m; ++i) {
            const auto comps =
                find_components(p, static_cast<Symbol>(2 * i), static_cast<Symbol>(2 * i + 1));
            c.equal(comps.size(), static_cast<std::size_t>(m),
                    "psi(" + std::to_string(m) + ") component count, pair " + std::to_string(i));
            const auto boxes = std::count_if(comps.begin(), comps.end(), is_box_component);
            c.equal(boxes, static_cast<std::ptrdiff_t>(m - 1),
                    "psi(" + std::to_string(m) + ") box components, pair " + std::to_string(i));
        }
    }
}

void crit_lower_bound_witness(Check& c) {
    const std::pair<int, int> cases[] = {{7, 2}, {7, 3}, {7, 4}, {9, 2}, {9, 3}};
    for (auto [k, n] : cases) {
        const int m = (k - 1) / 2;
        const Hypercube tower = big_psi(n, m).materialize();
        const auto family = disjoint_family(tower, FamilyStrategy::pair_partition);
        const BigCount bound = lower_bound_log2(n, k);
        c.require(BigCount(family.size()) >= bound,
                  "pair-partition family of size " + std::to_string(family.size()) +
                      " >= " + decimal(bound) + " at (k,n)=(" + std::to_string(k) + "," +
                      std::to_string(n) + ")");
        // family members must be pairwise disjoint components
        std::unordered_set<std::size_t> seen;
        bool disjoint = true;
        for (const auto& comp : family)
            for (const Point& p : comp.points)
                if (!seen.insert(tower.index_of(p)).second) disjoint = false;
        c.require(disjoint, "family members are pairwise disjoint");
    }

    // All 2^12 switch patterns of a 12-member family are distinct valid tables.
    const Hypercube base = psi(4);
    auto family = disjoint_family(base, FamilyStrategy::pair_partition);
    c.require(family.size() >= 12, "psi(4) pair-partition family has at least 12 members");
    family.resize(12);
    std::unordered_set<std::string> seen;
    bool all_valid = true;
    for (std::uint64_t mask = 0; mask < (1u << 12); ++mask) {
        const Hypercube g = switch_family(base, family, mask);
        if (!validate_quasigroup(g)) all_valid = false;
        seen.insert(std::string(g.values().begin(), g.values().end()));
    }
    c.equal(seen.size(), std::size_t{1} << 12, "distinct tables over all masks");
    c.require(all_valid, "every switched table is a quasigroup");
}

void crit_even_trades(Check& c) {
    const std::pair<int, int> cases[] = {{2, 4}, {3, 4}, {2, 6}, {3, 6}};
    for (auto [n, k] : cases) {
        const std::string tag = " at (n,k)=(" + std::to_string(n) + "," + std::to_string(k) + ")";
        const Hypercube f = interleaved_group(n, k);
        const auto family = disjoint_family(f, FamilyStrategy::pair_partition);
        const BigCount want = bigpow(BigCount(k / 2), static_cast<unsigned>(n));
        c.equal(decimal(family.size()), decimal(want), "disjoint component count" + tag);
        bool sizes_ok = true;
        for (const auto& comp : family)
            if (comp.points.size() != (std::size_t{1} << n)) sizes_ok = false;
        c.require(sizes_ok, "every component has size 2^n" + tag);
        const TradeBounds tb = trade_bounds(n, k);
        c.equal(decimal(tb.lower), decimal(tb.upper), "trade lower equals upper" + tag);
        c.equal(decimal(tb.upper), decimal(want), "trade upper equals (k/2)^n" + tag);
    }
}

void crit_gamma_suite(Check& c, const VerifyOptions& opts, const EnumOptions& eo) {
    std::mt19937_64 rng(opts.seed * 7919 + 9);
    const std::pair<int, int> grid[] = {{2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}};
    int zero_choice_components = 0;
    for (int t = 0; t < 200; ++t) {
        const auto [n, k] = grid[t % 6];
        const Symbol a = static_cast<Symbol>(rng() % k);
        Symbol b = static_cast<Symbol>(rng() % (k - 1));
        if (b >= a) ++b;
        const PartialQuasigroup g = RandomFiller(k, n).random_box(a, b, rng);

        const GammaReport rep = gamma_analysis(g);
        const BigCount exact = count_extensions(g, eo);
        const std::string tag = " [case " + std::to_string(t) + " n=" + std::to_string(n) +
                                " k=" + std::to_string(k) + "]";
        c.equal(decimal(exact), decimal(rep.choice_product()), "extension count vs choice product" + tag);

        // 2^((k/2)^(n-1)) cap, outward-rounded for odd k
        const double cap_exp = std::pow(k / 2.0, n - 1);
        c.require(exact == 0 || log2_approx(exact) <= cap_exp + 1e-9, "extension cap" + tag);

        bool comp_sizes = true;
        for (const auto& comp : rep.components)
            if (comp.size() < (std::size_t{1} << (n - 1))) comp_sizes = false;
        c.require(comp_sizes, "every graph component has size >= 2^(n-1)" + tag);
        for (int ch : rep.choices) {
            c.require(ch == 0 || ch == 1 || ch == 2, "choice count in {0,1,2}" + tag);
            if (ch == 0) ++zero_choice_components;
        }
    }
    c.note("components admitting no assignment: " + std::to_string(zero_choice_components));
}

void crit_bound_sandwich(Check& c, const VerifyOptions& opts, const EnumOptions& eo) {
    if (!opts.skip_slow) {
        EnumOptions wide = eo;
        const BigCount q25 = count_quasigroups(2, 5, EnumMode::all, wide);
        c.equal(decimal(q25), std::string("161280"), "count(2,5)");
        c.equal(decimal(lower_bound_log2(2, 5)), std::string("4"), "lower exponent (2,5)");
        c.require(pow2(4) <= q25, "2^4 <= count(2,5)");
        const double upper = upper_bound_log2(2, 5);
        c.require(log2_approx(q25) + 1e-6 <= upper,
                  "log2 count(2,5) <= upper bound " + std::to_string(upper));
        const auto chain5 = chain_bound(2, 3, 5, q25);
        c.require(chain5.back().log2_bound > log2_approx(q25), "chain step grows the (2,5) bound");
    } else {
        c.note("skipped: (2,5) enumeration (slow)");
    }

    // Chains never contradict enumerated counts.
    const BigCount q24 = count_quasigroups(2, 4, EnumMode::all, eo);
    const auto chain4 = chain_bound(2, 4, 4, q24);
    c.require(chain4[1].exact && *chain4[1].exact == BigCount(5308416), "chain (2,4) step value");
    c.require(*chain4[1].exact >= count_quasigroups(3, 4, EnumMode::all, eo),
              "chain bound >= count(3,4)");
    c.require(*chain4[2].exact >= BigCount(36972288), "chain bound >= count(4,4)");

    const auto chain3 = chain_bound(2, 3, 3, BigCount(12));
    c.require(chain3[1].log2_bound + 1e-9 >= log2_approx(BigCount(24)),
              "chain bound >= count(3,3) in log2");
}

void crit_asymptotic(Check& c) {
    const auto [num3, den3] = q4_asymptotic_ratio_exact(3);
    c.require(num3 * 3 == den3 * 4, "ratio(3) = 4/3 exactly");
    const double r8 = q4_asymptotic_ratio(8);
    c.require(std::abs(r8 - 1.0) <= 0.01, "|ratio(8) - 1| <= 0.01, got " + std::to_string(r8));
}

void crit_property_suites(Check& c, const VerifyOptions& opts) {
    std::mt19937_64 rng(opts.seed * 104729 + 31);

    std::vector<Hypercube> pool;
    pool.push_back(psi(3));
    pool.push_back(psi(4));
    pool.push_back(interleaved_group(2, 4));
    pool.push_back(interleaved_group(2, 6));
    pool.push_back(interleaved_group(3, 4));
    pool.push_back(cyclic_table(5, 2));
    pool.push_back(cyclic_table(7, 2));
    for (int m = 5; m <= 8; ++m) pool.push_back(idempotent_quasigroup(m));
    for (int t = 0; t < 8; ++t) pool.push_back(RandomFiller(5 + t % 4, 2).random_quasigroup(rng));

    auto random_pair = [&](const Hypercube& f) {
        const int k = f.order();
        const Symbol a = static_cast<Symbol>(rng() % k);
        Symbol b = static_cast<Symbol>(rng() % (k - 1));
        if (b >= a) ++b;
        return std::pair<Symbol, Symbol>(std::min(a, b), std::max(a, b));
    };

    // switch involution + component size floor
    for (int t = 0; t < 150; ++t) {
        const Hypercube& f = pool[rng() % pool.size()];
        const auto [a, b] = random_pair(f);
        const auto comps = find_components(f, a, b);
        bool sizes_ok = true;
        for (const auto& comp : comps)
            if (comp.points.size() < (std::size_t{1} << f.arity())) sizes_ok = false;
        c.require(sizes_ok, "component size >= 2^n [case " + std::to_string(t) + "]");
        if (comps.empty()) continue;
        const Component& comp = comps[rng() % comps.size()];
        const Hypercube g = switch_component(f, comp);
        c.require(validate_quasigroup(g), "switched table is a quasigroup [case " + std::to_string(t) + "]");
        c.require(!(g == f), "switching changes the table [case " + std::to_string(t) + "]");
        c.require(switch_component(g, comp) == f, "switch is an involution [case " + std::to_string(t) + "]");
    }

    // disjoint switches commute
    for (int t = 0; t < 100; ++t) {
        const Hypercube& f = pool[rng() % pool.size()];
        const auto family = disjoint_family(f, FamilyStrategy::pair_partition);
        if (family.size() < 2) continue;
        const std::size_t i = rng() % family.size();
        std::size_t j = rng() % (family.size() - 1);
        if (j >= i) ++j;
        const Hypercube one = switch_component(switch_component(f, family[i]), family[j]);
        const Hypercube two = switch_component(switch_component(f, family[j]), family[i]);
        c.require(one == two, "disjoint switches commute [case " + std::to_string(t) + "]");
    }

    // product components on 4-ary order-7 compositions
    {
        const Hypercube g = psi(3);
        const Hypercube q_pool[] = {cyclic_table(7, 2), psi(3)};
        for (int i = 0; i < 3; ++i) {
            const Symbol a = static_cast<Symbol>(2 * i), b = static_cast<Symbol>(2 * i + 1);
            for (const Component& box : find_components(g, a, b)) {
                if (!is_box_component(box)) continue;
                const Symbol c1 = box.points[0][0], c2 = box.points[0][1];
                for (const Hypercube& q1 : q_pool)
                    for (const Hypercube& q2 : q_pool) {
                        const auto comps1 = find_components(q1, c1, static_cast<Symbol>(c1 + 1));
                        const auto comps2 = find_components(q2, c2, static_cast<Symbol>(c2 + 1));
                        if (comps1.empty() || comps2.empty()) continue;
                        const Component& C1 = comps1[rng() % comps1.size()];
                        const Component& C2 = comps2[rng() % comps2.size()];
                        auto v = [&](int idx) { return ComposedQuasigroup::variable(7, idx); };
                        const Hypercube f =
                            ComposedQuasigroup::compose(
                                g, ComposedQuasigroup::compose(q1, v(0), v(1)),
                                ComposedQuasigroup::compose(q2, v(2), v(3)))
                                .materialize();
                        Component prod;
                        prod.a = a;
                        prod.b = b;
                        for (const Point& p1 : C1.points)
                            for (const Point& p2 : C2.points) {
                                Point p = p1;
                                p.insert(p.end(), p2.begin(), p2.end());
                                prod.points.push_back(std::move(p));
                            }
                        std::sort(prod.points.begin(), prod.points.end());
                        c.require(is_component(f, prod),
                                  "product of components is a component [pair " + std::to_string(i) + "]");
                    }
            }
        }
    }

    // serialization round-trips
    for (int t = 0; t < 100; ++t) {
        const Hypercube& f = pool[rng() % pool.size()];
        const std::string tag = " [case " + std::to_string(t) + "]";
        c.require(hypercube_from_json(to_json(f)) == f, "table round-trip" + tag);
        if (f.order() >= 4 && t % 2 == 0) {
            const auto [a, b] = random_pair(f);
            const PartialQuasigroup g = PartialQuasigroup::restrict_box(f, a, b);
            c.require(partial_from_json(to_json(g)) == g, "box partial round-trip" + tag);
        } else {
            // explicit-domain partial from a random slice of points
            std::vector<Point> pts;
            std::vector<Symbol> vals;
            for (std::size_t i = 0; i < f.cells(); i += 1 + rng() % 7) {
                pts.push_back(f.point_at(i));
                vals.push_back(f.at_index(i));
            }
            const PartialQuasigroup g = PartialQuasigroup::from_points(f.order(), f.arity(), pts, vals);
            c.require(partial_from_json(to_json(g)) == g, "explicit partial round-trip" + tag);
        }
        const auto [a, b] = random_pair(f);
        const auto comps = find_components(f, a, b);
        if (!comps.empty()) {
            const Component& comp = comps[rng() % comps.size()];
            c.require(component_from_json(to_json(comp)) == comp, "component round-trip" + tag);
        }
    }
}

}  // namespace

std::vector<CheckResult> verify_paper(const VerifyOptions& opts_in, std::ostream* progress) {
    VerifyOptions opts = opts_in;
    if (opts.data_dir.empty()) opts.data_dir = default_data_dir();
    EnumOptions eo;
    eo.workers = opts.workers > 0
                     ? opts.workers
                     : std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 16);

    struct Criterion {
        const char* name;
        double budget_s;  // <= 0: untimed
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"recurrence-reproduction", 1, [&](Check& c) { crit_recurrence(c, opts); }},
        {"enumeration-oracles", 30, [&](Check& c) { crit_enumeration(c, eo); }},
        {"loop-factorization-identity", 0, [&](Check& c) { crit_factorization_identity(c, eo); }},
        {"census-vs-recurrence", 300, [&](Check& c) { crit_census(c, opts, eo); }},
        {"semilinear-counts", 0, [&](Check& c) { crit_semilinear_counts(c, eo); }},
        {"psi-reproduction", 5, [&](Check& c) { crit_psi(c, opts); }},
        {"switching-lower-bound", 120, [&](Check& c) { crit_lower_bound_witness(c); }},
        {"even-order-trade-equality", 0, [&](Check& c) { crit_even_trades(c); }},
        {"completion-count-suite", 120, [&](Check& c) { crit_gamma_suite(c, opts, eo); }},
        {"bound-sandwich", 60, [&](Check& c) { crit_bound_sandwich(c, opts, eo); }},
        {"asymptotic-ratio", 1, [&](Check& c) { crit_asymptotic(c); }},
        {"property-suites", 120, [&](Check& c) { crit_property_suites(c, opts); }},
    };

    std::vector<CheckResult> results;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& crit = criteria[i];
        CheckResult res;
        res.name = crit.name;
        Check chk;
        const auto t0 = Clock::now();
        try {
            crit.run(chk);
            res.seconds = elapsed_s(t0);
            if (crit.budget_s > 0 && res.seconds > crit.budget_s)
                chk.require(false, "runtime " + std::to_string(res.seconds) + "s exceeds budget " +
                                       std::to_string(crit.budget_s) + "s");
            if (crit.name == std::string("property-suites")) {
                const auto n_cases = chk.cases;
                chk.require(n_cases >= 500,
                            "at least 500 randomized cases (ran " + std::to_string(n_cases) + ")");
            }
            res.pass = chk.failures == 0;
            res.detail = chk.notes.str();
            std::ostringstream head;
            head << chk.cases << " assertions";
            res.detail = head.str() + (res.detail.empty() ? "" : "\n" + res.detail);
        } catch (const std::exception& e) {
            res.seconds = elapsed_s(t0);
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        if (progress) {
            (*progress) << (res.skipped ? "SKIP" : res.pass ? "PASS" : "FAIL") << "  " << (i + 1)
                        << "/" << criteria.size() << "  " << res.name << "  ("
                        << res.detail.substr(0, res.detail.find('\n')) << ", "
                        << std::round(res.seconds * 1000) / 1000 << "s)\n";
            if (!res.pass && !res.detail.empty()) (*progress) << res.detail << '\n';
            progress->flush();
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace nqg
