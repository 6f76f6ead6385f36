#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nqg/constructions.hpp"
#include "nqg/enumerate.hpp"
#include "nqg/json_io.hpp"

using namespace nqg;

namespace {

std::string data_dir() {
    if (const char* env = std::getenv("NQG_DATA_DIR")) return env;
    return NQG_DEFAULT_DATA_DIR;
}

// Independent oracle for extension counting: enumerate every full table and
// keep those agreeing with g on its box domain. Only feasible for tiny (n,k).
BigCount brute_force_extensions(const PartialQuasigroup& g) {
    const int n = g.arity(), k = g.order();
    const auto& bs = g.box_symbols();
    BigCount hits = 0;
    for_each_quasigroup(n, k, EnumMode::all, [&](const Hypercube& f) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            for (std::size_t c = 0; c < bs.size(); ++c)
                if (f.at_index(v * k + bs[c]) != g.box_value(v, static_cast<int>(c))) return true;
        ++hits;
        return true;
    });
    return hits;
}

// Randomized consistent fill of a box domain, independent of the search
// kernel (simple rejection-free backtracking with shuffled symbol order).
PartialQuasigroup random_box(int n, int k, Symbol a, Symbol b, std::mt19937_64& rng) {
    const std::size_t verts = [&] {
        std::size_t v = 1;
        for (int i = 1; i < n; ++i) v *= static_cast<std::size_t>(k);
        return v;
    }();
    std::vector<Symbol> bs;
    for (int c = 0; c < k; ++c)
        if (c != a && c != b) bs.push_back(static_cast<Symbol>(c));

    std::vector<Symbol> vals(verts * bs.size(), 0xFF);
    // per-line masks: the fiber over each vertex, and each vertex-axis line
    // per B symbol
    std::vector<std::uint64_t> fiber(verts, 0);
    const int vn = n - 1;
    std::vector<std::size_t> strides(static_cast<std::size_t>(std::max(vn, 1)), 1);
    for (int i = vn - 2; i >= 0; --i) strides[i] = strides[i + 1] * static_cast<std::size_t>(k);
    std::vector<std::vector<std::uint64_t>> axis(static_cast<std::size_t>(vn));
    for (auto& ax : axis) ax.assign(verts * bs.size(), 0);
    const std::uint64_t full = (1ull << k) - 1;

    auto axis_key = [&](std::size_t vert, int ax, std::size_t c) {
        const std::size_t coord = vert / strides[ax] % static_cast<std::size_t>(k);
        return (vert - coord * strides[ax]) * bs.size() + c;
    };

    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == vals.size()) return true;
        const std::size_t vert = pos / bs.size(), c = pos % bs.size();
        std::uint64_t avail = full & ~fiber[vert];
        for (int ax = 0; ax < vn; ++ax) avail &= ~axis[ax][axis_key(vert, ax, c)];
        std::vector<Symbol> opts;
        while (avail) {
            opts.push_back(static_cast<Symbol>(std::countr_zero(avail)));
            avail &= avail - 1;
        }
        std::shuffle(opts.begin(), opts.end(), rng);
        for (Symbol s : opts) {
            vals[pos] = s;
            fiber[vert] |= 1ull << s;
            for (int ax = 0; ax < vn; ++ax) axis[ax][axis_key(vert, ax, c)] |= 1ull << s;
            if (self(self, pos + 1)) return true;
            fiber[vert] &= ~(1ull << s);
            for (int ax = 0; ax < vn; ++ax) axis[ax][axis_key(vert, ax, c)] &= ~(1ull << s);
            vals[pos] = 0xFF;
        }
        return false;
    };
    REQUIRE(rec(rec, 0));
    return PartialQuasigroup::box(k, n, a, b, vals);
}

}  // namespace

TEST_CASE("exact counts match the known small values") {
    CHECK(decimal(count_quasigroups(2, 2, EnumMode::all)) == "2");
    CHECK(decimal(count_quasigroups(2, 3, EnumMode::all)) == "12");
    CHECK(decimal(count_quasigroups(3, 3, EnumMode::all)) == "24");
    CHECK(decimal(count_quasigroups(1, 4, EnumMode::all)) == "24");
    CHECK(decimal(count_quasigroups(2, 4, EnumMode::all)) == "576");
    CHECK(decimal(count_quasigroups(3, 4, EnumMode::all)) == "55296");
    CHECK(decimal(count_quasigroups(2, 4, EnumMode::loops)) == "4");
    CHECK(decimal(count_quasigroups(3, 4, EnumMode::loops)) == "64");
}

TEST_CASE("loop pinning matches the factorization identity") {
    // Q(n,k) = k * ((k-1)!)^n * Q'(n,k); e.g. 576 = 4 * 6^2 * 4
    for (const auto [n, k] : {std::pair{2, 3}, {2, 4}, {3, 4}, {2, 5}}) {
        const BigCount all = count_quasigroups(n, k, EnumMode::all);
        const BigCount loops = count_quasigroups(n, k, EnumMode::loops);
        CHECK(all == BigCount(k) *
                         bigpow(factorial(static_cast<unsigned>(k - 1)), static_cast<unsigned>(n)) *
                         loops);
    }
    CHECK(count_quasigroups(2, 4, EnumMode::all) == 4 * 36 * count_quasigroups(2, 4, EnumMode::loops));
}

TEST_CASE("parallel counting agrees with sequential") {
    EnumOptions two;
    two.workers = 2;
    CHECK(count_quasigroups(3, 4, EnumMode::all, two) == BigCount(55296));
    CHECK(count_quasigroups(2, 5, EnumMode::all, two) == BigCount(161280));
}

TEST_CASE("for_each visits every table in a stable order") {
    std::vector<std::vector<Symbol>> first, second;
    const auto collect = [](std::vector<std::vector<Symbol>>& sink) {
        return [&sink](const Hypercube& h) {
            sink.push_back(h.values());
            return true;
        };
    };
    CHECK(for_each_quasigroup(2, 2, EnumMode::all, collect(first)) == 2);
    CHECK(for_each_quasigroup(2, 2, EnumMode::all, collect(second)) == 2);
    CHECK(first == second);

    CHECK(for_each_quasigroup(1, 4, EnumMode::loops, [](const Hypercube& h) {
              CHECK(h.values() == std::vector<Symbol>{0, 1, 2, 3});
              return true;
          }) == 1);

    CHECK(for_each_quasigroup(3, 4, EnumMode::loops, [](const Hypercube& h) {
              CHECK(validate_loop(h));
              return true;
          }) == 64);

    // early stop
    std::uint64_t seen = 0;
    CHECK(for_each_quasigroup(2, 4, EnumMode::all, [&](const Hypercube&) {
              return ++seen < 10;
          }) == 10);
}

TEST_CASE("the enumeration budget is enforced") {
    EnumOptions tight;
    tight.cell_cap = 16;
    CHECK_THROWS_AS(count_quasigroups(3, 4, EnumMode::all, tight), resource_error);
    CHECK(count_quasigroups(2, 4, EnumMode::all, tight) == BigCount(576));
}

TEST_CASE("extension counting: cyclic order-3 column") {
    const auto g = PartialQuasigroup::box(3, 2, 0, 1, {2, 0, 1});
    CHECK(count_extensions(g) == BigCount(2));
    CHECK(brute_force_extensions(g) == BigCount(2));

    const GammaReport rep = gamma_analysis(g);
    CHECK(rep.components.size() == 1);
    CHECK(rep.components[0].size() == 3);
    CHECK(rep.choices == std::vector<int>{2});
}

TEST_CASE("extension counting: reference 4x4 table with columns 2,3 given") {
    const Hypercube phi4 = load_hypercube(data_dir() + "/phi4.json");
    const auto g = PartialQuasigroup::restrict_box(phi4, 0, 1);
    CHECK(count_extensions(g) == BigCount(4));
    CHECK(brute_force_extensions(g) == BigCount(4));

    const GammaReport rep = gamma_analysis(g);
    CHECK(rep.missing[0] == std::pair<Symbol, Symbol>{0, 2});
    CHECK(rep.missing[1] == std::pair<Symbol, Symbol>{1, 3});
    CHECK(rep.missing[2] == std::pair<Symbol, Symbol>{1, 3});
    CHECK(rep.missing[3] == std::pair<Symbol, Symbol>{0, 2});
    REQUIRE(rep.components.size() == 2);
    CHECK(rep.components[0] == std::vector<std::size_t>{0, 3});
    CHECK(rep.components[1] == std::vector<std::size_t>{1, 2});
    CHECK(rep.choices == std::vector<int>{2, 2});
}

TEST_CASE("gamma analysis matches brute force on random boxes") {
    std::mt19937_64 rng(411);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + static_cast<int>(t % 2);
        const int k = 4 + static_cast<int>(rng() % 2);  // keep brute force cheap
        const Symbol a = static_cast<Symbol>(rng() % k);
        Symbol b = static_cast<Symbol>(rng() % (k - 1));
        if (b >= a) ++b;
        const auto g = random_box(n, k, a, b, rng);

        const GammaReport rep = gamma_analysis(g);
        const BigCount exact = count_extensions(g);
        CHECK(exact == rep.choice_product());
        if (n == 2 && k == 4) CHECK(exact == brute_force_extensions(g));

        // cap and component floor
        const double cap = std::pow(k / 2.0, n - 1);
        if (exact > 0) CHECK(log2_approx(exact) <= cap + 1e-9);
        for (const auto& comp : rep.components)
            CHECK(comp.size() >= (std::size_t{1} << (n - 1)));
    }
}

TEST_CASE("single-step count bound holds at order 4") {
    // 55296 <= 576^2 * 2^4
    CHECK(BigCount(55296) <= bigpow(BigCount(576), 2) * pow2(4));
}

TEST_CASE("gamma report serializes with explicit vertex lists") {
    const Hypercube phi4 = load_hypercube(data_dir() + "/phi4.json");
    const auto rep = gamma_analysis(PartialQuasigroup::restrict_box(phi4, 0, 1));
    const json j = to_json(rep);
    CHECK(j["components"].size() == 2);
    CHECK(j["extension_count"] == "4");
    CHECK(j["components"][0][0].is_array());
}
