#include "nqg/enumerate.hpp"

#include <atomic>
#include <bit>
#include <numeric>
#include <thread>

namespace nqg {

namespace {

// Static geometry of a k^n search: for every cell, the id of the line it
// belongs to along each axis. Lines are the pruning unit: a value may appear
// at most once per line.
struct SearchGrid {
    int n, k;
    std::size_t cells, line_count;
    std::vector<std::uint32_t> line_of;  // cells * n

    SearchGrid(int n_, int k_) : n(n_), k(k_) {
        cells = checked_cell_count(k, n, SIZE_MAX, "table size");
        const std::size_t per_axis = cells / static_cast<std::size_t>(k);
        line_count = per_axis * static_cast<std::size_t>(n);
        line_of.resize(cells * static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            std::size_t stride = 1;
            for (int i = n - 1; i > a; --i) stride *= static_cast<std::size_t>(k);
            const std::size_t block = stride * static_cast<std::size_t>(k);
            for (std::size_t idx = 0; idx < cells; ++idx) {
                const std::size_t proj = (idx / block) * stride + (idx % stride);
                line_of[idx * n + a] = static_cast<std::uint32_t>(a * per_axis + proj);
            }
        }
    }
};

constexpr Symbol unset = 0xFF;

// Mutable search state: current assignment plus per-line used-value masks.
struct SearchState {
    const SearchGrid& grid;
    std::uint64_t full;
    std::vector<std::uint64_t> used;
    std::vector<Symbol> val;
    std::vector<std::size_t> free_cells;
    std::vector<std::uint32_t> free_lines;  // n line ids per free cell, contiguous

    explicit SearchState(const SearchGrid& g)
        : grid(g),
          full(g.k == 64 ? ~0ull : (1ull << g.k) - 1),
          used(g.line_count, 0),
          val(g.cells, unset) {}

    std::uint64_t avail(std::size_t idx) const {
        std::uint64_t u = 0;
        for (int a = 0; a < grid.n; ++a) u |= used[grid.line_of[idx * grid.n + a]];
        return full & ~u;
    }

    void set(std::size_t idx, Symbol s) {
        val[idx] = s;
        const std::uint64_t bit = 1ull << s;
        for (int a = 0; a < grid.n; ++a) used[grid.line_of[idx * grid.n + a]] |= bit;
    }

    void clear(std::size_t idx) {
        const std::uint64_t bit = 1ull << val[idx];
        for (int a = 0; a < grid.n; ++a) used[grid.line_of[idx * grid.n + a]] &= ~bit;
        val[idx] = unset;
    }

    // Pre-assign a cell. False if the value collides on some line.
    bool pin(std::size_t idx, Symbol s) {
        if (val[idx] != unset) return val[idx] == s;
        if (!((avail(idx) >> s) & 1u)) return false;
        set(idx, s);
        return true;
    }

    void collect_free_cells() {
        free_cells.clear();
        free_lines.clear();
        for (std::size_t i = 0; i < grid.cells; ++i)
            if (val[i] == unset) {
                free_cells.push_back(i);
                for (int a = 0; a < grid.n; ++a)
                    free_lines.push_back(grid.line_of[i * grid.n + a]);
            }
    }

    // Counting core. The arity is a template parameter so the per-line mask
    // loops unroll; the assignment array is not maintained here.
    template <int N>
    std::uint64_t count_unrolled(std::size_t pos) {
        if (pos == free_cells.size()) return 1;
        const std::uint32_t* fl = &free_lines[pos * static_cast<std::size_t>(N)];
        std::uint64_t u = 0;
        for (int a = 0; a < N; ++a) u |= used[fl[a]];
        std::uint64_t options = full & ~u, total = 0;
        while (options) {
            const std::uint64_t bit = options & (~options + 1);
            options ^= bit;
            for (int a = 0; a < N; ++a) used[fl[a]] |= bit;
            total += count_unrolled<N>(pos + 1);
            for (int a = 0; a < N; ++a) used[fl[a]] ^= bit;
        }
        return total;
    }

    std::uint64_t count_generic(std::size_t pos) {
        if (pos == free_cells.size()) return 1;
        const int n = grid.n;
        const std::uint32_t* fl = &free_lines[pos * static_cast<std::size_t>(n)];
        std::uint64_t u = 0;
        for (int a = 0; a < n; ++a) u |= used[fl[a]];
        std::uint64_t options = full & ~u, total = 0;
        while (options) {
            const std::uint64_t bit = options & (~options + 1);
            options ^= bit;
            for (int a = 0; a < n; ++a) used[fl[a]] |= bit;
            total += count_generic(pos + 1);
            for (int a = 0; a < n; ++a) used[fl[a]] ^= bit;
        }
        return total;
    }

    std::uint64_t count_from(std::size_t pos) {
        switch (grid.n) {
            case 1: return count_unrolled<1>(pos);
            case 2: return count_unrolled<2>(pos);
            case 3: return count_unrolled<3>(pos);
            case 4: return count_unrolled<4>(pos);
            case 5: return count_unrolled<5>(pos);
            default: return count_generic(pos);
        }
    }
};

// Identity pins for loop mode: every point with at most one nonzero
// coordinate maps to that coordinate's value.
bool pin_identity_lines(SearchState& st) {
    const int n = st.grid.n, k = st.grid.k;
    if (!st.pin(0, 0)) return false;
    for (int a = 0; a < n; ++a) {
        std::size_t stride = 1;
        for (int i = n - 1; i > a; --i) stride *= static_cast<std::size_t>(k);
        for (int s = 1; s < k; ++s)
            if (!st.pin(static_cast<std::size_t>(s) * stride, static_cast<Symbol>(s)))
                return false;
    }
    return true;
}

bool pin_box_values(SearchState& st, const PartialQuasigroup& g) {
    const int k = g.order();
    const auto& bs = g.box_symbols();
    const std::size_t verts = g.vertex_count();
    for (std::size_t v = 0; v < verts; ++v)
        for (std::size_t c = 0; c < bs.size(); ++c)
            if (!st.pin(v * k + bs[c], g.box_value(v, static_cast<int>(c)))) return false;
    return true;
}

// Feasible assignments of the first `depth` free cells, in search order.
std::vector<std::vector<Symbol>> expand_prefixes(SearchState& st, std::size_t depth) {
    std::vector<std::vector<Symbol>> layer{{}};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<std::vector<Symbol>> next;
        for (const auto& prefix : layer) {
            for (std::size_t i = 0; i < d; ++i) st.set(st.free_cells[i], prefix[i]);
            std::uint64_t options = st.avail(st.free_cells[d]);
            while (options) {
                const Symbol s = static_cast<Symbol>(std::countr_zero(options));
                options &= options - 1;
                auto ext = prefix;
                ext.push_back(s);
                next.push_back(std::move(ext));
            }
            for (std::size_t i = d; i-- > 0;) st.clear(st.free_cells[i]);
        }
        layer = std::move(next);
        if (layer.empty()) break;
    }
    return layer;
}

BigCount count_with_state(const SearchGrid& grid, SearchState& st, int workers) {
    st.collect_free_cells();
    if (workers <= 1 || st.free_cells.size() < 4) return BigCount(st.count_from(0));

    std::size_t depth = 1;
    std::vector<std::vector<Symbol>> tasks;
    while (true) {
        tasks = expand_prefixes(st, depth);
        if (tasks.empty()) return BigCount(0);
        if (tasks.size() >= static_cast<std::size_t>(32 * workers) ||
            depth + 1 >= st.free_cells.size() || depth >= 12)
            break;
        ++depth;
    }

    std::atomic<std::size_t> cursor{0};
    std::vector<std::uint64_t> partial(tasks.size(), 0);
    auto work = [&] {
        SearchState local(grid);
        local.used = st.used;
        local.val = st.val;
        local.free_cells = st.free_cells;
        local.free_lines = st.free_lines;
        for (;;) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= tasks.size()) break;
            for (std::size_t i = 0; i < depth; ++i) local.set(local.free_cells[i], tasks[t][i]);
            partial[t] = local.count_from(depth);
            for (std::size_t i = depth; i-- > 0;) local.clear(local.free_cells[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    // Partial counts combine by addition.
    BigCount total = 0;
    for (std::uint64_t c : partial) total += c;
    return total;
}

void check_enum_budget(int n, int k, const EnumOptions& opts) {
    if (k < 1 || k > max_order) throw usage_error("order must be in 1..64");
    if (n < 1) throw usage_error("arity must be positive");
    checked_cell_count(k, n, opts.cell_cap, "enumeration cell cap");
}

}  // namespace

BigCount count_quasigroups(int n, int k, EnumMode mode, const EnumOptions& opts) {
    check_enum_budget(n, k, opts);
    SearchGrid grid(n, k);
    SearchState st(grid);
    if (mode == EnumMode::loops && !pin_identity_lines(st)) return BigCount(0);
    return count_with_state(grid, st, opts.workers);
}

std::uint64_t for_each_quasigroup(int n, int k, EnumMode mode,
                                  const std::function<bool(const Hypercube&)>& visit,
                                  const EnumOptions& opts) {
    check_enum_budget(n, k, opts);
    SearchGrid grid(n, k);
    SearchState st(grid);
    if (mode == EnumMode::loops && !pin_identity_lines(st)) return 0;
    st.collect_free_cells();

    std::uint64_t visits = 0;
    bool stop = false;
    // Sequential by contract: deterministic lexicographic visit order.
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (stop) return;
        if (pos == st.free_cells.size()) {
            ++visits;
            if (!visit(Hypercube(k, n, st.val))) stop = true;
            return;
        }
        const std::size_t idx = st.free_cells[pos];
        std::uint64_t options = st.avail(idx);
        while (options && !stop) {
            const Symbol s = static_cast<Symbol>(std::countr_zero(options));
            options &= options - 1;
            st.set(idx, s);
            self(self, pos + 1);
            st.clear(idx);
        }
    };
    rec(rec, 0);
    return visits;
}

BigCount count_extensions(const PartialQuasigroup& g, const EnumOptions& opts) {
    if (!g.is_box()) throw usage_error("count_extensions requires a box-domain partial quasigroup");
    const int n = g.arity(), k = g.order();
    check_enum_budget(n, k, opts);
    SearchGrid grid(n, k);
    SearchState st(grid);
    if (!pin_box_values(st, g)) return BigCount(0);
    return count_with_state(grid, st, opts.workers);
}

BigCount GammaReport::choice_product() const {
    BigCount p = 1;
    for (int c : choices) p *= c;
    return p;
}

Point GammaReport::vertex_point(std::size_t index) const {
    Point p(static_cast<std::size_t>(n - 1));
    for (int i = n - 2; i >= 0; --i) {
        p[i] = static_cast<Symbol>(index % k);
        index /= k;
    }
    return p;
}

GammaReport gamma_analysis(const PartialQuasigroup& g) {
    if (!g.is_box()) throw usage_error("gamma_analysis requires a box-domain partial quasigroup");
    const int n = g.arity(), k = g.order();
    const int vn = n - 1;
    const std::size_t verts = g.vertex_count();
    const auto& bs = g.box_symbols();
    const std::uint64_t full = (k == 64) ? ~0ull : (1ull << k) - 1;

    GammaReport rep;
    rep.k = k;
    rep.n = n;
    rep.missing.resize(verts);
    for (std::size_t v = 0; v < verts; ++v) {
        std::uint64_t seen = 0;
        for (std::size_t c = 0; c < bs.size(); ++c) seen |= 1ull << g.box_value(v, static_cast<int>(c));
        std::uint64_t miss = full & ~seen;
        const Symbol lo = static_cast<Symbol>(std::countr_zero(miss));
        miss &= miss - 1;
        const Symbol hi = static_cast<Symbol>(std::countr_zero(miss));
        rep.missing[v] = {lo, hi};
    }

    auto pair_mask = [&](std::size_t v) {
        return (1ull << rep.missing[v].first) | (1ull << rep.missing[v].second);
    };

    // Union-find plus explicit adjacency for the propagation step.
    std::vector<std::size_t> parent(verts);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<std::uint32_t>> adj(verts);
    for (int axis = 0; axis < vn; ++axis) {
        std::size_t stride = 1;
        for (int i = vn - 1; i > axis; --i) stride *= static_cast<std::size_t>(k);
        const std::size_t block = stride * static_cast<std::size_t>(k);
        for (std::size_t hi = 0; hi < verts; hi += block)
            for (std::size_t lo = 0; lo < stride; ++lo)
                for (int s = 0; s < k; ++s)
                    for (int t = s + 1; t < k; ++t) {
                        const std::size_t x = hi + lo + s * stride;
                        const std::size_t y = hi + lo + t * stride;
                        if ((pair_mask(x) & pair_mask(y)) == 0) continue;
                        adj[x].push_back(static_cast<std::uint32_t>(y));
                        adj[y].push_back(static_cast<std::uint32_t>(x));
                        parent[find(x)] = find(y);
                    }
    }

    std::vector<std::vector<std::size_t>> comps;
    {
        std::vector<int> comp_of(verts, -1);
        for (std::size_t v = 0; v < verts; ++v) {
            const std::size_t r = find(v);
            if (comp_of[r] < 0) {
                comp_of[r] = static_cast<int>(comps.size());
                comps.emplace_back();
            }
            comps[comp_of[r]].push_back(v);
        }
    }

    // Per component, try both seed values for the a-hyperplane at the least
    // vertex, force along edges, then verify every intra-component edge.
    const Symbol a = g.box_pair().first;
    (void)a;  // the report is symmetric in {a,b}; only the pair structure matters
    for (const auto& comp : comps) {
        int ok = 0;
        for (int seed = 0; seed < 2; ++seed) {
            std::vector<Symbol> fa(verts, unset);
            const std::size_t v0 = comp.front();
            fa[v0] = seed == 0 ? rep.missing[v0].first : rep.missing[v0].second;
            bool good = true;
            std::vector<std::size_t> queue{v0};
            while (!queue.empty() && good) {
                const std::size_t x = queue.back();
                queue.pop_back();
                const auto [xu, xw] = rep.missing[x];
                const Symbol xa = fa[x];
                const Symbol xb = xa == xu ? xw : xu;
                for (std::uint32_t y : adj[x]) {
                    const auto [yu, yw] = rep.missing[y];
                    // forced value on the a-hyperplane at y
                    Symbol want;
                    const bool a_in = xa == yu || xa == yw;
                    const bool b_in = xb == yu || xb == yw;
                    if (a_in && b_in) want = xb;
                    else if (a_in) want = xa == yu ? yw : yu;
                    else want = xb;
                    if (fa[y] == unset) {
                        fa[y] = want;
                        queue.push_back(y);
                    } else if (fa[y] != want) {
                        good = false;
                        break;
                    }
                }
            }
            if (!good) continue;
            for (std::size_t x : comp) {
                const auto [xu, xw] = rep.missing[x];
                const Symbol xb = fa[x] == xu ? xw : xu;
                for (std::uint32_t y : adj[x]) {
                    const auto [yu, yw] = rep.missing[y];
                    const Symbol yb = fa[y] == yu ? yw : yu;
                    if (fa[x] == fa[y] || xb == yb) {
                        good = false;
                        break;
                    }
                }
                if (!good) break;
            }
            if (good) ++ok;
        }
        rep.choices.push_back(ok);
    }
    rep.components = std::move(comps);
    return rep;
}

}  // namespace nqg
