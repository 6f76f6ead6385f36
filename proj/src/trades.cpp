#include "nqg/trades.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "nqg/constructions.hpp"

namespace nqg {

namespace {

void check_pair(const Hypercube& f, Symbol a, Symbol b) {
    if (a == b) throw usage_error("value pair must be two distinct symbols");
    if (a >= f.order() || b >= f.order()) throw usage_error("value out of symbol range");
}

std::vector<std::size_t> support_indices(const Hypercube& f, Symbol a, Symbol b) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.cells(); ++i)
        if (f.at_index(i) == a || f.at_index(i) == b) out.push_back(i);
    return out;
}

// The other {a,b}-cell on the axis line through `idx`, or SIZE_MAX if the
// line does not carry both values exactly once each.
std::size_t line_partner(const Hypercube& f, std::size_t idx, int axis, Symbol a, Symbol b) {
    const int k = f.order();
    const std::size_t stride = f.stride(axis);
    const int coord = static_cast<int>(idx / stride % static_cast<std::size_t>(k));
    const std::size_t base = idx - static_cast<std::size_t>(coord) * stride;
    std::size_t partner = SIZE_MAX;
    int hits = 0;
    for (int t = 0; t < k; ++t) {
        const std::size_t cell = base + static_cast<std::size_t>(t) * stride;
        const Symbol v = f.at_index(cell);
        if (v == a || v == b) {
            ++hits;
            if (cell != idx) partner = cell;
        }
    }
    return hits == 2 ? partner : SIZE_MAX;
}

std::vector<Point> to_points(const Hypercube& f, std::vector<std::size_t> idxs) {
    std::sort(idxs.begin(), idxs.end());
    std::vector<Point> pts;
    pts.reserve(idxs.size());
    for (std::size_t i : idxs) pts.push_back(f.point_at(i));
    return pts;
}

}  // namespace

std::vector<Point> value_support(const Hypercube& f, Symbol a, Symbol b) {
    check_pair(f, a, b);
    return to_points(f, support_indices(f, a, b));
}

std::vector<Component> find_components(const Hypercube& f, Symbol a, Symbol b) {
    check_pair(f, a, b);
    const auto support = support_indices(f, a, b);

    std::map<std::size_t, std::size_t> slot;  // cell index -> support position
    for (std::size_t i = 0; i < support.size(); ++i) slot[support[i]] = i;

    std::vector<std::size_t> parent(support.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (std::size_t i = 0; i < support.size(); ++i)
        for (int axis = 0; axis < f.arity(); ++axis) {
            const std::size_t p = line_partner(f, support[i], axis, a, b);
            if (p != SIZE_MAX) parent[find(i)] = find(slot.at(p));
        }

    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < support.size(); ++i) classes[find(i)].push_back(support[i]);

    std::vector<Component> out;
    for (auto& [root, cells] : classes)
        out.push_back(Component{std::min(a, b), std::max(a, b), to_points(f, std::move(cells))});
    std::sort(out.begin(), out.end(),
              [](const Component& x, const Component& y) { return x.points.front() < y.points.front(); });
    return out;
}

std::vector<Component> find_components(const ComposedQuasigroup& f, Symbol a, Symbol b,
                                       std::size_t cell_cap) {
    return find_components(f.materialize(cell_cap), a, b);
}

bool is_component(const Hypercube& f, const Component& c) {
    if (c.a == c.b || c.a >= f.order() || c.b >= f.order() || c.points.empty()) return false;
    std::unordered_set<std::size_t> members;
    bool seen_a = false, seen_b = false;
    for (const Point& p : c.points) {
        const std::size_t idx = f.index_of(p);
        const Symbol v = f.at_index(idx);
        if (v == c.a) seen_a = true;
        else if (v == c.b) seen_b = true;
        else return false;
        members.insert(idx);
    }
    if (!seen_a || !seen_b) return false;
    for (std::size_t idx : members)
        for (int axis = 0; axis < f.arity(); ++axis) {
            const std::size_t p = line_partner(f, idx, axis, c.a, c.b);
            if (p == SIZE_MAX || !members.contains(p)) return false;
        }
    return true;
}

Hypercube switch_component(const Hypercube& f, const Component& c) {
    if (!is_component(f, c)) throw usage_error("point set is not a component of this table");
    std::vector<Symbol> vals = f.values();
    for (const Point& p : c.points) {
        Symbol& v = vals[f.index_of(p)];
        v = v == c.a ? c.b : c.a;
    }
    return Hypercube(f.order(), f.arity(), std::move(vals));
}

namespace {

std::vector<Component> all_minimal_components(const Hypercube& f) {
    std::vector<Component> all;
    for (int a = 0; a < f.order(); ++a)
        for (int b = a + 1; b < f.order(); ++b) {
            auto cs = find_components(f, static_cast<Symbol>(a), static_cast<Symbol>(b));
            all.insert(all.end(), cs.begin(), cs.end());
        }
    return all;
}

std::vector<std::size_t> cell_set(const Hypercube& f, const Component& c) {
    std::vector<std::size_t> cells;
    cells.reserve(c.points.size());
    for (const Point& p : c.points) cells.push_back(f.index_of(p));
    std::sort(cells.begin(), cells.end());
    return cells;
}

bool cells_overlap(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) return true;
        if (x[i] < y[j]) ++i;
        else ++j;
    }
    return false;
}

}  // namespace

std::vector<Component> disjoint_family(const Hypercube& f, FamilyStrategy strategy) {
    if (strategy == FamilyStrategy::pair_partition) {
        std::vector<Component> out;
        for (int i = 0; 2 * i + 1 < f.order(); ++i) {
            auto cs = find_components(f, static_cast<Symbol>(2 * i), static_cast<Symbol>(2 * i + 1));
            out.insert(out.end(), cs.begin(), cs.end());
        }
        return out;
    }

    auto all = all_minimal_components(f);
    std::vector<std::vector<std::size_t>> cells;
    cells.reserve(all.size());
    for (const auto& c : all) cells.push_back(cell_set(f, c));

    if (strategy == FamilyStrategy::greedy) {
        std::vector<std::size_t> order(all.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return all[x].points.size() > all[y].points.size();
        });
        std::vector<Component> out;
        std::vector<std::size_t> taken;
        for (std::size_t i : order) {
            bool free = true;
            for (std::size_t j : taken)
                if (cells_overlap(cells[i], cells[j])) {
                    free = false;
                    break;
                }
            if (free) {
                taken.push_back(i);
                out.push_back(all[i]);
            }
        }
        return out;
    }

    // exact: branch and bound over the conflict structure
    if (all.size() > 20)
        throw resource_error("exact family search refused above 20 candidate components (got " +
                             std::to_string(all.size()) + ")");
    const std::size_t n = all.size();
    std::vector<std::uint32_t> conflict(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cells_overlap(cells[i], cells[j])) {
                conflict[i] |= 1u << j;
                conflict[j] |= 1u << i;
            }
    std::uint32_t best_mask = 0;
    int best = 0;
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t chosen, std::uint32_t blocked,
                   int count) -> void {
        if (count + static_cast<int>(n - i) <= best) return;
        if (i == n) {
            if (count > best) {
                best = count;
                best_mask = chosen;
            }
            return;
        }
        if (!((blocked >> i) & 1u)) self(self, i + 1, chosen | (1u << i), blocked | conflict[i], count + 1);
        self(self, i + 1, chosen, blocked, count);
    };
    rec(rec, 0, 0, 0, 0);
    std::vector<Component> out;
    for (std::size_t i = 0; i < n; ++i)
        if ((best_mask >> i) & 1u) out.push_back(all[i]);
    return out;
}

Hypercube switch_family(const Hypercube& f, const std::vector<Component>& family,
                        std::uint64_t mask) {
    if (family.size() > 64) throw usage_error("family mask limited to 64 members");
    std::vector<std::vector<std::size_t>> cells;
    for (const auto& c : family) {
        if (!is_component(f, c)) throw usage_error("family member is not a component of this table");
        cells.push_back(cell_set(f, c));
    }
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (cells_overlap(cells[i], cells[j]))
                throw usage_error("family members overlap");

    std::vector<Symbol> vals = f.values();
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!((mask >> i) & 1u)) continue;
        for (std::size_t idx : cells[i]) {
            Symbol& v = vals[idx];
            v = v == family[i].a ? family[i].b : family[i].a;
        }
    }
    return Hypercube(f.order(), f.arity(), std::move(vals));
}

AlphaReport alpha_report(int n, int m, std::size_t cell_cap) {
    AlphaReport rep;
    rep.n = n;
    rep.m = m;
    rep.k = 2 * m + 1;
    const Hypercube tower = big_psi(n, m).materialize(cell_cap);
    for (int i = 0; i < m; ++i)
        rep.per_pair.push_back(
            find_components(tower, static_cast<Symbol>(2 * i), static_cast<Symbol>(2 * i + 1)).size());
    rep.alpha = *std::min_element(rep.per_pair.begin(), rep.per_pair.end());
    return rep;
}

}  // namespace nqg
