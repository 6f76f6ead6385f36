#include "nqg/census4.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace nqg {

namespace {

void check_order4_loop(const Hypercube& f) {
    if (f.order() != 4) throw usage_error("semilinearity is defined for order 4");
    if (!validate_loop(f)) throw usage_error("semilinearity is defined for loops");
}

}  // namespace

bool is_a_semilinear(const Hypercube& f, int a) {
    check_order4_loop(f);
    if (a < 1 || a > 3) throw usage_error("a must be in {1,2,3}");
    const int n = f.arity();
    const int eps = (n + 1) % 2;
    Point p(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < f.cells(); ++idx) {
        int rhs = eps;
        for (Symbol x : p) rhs += (x == 0 || x == a) ? 1 : 0;
        const Symbol v = f.at_index(idx);
        const int lhs = (v == 0 || v == a) ? 1 : 0;
        if (lhs != rhs % 2) return false;
        for (int i = n - 1; i >= 0; --i) {
            if (++p[i] < 4) break;
            p[i] = 0;
        }
    }
    return true;
}

SemilinearClass classify_semilinearity(const Hypercube& f) {
    SemilinearClass c;
    c.epsilon = (f.arity() + 1) % 2;
    for (int a = 1; a <= 3; ++a) c.flags[a - 1] = is_a_semilinear(f, a);
    c.linear = c.count() >= 2;
    assert(c.count() != 2);  // linear loops carry all three flags
    return c;
}

namespace {

// Subsets of {0..n-1} of the given size, in lexicographic order of their
// sorted element lists.
std::vector<std::vector<int>> subsets_of_size(int n, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int i = from; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Index decomposition of f under a coordinate split: for a subset M, any cell
// index is inner_index * inner_weight + rest_index (with suitable per-axis
// strides). Precomputes the two index maps.
struct SplitIndexer {
    std::vector<std::size_t> inner_offsets;  // k^|M| entries
    std::vector<std::size_t> rest_offsets;   // k^(n-|M|) entries

    SplitIndexer(const Hypercube& f, const std::vector<int>& m_coords) {
        const int n = f.arity(), k = f.order();
        std::vector<bool> in_m(static_cast<std::size_t>(n), false);
        for (int c : m_coords) in_m[c] = true;
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (!in_m[i]) rest.push_back(i);
        inner_offsets = offsets_for(f, m_coords);
        rest_offsets = offsets_for(f, rest);
    }

    static std::vector<std::size_t> offsets_for(const Hypercube& f, const std::vector<int>& coords) {
        const int k = f.order();
        std::size_t count = 1;
        for (std::size_t i = 0; i < coords.size(); ++i) count *= static_cast<std::size_t>(k);
        std::vector<std::size_t> out(count, 0);
        for (std::size_t v = 0; v < count; ++v) {
            std::size_t rem = v, off = 0;
            for (std::size_t i = coords.size(); i-- > 0;) {
                off += (rem % k) * f.stride(coords[i]);
                rem /= k;
            }
            out[v] = off;
        }
        return out;
    }
};

}  // namespace

std::optional<ReductionWitness> find_reduction(const Hypercube& f) {
    const int n = f.arity(), k = f.order();
    for (int size = 2; size < n; ++size) {
        for (const auto& m_coords : subsets_of_size(n, size)) {
            const SplitIndexer ix(f, m_coords);
            const std::size_t inner_cells = ix.inner_offsets.size();
            const std::size_t rest_cells = ix.rest_offsets.size();

            // Slices must repeat exactly per their value at rest = 0.
            std::vector<Symbol> labels(inner_cells);
            std::vector<std::size_t> rep(static_cast<std::size_t>(k), SIZE_MAX);
            bool ok = true;
            for (std::size_t v = 0; v < inner_cells && ok; ++v) {
                const Symbol u = f.at_index(ix.inner_offsets[v]);
                labels[v] = u;
                if (rep[u] == SIZE_MAX) {
                    rep[u] = v;
                    continue;
                }
                const std::size_t a = ix.inner_offsets[v], b = ix.inner_offsets[rep[u]];
                for (std::size_t r = 0; r < rest_cells; ++r)
                    if (f.at_index(a + ix.rest_offsets[r]) != f.at_index(b + ix.rest_offsets[r])) {
                        ok = false;
                        break;
                    }
            }
            if (!ok) continue;

            Hypercube inner(k, size, labels);
            std::vector<Symbol> outer_vals(static_cast<std::size_t>(k) * rest_cells);
            for (int u = 0; u < k; ++u) {
                const std::size_t base = ix.inner_offsets[rep[u]];
                for (std::size_t r = 0; r < rest_cells; ++r)
                    outer_vals[static_cast<std::size_t>(u) * rest_cells + r] =
                        f.at_index(base + ix.rest_offsets[r]);
            }
            Hypercube outer(k, n - size + 1, std::move(outer_vals));
            return ReductionWitness{m_coords, std::move(inner), std::move(outer)};
        }
    }
    return std::nullopt;
}

Hypercube recompose(const ReductionWitness& w, int n) {
    const int k = w.inner.order();
    std::vector<bool> in_m(static_cast<std::size_t>(n), false);
    for (int c : w.inner_coords) in_m[c] = true;
    return Hypercube::from_function(k, n, [&](const Point& p) {
        Point pm, pr;
        for (int i = 0; i < n; ++i) (in_m[i] ? pm : pr).push_back(p[i]);
        Point po;
        po.push_back(w.inner.at(pm));
        po.insert(po.end(), pr.begin(), pr.end());
        return w.outer.at(po);
    });
}

namespace {

// Tries to factor f as root(g(x_M), h(x_rest)) across the bipartition given
// by m_coords. Freezing the other side at zeros recovers the 0-normalised
// root; the factorisation is then verified on every point.
std::optional<Hypercube> bipartition_root(const Hypercube& f, const std::vector<int>& m_coords,
                                          const SplitIndexer& ix) {
    const int k = f.order();
    const std::size_t inner_cells = ix.inner_offsets.size();
    const std::size_t rest_cells = ix.rest_offsets.size();

    // g(x_M) = f(x_M, 0), h(x_rest) = f(0, x_rest); both are loops, so the
    // first coordinate of either side indexes representatives.
    std::vector<Symbol> g(inner_cells), h(rest_cells);
    for (std::size_t v = 0; v < inner_cells; ++v) g[v] = f.at_index(ix.inner_offsets[v]);
    for (std::size_t r = 0; r < rest_cells; ++r) h[r] = f.at_index(ix.rest_offsets[r]);

    std::vector<std::size_t> rep_g(static_cast<std::size_t>(k), SIZE_MAX);
    std::vector<std::size_t> rep_h(static_cast<std::size_t>(k), SIZE_MAX);
    for (std::size_t v = 0; v < inner_cells; ++v)
        if (rep_g[g[v]] == SIZE_MAX) rep_g[g[v]] = v;
    for (std::size_t r = 0; r < rest_cells; ++r)
        if (rep_h[h[r]] == SIZE_MAX) rep_h[h[r]] = r;
    for (int u = 0; u < k; ++u)
        if (rep_g[u] == SIZE_MAX || rep_h[u] == SIZE_MAX) return std::nullopt;

    std::vector<Symbol> root(static_cast<std::size_t>(k) * k);
    for (int u = 0; u < k; ++u)
        for (int w = 0; w < k; ++w)
            root[static_cast<std::size_t>(u) * k + w] =
                f.at_index(ix.inner_offsets[rep_g[u]] + ix.rest_offsets[rep_h[w]]);

    for (std::size_t v = 0; v < inner_cells; ++v) {
        const std::size_t base = ix.inner_offsets[v];
        const std::size_t grow = static_cast<std::size_t>(g[v]) * k;
        for (std::size_t r = 0; r < rest_cells; ++r)
            if (f.at_index(base + ix.rest_offsets[r]) != root[grow + h[r]]) return std::nullopt;
    }
    return Hypercube(k, 2, std::move(root));
}

// Flat blocks of the root decomposition: recursively split sub-loops by the
// same root until no side splits further.
void flat_blocks(const Hypercube& f, const Hypercube& root, std::vector<int> coords,
                 std::vector<std::vector<int>>& out) {
    const int n = f.arity();
    if (n >= 2) {
        for (int size = 1; size <= n / 2; ++size)
            for (const auto& m_local : subsets_of_size(n, size)) {
                const SplitIndexer ix(f, m_local);
                auto r = bipartition_root(f, m_local, ix);
                if (!r || !(*r == root)) continue;
                // project both sides and recurse
                std::vector<int> rest_local;
                {
                    std::vector<bool> in_m(static_cast<std::size_t>(n), false);
                    for (int c : m_local) in_m[c] = true;
                    for (int i = 0; i < n; ++i)
                        if (!in_m[i]) rest_local.push_back(i);
                }
                std::vector<Symbol> gv(ix.inner_offsets.size()), hv(ix.rest_offsets.size());
                for (std::size_t v = 0; v < gv.size(); ++v) gv[v] = f.at_index(ix.inner_offsets[v]);
                for (std::size_t r2 = 0; r2 < hv.size(); ++r2) hv[r2] = f.at_index(ix.rest_offsets[r2]);
                std::vector<int> gc, hc;
                for (int c : m_local) gc.push_back(coords[c]);
                for (int c : rest_local) hc.push_back(coords[c]);
                flat_blocks(Hypercube(f.order(), size, std::move(gv)), root, gc, out);
                flat_blocks(Hypercube(f.order(), n - size, std::move(hv)), root, hc, out);
                return;
            }
    }
    out.push_back(coords);
}

}  // namespace

RootClassification root_classification(const Hypercube& f) {
    if (f.order() != 4) throw usage_error("root classification is defined for order 4");
    if (f.arity() < 3) throw usage_error("root classification requires arity >= 3");
    if (!validate_loop(f)) throw usage_error("root classification is defined for loops");

    const int n = f.arity();
    RootClassification rc;
    for (int size = 1; size <= n / 2 && !rc.root; ++size)
        for (const auto& m_coords : subsets_of_size(n, size)) {
            const SplitIndexer ix(f, m_coords);
            if (auto root = bipartition_root(f, m_coords, ix)) {
                rc.kind = RootKind::binary_root;
                rc.root = std::move(*root);
                rc.split = m_coords;
                break;
            }
        }
    if (rc.root) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) all[i] = i;
        flat_blocks(f, *rc.root, all, rc.blocks);
        std::sort(rc.blocks.begin(), rc.blocks.end());
        return rc;
    }
    rc.kind = find_reduction(f) ? RootKind::higher_root : RootKind::irreducible;
    return rc;
}

const std::array<Hypercube, 4>& binary_loops_order4() {
    static const std::array<Hypercube, 4> loops = [] {
        std::vector<Hypercube> found;
        for_each_quasigroup(2, 4, EnumMode::loops, [&](const Hypercube& h) {
            found.push_back(h);
            return true;
        });
        assert(found.size() == 4);
        return std::array<Hypercube, 4>{found[0], found[1], found[2], found[3]};
    }();
    return loops;
}

int PartitionShape::ground() const {
    int n = 0;
    for (auto [j, k] : parts) n += j * k;
    return n;
}

int PartitionShape::blocks() const {
    int b = 0;
    for (auto [j, k] : parts) b += k;
    return b;
}

BigCount partition_count(const PartitionShape& shape) {
    const int n = shape.ground();
    BigCount f = factorial(static_cast<unsigned>(n));
    for (auto [j, k] : shape.parts) {
        if (j <= 0 || k <= 0) throw usage_error("malformed partition shape");
        f /= bigpow(factorial(static_cast<unsigned>(j)), static_cast<unsigned>(k));
        f /= factorial(static_cast<unsigned>(k));
    }
    return f;
}

std::vector<PartitionShape> partition_shapes(int n) {
    std::vector<PartitionShape> out;
    std::vector<std::pair<int, int>> cur;
    // parts generated with strictly increasing sizes
    auto rec = [&](auto&& self, int remaining, int min_size) -> void {
        if (remaining == 0) {
            out.push_back(PartitionShape{cur});
            return;
        }
        for (int j = min_size; j <= remaining; ++j)
            for (int mult = 1; mult * j <= remaining; ++mult) {
                cur.emplace_back(j, mult);
                self(self, remaining - mult * j, j + 1);
                cur.pop_back();
            }
    };
    rec(rec, n, 1);
    return out;
}

std::vector<RecurrenceRow> q4_recurrence(int n_max) {
    if (n_max < 1) throw usage_error("n_max must be positive");
    if (n_max > 24) throw resource_error("recurrence values above n=24 exceed the memory budget");

    std::vector<RecurrenceRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        RecurrenceRow row;
        row.n = n;
        row.ell_a = pow2((1ul << n) - static_cast<unsigned long>(n) - 1);
        if (n == 1) {
            // The identity: irreducible and a-semilinear for every a. Not fed
            // back into the sums below (they only consult p_i for i >= 3).
            row.p_a = 1;
            row.p = 1;
            row.v = 1;
        } else {
            for (const auto& shape : partition_shapes(n)) {
                if (shape.blocks() < 2) continue;
                const BigCount ways = partition_count(shape);
                BigCount prod_a = 1, prod_v = 1;
                for (auto [j, mult] : shape.parts) {
                    const RecurrenceRow& sub = rows[static_cast<std::size_t>(j - 1)];
                    prod_a *= bigpow(sub.ell_a - sub.r_a_star, static_cast<unsigned>(mult));
                    prod_v *= bigpow(sub.v - sub.r_star, static_cast<unsigned>(mult));
                }
                row.r_a_star += ways * prod_a;
                row.r_star += ways * prod_v;
                const int i = shape.blocks();
                if (i >= 3 && i <= n - 1) {
                    BigCount fill_a = 1, fill_v = 1;
                    for (auto [j, mult] : shape.parts) {
                        const RecurrenceRow& sub = rows[static_cast<std::size_t>(j - 1)];
                        fill_a *= bigpow(sub.ell_a, static_cast<unsigned>(mult));
                        fill_v *= bigpow(sub.v, static_cast<unsigned>(mult));
                    }
                    const RecurrenceRow& head = rows[static_cast<std::size_t>(i - 1)];
                    row.r_a_0 += head.p_a * ways * fill_a;
                    row.r_0 += head.p * ways * fill_v;
                }
            }
            row.p_a = row.ell_a - row.r_a_0 - 2 * row.r_a_star;
            row.p = 3 * row.p_a;
            row.v = row.p + row.r_0 + 4 * row.r_star;
        }
        row.q = 4 * bigpow(BigCount(6), static_cast<unsigned>(n)) * row.v;
        rows.push_back(std::move(row));
    }
    return rows;
}

CensusRecord census(int n, const EnumOptions& opts) {
    if (n != 3 && n != 4) throw usage_error("census covers n in {3,4}");

    const auto& roots = binary_loops_order4();
    auto root_index = [&](const Hypercube& r) -> std::size_t {
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (roots[i] == r) return i;
        throw std::logic_error("recovered root is not one of the four binary loops");
    };
    // a-semilinearity of the four possible roots, used to bucket the
    // reducible a-semilinear loops per admissible root.
    std::array<SemilinearClass, 4> root_class;
    for (std::size_t i = 0; i < roots.size(); ++i) root_class[i] = classify_semilinearity(roots[i]);

    CensusRecord rec;
    rec.n = n;
    // Classification is streaming; nothing holds more than one table.
    for_each_quasigroup(n, 4, EnumMode::loops, [&](const Hypercube& f) {
        ++rec.total;
        const SemilinearClass sc = classify_semilinearity(f);
        const bool semi = sc.count() > 0;
        if (semi) ++rec.semilinear;
        for (int a = 1; a <= 3; ++a)
            if (sc.flags[a - 1]) ++rec.a_semilinear[a - 1];
        if (sc.linear) ++rec.linear;

        const RootClassification rc = root_classification(f);
        const bool reducible = rc.kind != RootKind::irreducible;
        if (reducible) ++rec.reducible;
        switch (rc.kind) {
            case RootKind::binary_root: {
                ++rec.binary_root_total;
                const std::size_t ri = root_index(*rc.root);
                ++rec.binary_root[ri];
                // Recovered roots must commute and associate, otherwise the
                // flat representation would be order-sensitive.
                for (int x = 0; x < 4; ++x)
                    for (int y = 0; y < 4; ++y) {
                        assert(rc.root->at2(Symbol(x), Symbol(y)) == rc.root->at2(Symbol(y), Symbol(x)));
                        for (int z = 0; z < 4; ++z)
                            assert(rc.root->at2(rc.root->at2(Symbol(x), Symbol(y)), Symbol(z)) ==
                                   rc.root->at2(Symbol(x), rc.root->at2(Symbol(y), Symbol(z))));
                    }
                for (int a = 1; a <= 3; ++a)
                    if (sc.flags[a - 1]) {
                        assert(root_class[ri].flags[a - 1]);
                        ++rec.a_semilinear_binary_root[a - 1][ri];
                    }
                break;
            }
            case RootKind::higher_root:
                ++rec.higher_root;
                for (int a = 1; a <= 3; ++a)
                    if (sc.flags[a - 1]) ++rec.a_semilinear_higher_root[a - 1];
                break;
            case RootKind::irreducible:
                ++rec.irreducible;
                for (int a = 1; a <= 3; ++a)
                    if (sc.flags[a - 1]) ++rec.irreducible_a_semilinear[a - 1];
                break;
        }
        if (!reducible && !semi) ++rec.violating;
        return true;
    }, opts);
    return rec;
}

}  // namespace nqg
