#include "nqg/partial.hpp"

#include <algorithm>
#include <map>

namespace nqg {

PartialQuasigroup PartialQuasigroup::box(int k, int n, Symbol a, Symbol b,
                                         std::vector<Symbol> values) {
    if (k < 3 || k > max_order) throw usage_error("box domain requires 3 <= k <= 64");
    if (n < 1) throw usage_error("arity must be positive");
    if (a == b || a >= k || b >= k) throw usage_error("excluded pair must be two distinct symbols");

    PartialQuasigroup g;
    g.k_ = k;
    g.n_ = n;
    g.box_ = true;
    g.a_ = std::min(a, b);
    g.b_ = std::max(a, b);
    for (int c = 0; c < k; ++c)
        if (c != g.a_ && c != g.b_) g.bsyms_.push_back(static_cast<Symbol>(c));

    const std::size_t verts = n == 1 ? 1 : checked_cell_count(k, n - 1, SIZE_MAX, "table size");
    const std::size_t want = verts * static_cast<std::size_t>(k - 2);
    if (values.size() != want) throw usage_error("box values must have k^(n-1)*(k-2) entries");
    for (Symbol v : values)
        if (v >= k) throw usage_error("value out of symbol range");
    g.values_ = std::move(values);
    g.check_consistent();
    return g;
}

PartialQuasigroup PartialQuasigroup::from_points(int k, int n, std::vector<Point> points,
                                                 std::vector<Symbol> values) {
    if (k < 1 || k > max_order) throw usage_error("order out of range");
    if (n < 1) throw usage_error("arity must be positive");
    if (points.size() != values.size()) throw usage_error("one value per domain point required");

    PartialQuasigroup g;
    g.k_ = k;
    g.n_ = n;

    std::vector<std::size_t> perm(points.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t x, std::size_t y) { return points[x] < points[y]; });
    for (std::size_t i : perm) {
        const Point& p = points[i];
        if (static_cast<int>(p.size()) != n) throw usage_error("point arity mismatch");
        for (Symbol c : p)
            if (c >= k) throw usage_error("point coordinate out of range");
        if (values[i] >= k) throw usage_error("value out of symbol range");
        if (!g.points_.empty() && g.points_.back() == p) throw usage_error("duplicate domain point");
        g.points_.push_back(p);
        g.values_.push_back(values[i]);
    }
    g.check_consistent();
    return g;
}

PartialQuasigroup PartialQuasigroup::restrict_box(const Hypercube& f, Symbol a, Symbol b) {
    const int k = f.order(), n = f.arity();
    if (a == b || a >= k || b >= k) throw usage_error("excluded pair must be two distinct symbols");
    std::vector<Symbol> vals;
    vals.reserve(f.cells() / k * (k - 2));
    for (std::size_t base = 0; base < f.cells(); base += k)
        for (int c = 0; c < k; ++c)
            if (c != a && c != b) vals.push_back(f.at_index(base + c));
    return box(k, n, a, b, std::move(vals));
}

std::pair<Symbol, Symbol> PartialQuasigroup::box_pair() const {
    if (!box_) throw usage_error("not a box-domain partial quasigroup");
    return {a_, b_};
}

const std::vector<Symbol>& PartialQuasigroup::box_symbols() const {
    if (!box_) throw usage_error("not a box-domain partial quasigroup");
    return bsyms_;
}

std::size_t PartialQuasigroup::vertex_count() const {
    if (!box_) throw usage_error("not a box-domain partial quasigroup");
    return values_.size() / bsyms_.size();
}

Symbol PartialQuasigroup::box_value(std::size_t vertex, int pos) const {
    return values_[vertex * bsyms_.size() + pos];
}

void PartialQuasigroup::check_consistent() const {
    if (box_) {
        const int m = static_cast<int>(bsyms_.size());
        const std::size_t verts = vertex_count();
        // Lines along the last axis: the k-2 values over B at one vertex.
        for (std::size_t v = 0; v < verts; ++v) {
            std::uint64_t seen = 0;
            for (int c = 0; c < m; ++c) {
                const std::uint64_t bit = 1ull << box_value(v, c);
                if (seen & bit) throw usage_error("inconsistent partial quasigroup");
                seen |= bit;
            }
        }
        // Lines along every vertex axis, one per B symbol.
        if (n_ < 2) return;
        const int vn = n_ - 1;
        for (int axis = 0; axis < vn; ++axis) {
            std::size_t stride = 1;
            for (int i = vn - 1; i > axis; --i) stride *= static_cast<std::size_t>(k_);
            const std::size_t block = stride * static_cast<std::size_t>(k_);
            for (std::size_t hi = 0; hi < verts; hi += block)
                for (std::size_t lo = 0; lo < stride; ++lo)
                    for (int c = 0; c < m; ++c) {
                        std::uint64_t seen = 0;
                        for (int t = 0; t < k_; ++t) {
                            const std::uint64_t bit =
                                1ull << box_value(hi + lo + t * stride, c);
                            if (seen & bit) throw usage_error("inconsistent partial quasigroup");
                            seen |= bit;
                        }
                    }
        }
        return;
    }
    // Explicit domain: bucket points by the line they span along each axis.
    for (int axis = 0; axis < n_; ++axis) {
        std::map<Point, std::uint64_t> lines;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            Point key = points_[i];
            key[axis] = 0;
            std::uint64_t& seen = lines[key];
            const std::uint64_t bit = 1ull << values_[i];
            if (seen & bit) throw usage_error("inconsistent partial quasigroup");
            seen |= bit;
        }
    }
}

}  // namespace nqg
