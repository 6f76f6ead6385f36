#include "nqg/hypercube.hpp"

#include <string>

namespace nqg {

std::size_t checked_cell_count(int k, int n, std::size_t cap, const char* what) {
    if (k < 1 || n < 1) throw usage_error("order and arity must be positive");
    std::size_t cells = 1;
    for (int i = 0; i < n; ++i) {
        if (cells > cap / static_cast<std::size_t>(k))
            throw resource_error(std::string(what) + " exceeded: k^n > " + std::to_string(cap));
        cells *= static_cast<std::size_t>(k);
    }
    if (cells > cap)
        throw resource_error(std::string(what) + " exceeded: k^n > " + std::to_string(cap));
    return cells;
}

Hypercube::Hypercube(int k, int n, std::vector<Symbol> values)
    : k_(k), n_(n), values_(std::move(values)) {
    if (k < 1 || k > max_order) throw usage_error("order must be in 1.." + std::to_string(max_order));
    if (n < 1) throw usage_error("arity must be positive");
    const std::size_t cells = checked_cell_count(k, n, SIZE_MAX, "table size");
    if (values_.size() != cells) throw usage_error("value table must have k^n entries");
    for (Symbol v : values_)
        if (v >= k) throw usage_error("table entry out of symbol range");
}

std::size_t Hypercube::index_of(const Point& p) const {
    if (static_cast<int>(p.size()) != n_) throw usage_error("point arity mismatch");
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i) {
        if (p[i] >= k_) throw usage_error("point coordinate out of range");
        idx = idx * k_ + p[i];
    }
    return idx;
}

Point Hypercube::point_at(std::size_t index) const {
    Point p(static_cast<std::size_t>(n_));
    for (int i = n_ - 1; i >= 0; --i) {
        p[i] = static_cast<Symbol>(index % k_);
        index /= k_;
    }
    return p;
}

std::size_t Hypercube::stride(int axis) const {
    std::size_t s = 1;
    for (int i = n_ - 1; i > axis; --i) s *= k_;
    return s;
}

namespace {

// Calls fn(base, stride) for every axis-parallel line of a k^n cube.
template <class F>
void for_each_line(int k, int n, F&& fn) {
    std::size_t cells = 1;
    for (int i = 0; i < n; ++i) cells *= static_cast<std::size_t>(k);
    for (int axis = 0; axis < n; ++axis) {
        std::size_t stride = 1;
        for (int i = n - 1; i > axis; --i) stride *= static_cast<std::size_t>(k);
        const std::size_t block = stride * static_cast<std::size_t>(k);
        for (std::size_t hi = 0; hi < cells; hi += block)
            for (std::size_t lo = 0; lo < stride; ++lo) fn(hi + lo, stride);
    }
}

}  // namespace

bool validate_quasigroup(const Hypercube& h) {
    const int k = h.order(), n = h.arity();
    const std::uint64_t full = (k == 64) ? ~0ull : ((1ull << k) - 1);
    bool ok = true;
    for_each_line(k, n, [&](std::size_t base, std::size_t stride) {
        if (!ok) return;
        std::uint64_t seen = 0;
        for (int t = 0; t < k; ++t) seen |= 1ull << h.at_index(base + t * stride);
        if (seen != full) ok = false;
    });
    return ok;
}

bool validate_loop(const Hypercube& h) {
    if (!validate_quasigroup(h)) return false;
    const int k = h.order(), n = h.arity();
    for (int i = 0; i < n; ++i) {
        const std::size_t stride = h.stride(i);
        for (int a = 0; a < k; ++a)
            if (h.at_index(static_cast<std::size_t>(a) * stride) != a) return false;
    }
    return true;
}

bool is_idempotent(const Hypercube& h) {
    if (h.arity() != 2) throw usage_error("is_idempotent requires arity 2");
    for (int x = 0; x < h.order(); ++x)
        if (h.at2(static_cast<Symbol>(x), static_cast<Symbol>(x)) != x) return false;
    return true;
}

}  // namespace nqg
