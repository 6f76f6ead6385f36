#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nqg/errors.hpp"

namespace nqg {

using Symbol = std::uint8_t;
using Point = std::vector<Symbol>;

// Line bitmasks are 64-bit, so symbols live in 0..63.
inline constexpr int max_order = 64;

// k^n with an overflow/cap guard. `what` names the guard in the error message.
std::size_t checked_cell_count(int k, int n, std::size_t cap, const char* what);

// Value table of an n-ary operation on {0..k-1}.
// Layout is row-major with the LAST coordinate varying fastest:
// index = ((x_1*k + x_2)*k + ...)*k + x_n.
class Hypercube {
public:
    Hypercube(int k, int n, std::vector<Symbol> values);

    template <class F>
    static Hypercube from_function(int k, int n, F&& f) {
        const std::size_t cells = checked_cell_count(k, n, SIZE_MAX, "table size");
        std::vector<Symbol> vals(cells);
        Point p(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < cells; ++i) {
            vals[i] = f(const_cast<const Point&>(p));
            for (int a = n - 1; a >= 0; --a) {
                if (++p[a] < k) break;
                p[a] = 0;
            }
        }
        return Hypercube(k, n, std::move(vals));
    }

    int order() const { return k_; }
    int arity() const { return n_; }
    std::size_t cells() const { return values_.size(); }
    const std::vector<Symbol>& values() const { return values_; }

    Symbol at_index(std::size_t i) const { return values_[i]; }
    Symbol at(const Point& p) const { return values_[index_of(p)]; }
    // Arity-2 convenience.
    Symbol at2(Symbol x, Symbol y) const {
        return values_[static_cast<std::size_t>(x) * k_ + y];
    }

    std::size_t index_of(const Point& p) const;
    Point point_at(std::size_t index) const;
    // Index distance between neighbours along `axis` (0 = first coordinate).
    std::size_t stride(int axis) const;

    bool operator==(const Hypercube&) const = default;

private:
    int k_, n_;
    std::vector<Symbol> values_;
};

// True iff every axis-parallel line is a permutation of 0..k-1.
bool validate_quasigroup(const Hypercube& h);

// True iff quasigroup and 0 is an identity: fixing all arguments but one
// to 0 gives the identity map.
bool validate_loop(const Hypercube& h);

// Arity-2 only: diagonal entry (x,x) equals x for all x.
bool is_idempotent(const Hypercube& h);

}  // namespace nqg
