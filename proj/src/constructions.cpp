#include "nqg/constructions.hpp"

namespace nqg {

Hypercube idempotent_quasigroup(int m) {
    if (m < 3) throw usage_error("no idempotent quasigroup of order below 3");
    if (m > max_order) throw usage_error("order out of range");
    if (m % 2 == 1) {
        const int c = (m + 1) / 2;
        return Hypercube::from_function(m, 2, [&](const Point& p) {
            return static_cast<Symbol>(c * (p[0] + p[1]) % m);
        });
    }
    // Prolongation of the odd table one order down.
    const int m0 = m - 1;
    const Hypercube base = idempotent_quasigroup(m0);
    std::vector<Symbol> vals(static_cast<std::size_t>(m) * m, 0);
    auto cell = [&](int x, int y) -> Symbol& { return vals[static_cast<std::size_t>(x) * m + y]; };
    for (int x = 0; x < m0; ++x)
        for (int y = 0; y < m0; ++y) cell(x, y) = base.at2(static_cast<Symbol>(x), static_cast<Symbol>(y));
    for (int x = 0; x < m0; ++x) {
        const int y = (x + 1) % m0;
        const Symbol old = base.at2(static_cast<Symbol>(x), static_cast<Symbol>(y));
        cell(x, y) = static_cast<Symbol>(m - 1);
        cell(x, m - 1) = old;
        cell(m - 1, y) = old;
    }
    cell(m - 1, m - 1) = static_cast<Symbol>(m - 1);
    return Hypercube(m, 2, std::move(vals));
}

Hypercube psi(int m) {
    return psi(m, idempotent_quasigroup(m));
}

Hypercube psi(int m, const Hypercube& phi) {
    if (m < 3) throw usage_error("psi requires m >= 3");
    const int k = 2 * m + 1;
    if (k > max_order) throw usage_error("order out of range");
    if (phi.order() != m || phi.arity() != 2 || !is_idempotent(phi))
        throw usage_error("psi requires an idempotent binary table of order m");

    return Hypercube::from_function(k, 2, [&](const Point& p) -> Symbol {
        const int x = p[0], y = p[1];
        if (x == k - 1 && y == k - 1) return static_cast<Symbol>(k - 1);
        if (x == k - 1) return static_cast<Symbol>(y);
        if (y == k - 1) return static_cast<Symbol>(x);
        const int a = x / 2, d = x % 2;
        const int b = y / 2, s = y % 2;
        if (a != b)
            return static_cast<Symbol>(2 * phi.at2(static_cast<Symbol>(a), static_cast<Symbol>(b)) +
                                       ((d + s) & 1));
        if (d == s) return static_cast<Symbol>(2 * a + 1 - d);
        return static_cast<Symbol>(k - 1);
    });
}

ComposedQuasigroup big_psi(int n, int m) {
    if (n < 2) throw usage_error("big_psi requires arity >= 2");
    const Hypercube table = psi(m);
    const int k = table.order();
    auto leaf = [&](int i) { return ComposedQuasigroup::variable(k, i); };
    ComposedQuasigroup cur = ComposedQuasigroup::compose(table, leaf(0), leaf(1));
    int arity = 2;
    // Grow through even arities, appending pair subtrees; a trailing odd
    // variable is attached last.
    while (arity + 2 <= n) {
        cur = ComposedQuasigroup::compose(table, cur,
                                          ComposedQuasigroup::compose(table, leaf(arity), leaf(arity + 1)));
        arity += 2;
    }
    if (arity < n) cur = ComposedQuasigroup::compose(table, cur, leaf(arity));
    return cur;
}

Hypercube interleaved_group(int n, int k, std::size_t cell_cap) {
    if (k < 4 || k % 2 != 0) throw usage_error("interleaved_group requires even k >= 4");
    if (k > max_order) throw usage_error("order out of range");
    if (n < 1) throw usage_error("arity must be positive");
    checked_cell_count(k, n, cell_cap, "materialization cap");
    const int half = k / 2;
    return Hypercube::from_function(k, n, [&](const Point& p) {
        int parity = 0, block = 0;
        for (Symbol x : p) {
            parity ^= x & 1;
            block += x >> 1;
        }
        return static_cast<Symbol>(2 * (block % half) + parity);
    });
}

}  // namespace nqg
