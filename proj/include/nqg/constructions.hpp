#pragma once

#include "nqg/composed.hpp"
#include "nqg/hypercube.hpp"

namespace nqg {

// Idempotent binary quasigroup of order m >= 3. Odd m: c*(x+y) mod m with
// c = (m+1)/2. Even m: prolongation of the order m-1 table along the
// off-diagonal transversal {(x, x+1)}: transversal cells receive the new
// symbol m-1, their old values move to the new row/column, and the new
// corner is m-1.
Hypercube idempotent_quasigroup(int m);

// Binary quasigroup of order k = 2m+1 whose value pairs {2i,2i+1} each split
// into m switchable classes, all but one of box shape. Built from an
// idempotent table of order m (defaults to idempotent_quasigroup(m)).
Hypercube psi(int m);
Hypercube psi(int m, const Hypercube& phi);

// n-ary tower over psi: arity 2 is psi itself; odd arities append one
// variable under a fresh psi node, even arities append a psi(y,z) subtree.
ComposedQuasigroup big_psi(int n, int m);

// Even k: the coordinatewise sum of parity and half-value, re-encoded as a
// symbol. Its minimal switchable classes are exactly the (k/2)^n boxes
// {2u_1,2u_1+1} x ... x {2u_n,2u_n+1}, each of size 2^n.
Hypercube interleaved_group(int n, int k,
                            std::size_t cell_cap = ComposedQuasigroup::default_materialize_cap);

}  // namespace nqg
