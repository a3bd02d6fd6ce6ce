#!/usr/bin/env python3
"""Tour of the constructions.

Every family is built from three ingredients: sign vectors with controlled
pairwise sums, a reduced Vandermonde lattice whose tuples are determined by
any half of their coordinates, and disjoint geometric sequences of powers
of five indexed by those coordinates. Elements are sparse balanced base-5
numbers, so nothing here ever rounds.
"""

from b2sets import (
    build_meyer,
    build_product,
    build_proposition,
    build_w,
    build_w_circ,
    hadamard_code_vectors,
    reduced_vandermonde,
    star_code_vectors,
    walsh_rows,
)

print("== sign vector families ==")
print("Sylvester rows, j=2:", walsh_rows(2))
had = hadamard_code_vectors(4)
print(f"hadamard k=4 (d={had.d}):", had.vectors)
star = star_code_vectors(5)
print(f"star k=5 (d={star.d}): v_1 = {star.vectors[0]}")

print("\n== the lattice matrix ==")
rv = reduced_vandermonde(5)
print(f"d=5 reduced modulo {rv.prime}:")
for row in rv.rows:
    print("  ", row)

print("\n== the main family W ==")
w = build_w(3, 10)
print(w.describe())
e = w.parts[0].elements[0]
print(f"first element of W_1: tuple {e.point.coords} from preimage {e.point.preimage}")
print(f"  value = {e.value} = {e.value.to_integer()}")

print("\n== the star twin ==")
wc = build_w_circ(5, 16)
print(wc.describe())

print("\n== the planar product ==")
prod = build_product(5, 19)
print(prod.describe())
a = prod.parts[0].elements[0]
print(f"first pair: ({a.value[0]}, {a.value[1]})")

print("\n== the difference set of powers of five ==")
meyer = build_meyer(4)
print(meyer.describe())
print("values:", sorted(x.to_integer() for x in meyer.union_values()))

print("\n== the 2^k-part warm-up family ==")
prop = build_proposition(2, 2)
print(prop.describe())
for part in prop.parts:
    print(f"  {part.name} signs {part.elements[0].signs}:",
          sorted(e.value.to_integer() for e in part.elements))
