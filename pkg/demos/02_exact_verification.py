#!/usr/bin/env python3
"""Exact verification of the claimed pair structure.

The point of the constructions is that their repeated sums and differences
are completely understood. This script verifies the claims by brute-force
enumeration: bounded-repetition checks, pairwise sumset disjointness, a
census that classifies every collision against the allowed patterns, and
the additive-energy identities.
"""

from b2sets import (
    additive_energy,
    build_w,
    build_w_circ,
    collision_census,
    family_sumset_disjointness,
    is_b2,
    is_b2_circ,
)

w = build_w(3, 30)
print(f"family: {w.describe()}")

print("\nevery part repeats no sum:")
for part, values in zip(w.parts, w.part_values()):
    verdict = is_b2(values, 1)
    print(f"  {part.name}: B2[1] -> {verdict.passed} (max count {verdict.max_count})")

union = w.union_values()
verdict = is_b2_circ(union, 2)
print(f"union repeats no nonzero difference more than twice -> {verdict.passed}")

dis = family_sumset_disjointness(w)
print(f"pairwise part sumsets disjoint -> {dis.passed} ({dis.pair_count} pairs)")

census = collision_census(w, "sum")
print(
    f"sum census: {len(census.records)} repeated values, "
    f"{census.predicted} predicted, {census.anomalies} anomalies"
)
rec = census.records[0]
print(f"  sample collision: value with {len(rec.reps)} representations,"
      f" parts {rec.part_pair}, pattern {rec.pattern}")
for a, b in rec.reps:
    print(f"    {a.point.coords} . v_{a.vector_index} + {b.point.coords} . v_{b.vector_index}")

print("\nthe star twin has the mirrored structure:")
wc = build_w_circ(5, 20)
print(f"  union B2[2] -> {is_b2(wc.union_values(), 2).passed}")
print(f"  parts B2o[1] -> {all(is_b2_circ(v, 1).passed for v in wc.part_values())}")
diff_census = collision_census(wc, "diff")
print(
    f"  diff census: {len(diff_census.records)} collisions, "
    f"{diff_census.anomalies} anomalies"
)

print("\nadditive energy (ordered quadruple counts):")
rep = additive_energy(union)
print(f"  E+ = E- = {rep.e_plus}")
print(f"  |A+A| = {rep.sumset_size} >= |A|^4/E = {float(rep.energy_lower_bound):.1f}")
print(f"  doubling ratio |A+A|/|A|^2 = {float(rep.doubling_ratio_sum):.4f}")
cap = 3 * len(union) ** 2
print(f"  bounded differences cap the energy: {rep.e_plus} <= 3|A|^2 = {cap}")
