#!/usr/bin/env python3
"""Minimum decompositions and finite impossibility certificates.

Small instances are settled by exact backtracking search. For the
constructed families the search is replaced by a counting certificate:
each lattice tuple forces one same-part pair, the pair's value lands in a
small explicit set, and each (part, value) cell absorbs at most g pairs.
When the tuple count exceeds parts * g * values, no decomposition exists,
with no asymptotics involved.
"""

from b2sets import build_w, counting_certificate, exact_min_union, greedy_union

print("== exact search on small sets ==")
signed_powers = [5**i for i in range(1, 9)] + [-(5**i) for i in range(1, 9)]
rep = exact_min_union(signed_powers, g=7, kind="sum")
print(f"{{+-5^i : i <= 8}} with g=7: minimum parts = {rep.minimum}")
print("  (zero has 8 representations, so one part cannot work;"
      " each sign class repeats no sum)")

rep = exact_min_union([0, 1, 2, 3], g=1, kind="sum")
print(f"{{0,1,2,3}} with g=1: minimum parts = {rep.minimum}")
greedy = greedy_union([0, 1, 2, 3], g=1, kind="sum")
print(f"  first-fit reaches {greedy.parts_used} parts (an upper bound)")

print("\n== counting certificate for the k=3 family, g=1, t=2 ==")
for n in (10, 20, 30, 36, 37, 40, 50):
    cert = counting_certificate(build_w(3, n), g=1, parts=2)
    mark = "IMPOSSIBLE" if cert.verdict else "inconclusive"
    print(
        f"  n={n:>2}: tuples={cert.lhs:>4} values={cert.collision_value_count:>4} "
        f"capacity={cert.capacity:>4} -> {mark}"
    )
print("the crossover is where the tuple count outruns 2 * values:")
print("from that n on, the union of 3 perfect-sum parts cannot be")
print("rewritten as 2 parts that repeat sums at most once each")
