"""Minimum-union search, finite pigeonhole certificates, and the random
partition extraction from the power-of-five difference set.

The search side answers "can this set be written as a union of t parts,
each repeating no sum (or difference) more than g times?" by exact
backtracking with incremental per-part profiles. The certificate side
replaces asymptotics with exact finite counts: if a family has N lattice
tuples and only V possible collision values, any decomposition into t
bounded-repetition parts can absorb at most t*g*V of the N forced
collisions, so N > t*g*V certifies that no such decomposition exists.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .analyze import (
    canonical_keys,
    is_b2,
    is_b2_circ,
    kadd,
    kneg,
    kpositive,
    ksub,
    rep_profile,
)
from .construct import SetFamily
from .errors import ParameterError

DEFAULT_NODE_BUDGET = 2_000_000


# -- decompositions and search -----------------------------------------------


@dataclass
class Decomposition:
    assignment: list[int]  # element index -> part index (0-based)
    part_kinds: list[str]
    g: int
    parts_used: int

    def parts(self, elements) -> list[list]:
        out = [[] for _ in range(self.parts_used)]
        for idx, p in enumerate(self.assignment):
            out[p].append(elements[idx])
        return out


@dataclass
class SearchResult:
    status: str  # "SAT" | "UNSAT" | "TIMEOUT"
    parts: int
    decomposition: Decomposition | None
    nodes_explored: int
    budget: int


@dataclass
class MinUnionReport:
    kind: str
    g: int
    results: dict[int, SearchResult]
    minimum: int | None
    order: list[int]  # element indices in search order


class _PartState:
    __slots__ = ("members", "counts")

    def __init__(self):
        self.members: list = []
        self.counts: dict = {}

    def deltas(self, key, kind):
        if kind == "sum":
            vals = [kadd(key, m) for m in self.members]
            vals.append(kadd(key, key))
        else:
            vals = []
            for m in self.members:
                d = ksub(key, m)
                vals.append(d if kpositive(d) else kneg(d))
        return vals

    def add(self, key, vals):
        self.members.append(key)
        for v in vals:
            self.counts[v] = self.counts.get(v, 0) + 1

    def remove(self, key, vals):
        self.members.pop()
        for v in vals:
            c = self.counts[v] - 1
            if c:
                self.counts[v] = c
            else:
                del self.counts[v]

    def fits(self, vals, g):
        counts = self.counts
        local: dict = {}
        for v in vals:
            c = counts.get(v, 0) + local.get(v, 0) + 1
            if c > g:
                return False
            local[v] = local.get(v, 0) + 1
        return True


def _collision_order(keys, kind):
    """Fail-first element order: descending number of repeated values the
    element participates in, ties broken by canonical position."""
    prof = rep_profile(list(keys), "sum" if kind == "sum" else "diff")
    degree = [0] * len(keys)
    if prof.counts:
        repeated = {k for k, c in prof.counts.items() if c >= 2}
        n = len(keys)
        for i in range(n):
            ki = keys[i]
            for j in range(i if kind == "sum" else i + 1, n):
                if kind == "sum":
                    v = kadd(ki, keys[j])
                else:
                    v = ksub(ki, keys[j])
                    if not kpositive(v):
                        v = kneg(v)
                if v in repeated:
                    degree[i] += 1
                    if j != i:
                        degree[j] += 1
    return sorted(range(len(keys)), key=lambda i: (-degree[i], i))


def exact_min_union(
    elements,
    g: int,
    kind: str,
    max_parts: int | None = None,
    budget: int = DEFAULT_NODE_BUDGET,
) -> MinUnionReport:
    """Exact minimum number of parts in a union decomposition where every
    part repeats no sum (kind="sum") or nonzero difference (kind="diff")
    more than g times.

    Backtracking over a pinned fail-first element order; the first element
    is fixed to part 1 and a new part may only be opened as the next
    unused index, so part relabelings are never explored twice. UNSAT is
    claimed only when the search space is exhausted within budget;
    TIMEOUT is a first-class status and never upgrades to a claim.
    """
    if kind not in ("sum", "diff"):
        raise ParameterError(f"unknown kind {kind!r}")
    if g < 1:
        raise ParameterError("g must be >= 1")
    keys = canonical_keys(elements)
    order = _collision_order(keys, kind)
    ordered_keys = [keys[i] for i in order]
    n = len(keys)
    cap = max_parts if max_parts is not None else n
    results: dict[int, SearchResult] = {}
    minimum = None
    all_smaller_unsat = True
    for t in range(1, cap + 1):
        res = _search_t(ordered_keys, g, kind, t, budget)
        if res.status == "SAT" and res.decomposition is not None:
            # translate back to input element order
            assignment = [0] * n
            for pos, part in enumerate(res.decomposition.assignment):
                assignment[order[pos]] = part
            res.decomposition.assignment = assignment
            _verify_decomposition(elements, res.decomposition, g, kind)
        results[t] = res
        if res.status == "SAT":
            # the minimum is claimed only when every smaller t was fully
            # refuted; a timeout below leaves it unknown
            if all_smaller_unsat:
                minimum = t
            break
        if res.status != "UNSAT":
            all_smaller_unsat = False
    return MinUnionReport(kind=kind, g=g, results=results, minimum=minimum, order=order)


def _search_t(keys, g, kind, t, budget) -> SearchResult:
    n = len(keys)
    parts = [_PartState() for _ in range(t)]
    assignment = [-1] * n
    nodes = 0
    exhausted = True

    def dfs(idx, used):
        nonlocal nodes, exhausted
        if idx == n:
            return True
        limit = min(used + 1, t)
        for p in range(limit):
            nodes += 1
            if nodes > budget:
                exhausted = False
                return False
            vals = parts[p].deltas(keys[idx], kind)
            if parts[p].fits(vals, g):
                parts[p].add(keys[idx], vals)
                assignment[idx] = p
                if dfs(idx + 1, max(used, p + 1)):
                    return True
                if not exhausted:
                    return False
                parts[p].remove(keys[idx], vals)
                assignment[idx] = -1
        return False

    found = dfs(0, 0)
    if found:
        deco = Decomposition(
            assignment=list(assignment),
            part_kinds=[kind] * t,
            g=g,
            parts_used=t,
        )
        return SearchResult("SAT", t, deco, nodes, budget)
    if exhausted:
        return SearchResult("UNSAT", t, None, nodes, budget)
    return SearchResult("TIMEOUT", t, None, nodes, budget)


def _verify_decomposition(elements, deco: Decomposition, g, kind):
    items = list(elements)
    for part in deco.parts(items):
        if not part:
            continue
        verdict = is_b2(part, g) if kind == "sum" else is_b2_circ(part, g)
        assert verdict.passed, "search returned a part violating its bound"


def greedy_union(elements, g: int, kind: str) -> Decomposition:
    """First-fit assignment in canonical element order; an upper bound on
    the exact minimum."""
    if kind not in ("sum", "diff"):
        raise ParameterError(f"unknown kind {kind!r}")
    keys = canonical_keys(elements)
    parts: list[_PartState] = []
    assignment = [-1] * len(keys)
    for idx, key in enumerate(keys):
        for p, state in enumerate(parts):
            vals = state.deltas(key, kind)
            if state.fits(vals, g):
                state.add(key, vals)
                assignment[idx] = p
                break
        else:
            state = _PartState()
            vals = state.deltas(key, kind)
            state.add(key, vals)
            parts.append(state)
            assignment[idx] = len(parts) - 1
    deco = Decomposition(
        assignment=assignment,
        part_kinds=[kind] * len(parts),
        g=g,
        parts_used=len(parts),
    )
    _verify_decomposition(elements, deco, g, kind)
    return deco


# -- collision value enumeration ----------------------------------------------


def _power_cache():
    cache: dict[int, int] = {}

    def power(e):
        v = cache.get(e)
        if v is None:
            v = 5**e
            cache[e] = v
        return v

    return power


def pair_collision_values(family: SetFamily, sign: str) -> dict:
    """For each code-vector pair i < j, the exact set of values
    sum_c (v_i +- v_j)[c] * 5^(coords[c]*d + c+1) over the family lattice.

    These are the only values a same-tuple pair across parts i and j can
    produce, and the sets are disjoint across distinct pairs, which is
    asserted.
    """
    if family.kind not in ("W", "Wcirc"):
        raise ParameterError("pair_collision_values needs a W or Wcirc family")
    if sign not in ("sum", "diff"):
        raise ParameterError(f"unknown sign {sign!r}")
    vectors = family.code.vectors
    d = family.code.d
    k = len(vectors)
    points = family.parts[0].elements
    power = _power_cache()
    out: dict[tuple[int, int], set] = {}
    for i in range(k):
        vi = vectors[i]
        for j in range(i + 1, k):
            vj = vectors[j]
            if sign == "sum":
                combined = [vi[c] + vj[c] for c in range(d)]
            else:
                combined = [vi[c] - vj[c] for c in range(d)]
            supp = [c for c in range(d) if combined[c]]
            values = set()
            for el in points:
                coords = el.point.coords
                values.add(
                    sum(
                        combined[c] * power(coords[c] * d + (c + 1))
                        for c in supp
                    )
                )
            out[(i + 1, j + 1)] = values
    union_size = len(set().union(*out.values())) if out else 0
    assert union_size == sum(len(v) for v in out.values()), (
        "collision value sets of distinct vector pairs must be disjoint"
    )
    return out


# -- counting certificates -------------------------------------------------------


@dataclass
class CountingCertificate:
    """Exact pigeonhole certificate that no t-part decomposition exists.

    Every lattice tuple forces one same-part pair among its k elements,
    hence one representation of one of the V collision values inside one
    of the t parts; each (part, value) cell absorbs at most g of these
    because distinct tuples give distinct representations. verdict is
    True exactly when lhs > capacity = t*g*V.
    """

    family_kind: str
    kind: str  # "sum" | "diff"
    g: int
    parts: int
    lhs: int
    collision_value_count: int
    capacity: int
    verdict: bool
    formula_lower_bound: int
    per_pair_counts: dict
    params: dict


def counting_certificate(family: SetFamily, g: int, parts: int) -> CountingCertificate:
    """Certificate against decomposing the family union into ``parts``
    bounded-repetition parts: sum kind for the hadamard-code family, diff
    kind for the star-code family."""
    if family.kind == "W":
        kind = "sum"
    elif family.kind == "Wcirc":
        kind = "diff"
    else:
        raise ParameterError("counting_certificate needs a W or Wcirc family")
    if g < 1 or parts < 1:
        raise ParameterError("g and parts must be >= 1")
    value_sets = pair_collision_values(family, kind)
    v_total = sum(len(s) for s in value_sets.values())
    lhs = family.params["lattice_size"]
    capacity = parts * g * v_total
    d = family.params["d"]
    m = family.params["m"]
    n = family.params["n"]
    formula = (n // (2 * d * m)) ** m
    assert formula <= lhs, "closed-form lattice lower bound must hold"
    return CountingCertificate(
        family_kind=family.kind,
        kind=kind,
        g=g,
        parts=parts,
        lhs=lhs,
        collision_value_count=v_total,
        capacity=capacity,
        verdict=lhs > capacity,
        formula_lower_bound=formula,
        per_pair_counts={pair: len(s) for pair, s in value_sets.items()},
        params={"k": family.params["k"], "n": n, "d": d, "m": m},
    )


def _product_factors(family_or_factors):
    if isinstance(family_or_factors, SetFamily):
        if family_or_factors.kind != "product" or not family_or_factors.factors:
            raise ParameterError("expected a product family")
        left, right = family_or_factors.factors
    else:
        left, right = family_or_factors
        if left.kind != "Wcirc" or right.kind != "W":
            raise ParameterError("factors must be (Wcirc, W)")
    if left.params["k"] != right.params["k"]:
        raise ParameterError("factors must share k")
    return left, right


def _pigeonhole_groups(row_mass: int, n_groups: int, k: int, threshold: int) -> int:
    """Least number of k-element groups holding >= threshold marked
    elements, given row_mass marked elements across n_groups groups."""
    if threshold < 1 or threshold > k:
        raise ParameterError("threshold out of range")
    slack = k - threshold + 1
    shortfall = row_mass - n_groups * (threshold - 1)
    if shortfall <= 0:
        return 0
    return -(-shortfall // slack)  # ceil division


@dataclass
class MixedCertificate:
    """Certificate that the product family admits no mixed decomposition
    into ``parts`` parts, each bounded-repetition for sums or for
    differences.

    Whichever kind carries at least half the product mass pins one row
    (or column); grouping that line by lattice tuples, an exact pigeonhole
    guarantees T_min groups with at least ceil(k/3) marked elements, and
    with parts < k/3 each such group forces a same-part pair. Both the
    sum branch (over the right factor) and the diff branch (over the left
    factor) must then exceed their capacity g*V for the verdict to hold.
    """

    g: int
    parts: int
    k: int
    applicable: bool
    threshold: int
    sum_branch: dict
    diff_branch: dict
    alpha_lower_bound: Fraction  # quarter-of-groups guarantee at half mass
    verdict: bool
    params: dict


def mixed_certificate(family_or_factors, g: int, parts: int) -> MixedCertificate:
    left, right = _product_factors(family_or_factors)
    if g < 1 or parts < 1:
        raise ParameterError("g and parts must be >= 1")
    k = left.params["k"]
    applicable = parts <= k // 3 - 1
    threshold = -(-k // 3)  # ceil(k/3)
    size_left = left.size()
    size_right = right.size()
    total = size_left * size_right
    half = -(-total // 2)

    def branch(line_family, other_size):
        n_groups = line_family.params["lattice_size"]
        line_size = line_family.size()
        row_mass = -(-half // other_size)  # best line holds >= ceil(half/lines)
        if row_mass > line_size:
            row_mass = line_size
        t_min = _pigeonhole_groups(row_mass, n_groups, k, threshold)
        sign = "sum" if line_family.kind == "W" else "diff"
        v_total = sum(
            len(s) for s in pair_collision_values(line_family, sign).values()
        )
        capacity = parts * g * v_total
        return {
            "groups": n_groups,
            "line_size": line_size,
            "row_mass": row_mass,
            "guaranteed_groups": t_min,
            "collision_value_count": v_total,
            "capacity": capacity,
            "exceeds": t_min > capacity,
        }

    sum_branch = branch(right, size_left)
    diff_branch = branch(left, size_right)
    verdict = applicable and sum_branch["exceeds"] and diff_branch["exceeds"]
    return MixedCertificate(
        g=g,
        parts=parts,
        k=k,
        applicable=applicable,
        threshold=threshold,
        sum_branch=sum_branch,
        diff_branch=diff_branch,
        alpha_lower_bound=Fraction(1, 4),
        verdict=verdict,
        params={"n": left.params["n"], "total": total},
    )


@dataclass
class NoLargeSubsetCertificate:
    """Certificate that no subset of relative size delta' of the product
    family is bounded-repetition for sums or for differences.

    A hypothetical dense subset pins a row with at least ceil(delta'*k*N)
    marked elements; the exact group pigeonhole yields T_min groups each
    holding >= ceil(delta'*k/2) elements and hence C(threshold, 2) pairs,
    all mapping into V collision values with at most g representations
    each. Both branches must overflow for the verdict.
    """

    g: int
    delta_prime: Fraction
    k: int
    threshold: int
    gamma: Fraction
    sum_branch: dict
    diff_branch: dict
    verdict: bool
    params: dict


def no_large_bsubset_certificate(
    family_or_factors, g: int, delta_prime
) -> NoLargeSubsetCertificate:
    left, right = _product_factors(family_or_factors)
    delta_prime = Fraction(delta_prime)
    if not 0 < delta_prime <= 1:
        raise ParameterError("delta_prime must lie in (0, 1]")
    if g < 1:
        raise ParameterError("g must be >= 1")
    k = left.params["k"]
    if delta_prime * k < 4:
        raise ParameterError("need delta_prime * k / 2 >= 2")
    threshold = math.ceil(delta_prime * k / 2)
    gamma = (delta_prime / 2) / (1 - delta_prime / 2)
    size_left = left.size()
    size_right = right.size()
    total = size_left * size_right
    subset_mass = math.ceil(delta_prime * total)

    def branch(line_family, other_size):
        n_groups = line_family.params["lattice_size"]
        line_size = line_family.size()
        row_mass = min(-(-subset_mass // other_size), line_size)
        t_min = _pigeonhole_groups(row_mass, n_groups, k, threshold)
        pairs_per_group = math.comb(threshold, 2)
        mass = t_min * pairs_per_group
        sign = "sum" if line_family.kind == "W" else "diff"
        v_total = sum(
            len(s) for s in pair_collision_values(line_family, sign).values()
        )
        capacity = g * v_total
        return {
            "groups": n_groups,
            "row_mass": row_mass,
            "guaranteed_groups": t_min,
            "pairs_per_group": pairs_per_group,
            "pair_mass": mass,
            "collision_value_count": v_total,
            "capacity": capacity,
            "exceeds": mass > capacity,
        }

    sum_branch = branch(right, size_left)
    diff_branch = branch(left, size_right)
    return NoLargeSubsetCertificate(
        g=g,
        delta_prime=delta_prime,
        k=k,
        threshold=threshold,
        gamma=gamma,
        sum_branch=sum_branch,
        diff_branch=diff_branch,
        verdict=sum_branch["exceeds"] and diff_branch["exceeds"],
        params={"n": left.params["n"], "total": total},
    )


# -- random partition extraction ---------------------------------------------


@dataclass
class MeyerExtraction:
    n_elements: int
    trials: int
    seed: int
    mean_ratio: Fraction
    best_size: int
    best_upper: tuple[int, ...]
    best_elements: list
    all_pass: bool
    sizes: list[int]


def meyer_extract(family: SetFamily, seed: int, trials: int, g: int = 2) -> MeyerExtraction:
    """Random two-coloring extraction from the difference family.

    Each trial assigns every index 0..n_max to the upper or lower class
    with probability 1/2 from a seeded generator; the extracted subset
    keeps elements whose high index is upper and low index is lower. Such
    a subset never repeats a sum more than twice, which is verified for
    every trial.
    """
    if family.kind != "meyer":
        raise ParameterError("meyer_extract needs a meyer family")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    elems = family.parts[0].elements
    n_max = family.params["n_max"]
    rng = random.Random(seed)
    total_size = 0
    best = None
    sizes = []
    all_pass = True
    for _ in range(trials):
        upper = frozenset(
            i for i in range(n_max + 1) if rng.getrandbits(1)
        )
        chosen = [e for e in elems if e.hi in upper and e.lo not in upper]
        sizes.append(len(chosen))
        total_size += len(chosen)
        if chosen:
            verdict = is_b2([e.value for e in chosen], g)
            if not verdict.passed:
                all_pass = False
        if best is None or len(chosen) > best[0]:
            best = (len(chosen), tuple(sorted(upper)), chosen)
    assert all_pass, "an extracted subset violated the sum bound"
    return MeyerExtraction(
        n_elements=len(elems),
        trials=trials,
        seed=seed,
        mean_ratio=Fraction(total_size, trials * len(elems)),
        best_size=best[0],
        best_upper=best[1],
        best_elements=best[2],
        all_pass=all_pass,
        sizes=sizes,
    )
