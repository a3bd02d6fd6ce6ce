"""Exact verification engine: representation profiles, bounded-repetition
checks, additive energy, sumset disjointness, collision censuses, and
subset doubling audits.

Everything here is exact integer counting. Elements may be integers,
DigitVectors, or pairs of either (for the planar product family); they
are canonicalized once to integer keys, which is a bijection because
balanced base-5 expansions are unique, and all pair enumeration then runs
on native integers. Where a full value->count map would be large, counts
are collected in two passes: a first pass tallies a cheap deterministic
surrogate (the builtin integer hash), a second pass resolves every
suspicious value by its exact key, so reported counts are exact while
memory stays proportional to the number of repeated values.

Conventions, pinned once and used everywhere:

* sum mode counts unordered pairs {a, b}, a = b allowed and counted once;
* diff mode counts ordered pairs (a, b), a != b, per nonzero value; the
  profile stores one entry per +-value class in its positive orientation
  (counts for v and -v are equal), and zero is reported separately;
* witnesses are selected deterministically, smallest values first (for
  differences: smallest magnitude, positive orientation first).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .construct import SetFamily
from .digitnum import DigitVector
from .errors import ParameterError, ResourceCap

ENERGY_PAIR_BUDGET = 5 * 10**7
FULL_MAP_PAIR_LIMIT = 200_000
WITNESS_CAP = 10
EXHAUSTIVE_AUDIT_LIMIT = 20
AUDIT_TABLE_LIMIT = 3000


# -- canonical keys --------------------------------------------------------


def canonical_key(x):
    if isinstance(x, DigitVector):
        return x.to_integer()
    if isinstance(x, int):
        return x
    if isinstance(x, tuple):
        return tuple(canonical_key(c) for c in x)
    raise ParameterError(f"cannot canonicalize element {x!r}")


def canonical_keys(elements) -> list:
    keys = [canonical_key(x) for x in elements]
    if len(set(keys)) != len(keys):
        raise ParameterError("elements must be distinct")
    return keys


def kadd(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def ksub(a, b):
    if isinstance(a, tuple):
        return tuple(x - y for x, y in zip(a, b))
    return a - b


def kneg(a):
    if isinstance(a, tuple):
        return tuple(-x for x in a)
    return -a


def kpositive(a) -> bool:
    """Canonical orientation: first nonzero coordinate positive."""
    if isinstance(a, tuple):
        for x in a:
            if x:
                return x > 0
        return False
    return a > 0


def _diff_sort_token(v):
    """Order difference classes by magnitude, positive orientation first."""
    if isinstance(v, tuple):
        return (v if kpositive(v) else kneg(v), 0 if kpositive(v) else 1)
    return (abs(v), 0 if v > 0 else 1)


# -- exact multiplicity counting -------------------------------------------


def exact_group_counts(stream_factory, extra_keys=()):
    """Exact multiplicities for repeated values in a re-runnable stream.

    ``stream_factory()`` yields (key, payload) pairs; keys must be
    hashable with a deterministic builtin hash (ints and int tuples are).
    Returns (groups, lonely): ``groups`` maps each key whose surrogate
    hash was seen at least twice, or that matches ``extra_keys``, to the
    list of its payloads (grouped by exact key equality, so surrogate
    collisions cannot merge distinct values); ``lonely`` counts the
    remaining stream items, each the unique occurrence of its key.
    """
    surrogate = Counter()
    total = 0
    for key, _ in stream_factory():
        surrogate[hash(key)] += 1
        total += 1
    suspicious = {h for h, c in surrogate.items() if c >= 2}
    suspicious.update(hash(k) for k in extra_keys)
    del surrogate
    groups: dict = {}
    kept = 0
    for key, payload in stream_factory():
        if hash(key) in suspicious:
            groups.setdefault(key, []).append(payload)
            kept += 1
    return groups, total - kept


# -- representation profiles ------------------------------------------------


@dataclass
class Witness:
    value: object
    count: int
    pairs: tuple


@dataclass
class RepProfile:
    """Exact representation counts for pair sums or differences.

    ``counts`` maps canonical values to counts: the complete map when
    ``counts_complete`` is true (small inputs), otherwise every value
    with at least two representations. In diff mode each entry stands for
    the +-class of its value taken in positive orientation, and
    ``zero_pairs`` reports the |A| trivial representations of zero, which
    are excluded from the counts.
    """

    mode: str
    n_elements: int
    total_pairs: int
    distinct_values: int
    max_count: int
    counts: dict
    counts_complete: bool
    witnesses: list[Witness]
    zero_pairs: int = 0


def _profile(keys, elements, mode, witness_cap=WITNESS_CAP):
    n = len(keys)
    if mode == "sum":

        def stream():
            for i in range(n):
                ki = keys[i]
                for j in range(i, n):
                    yield kadd(ki, keys[j]), (i, j)

        total_pairs = n * (n + 1) // 2
    elif mode == "diff":

        def stream():
            for i in range(n):
                ki = keys[i]
                for j in range(i + 1, n):
                    d = ksub(ki, keys[j])
                    if kpositive(d):
                        yield d, (i, j)
                    else:
                        yield kneg(d), (j, i)

        total_pairs = n * (n - 1) // 2
    else:
        raise ParameterError(f"unknown mode {mode!r}")

    if total_pairs <= FULL_MAP_PAIR_LIMIT:
        counts = {}
        for key, _ in stream():
            counts[key] = counts.get(key, 0) + 1
        complete = True
        max_count = max(counts.values(), default=0)
        groups = {}
        if max_count >= 2:
            wanted = {k for k, c in counts.items() if c >= 2}
            for key, pair in stream():
                if key in wanted:
                    groups.setdefault(key, []).append(pair)
        distinct = len(counts)
    else:
        all_groups, lonely = exact_group_counts(stream)
        distinct = len(all_groups) + lonely
        max_in_groups = max((len(v) for v in all_groups.values()), default=0)
        max_count = max(max_in_groups, 1 if total_pairs else 0)
        counts = {k: len(v) for k, v in all_groups.items() if len(v) >= 2}
        groups = {k: v for k, v in all_groups.items() if len(v) >= 2}
        complete = False

    witnesses = []
    if max_count >= 2:
        token = (lambda v: v) if mode == "sum" else _diff_sort_token
        best = sorted(
            (k for k, c in counts.items() if c == max_count), key=token
        )[:witness_cap]
        witnesses = [
            Witness(
                value=k,
                count=counts[k],
                pairs=tuple(
                    (elements[i], elements[j]) for i, j in sorted(groups[k])
                ),
            )
            for k in best
        ]
    return RepProfile(
        mode=mode,
        n_elements=n,
        total_pairs=total_pairs,
        distinct_values=distinct,
        max_count=max_count,
        counts=counts,
        counts_complete=complete,
        witnesses=witnesses,
        zero_pairs=n if mode == "diff" else 0,
    )


def rep_profile(elements, mode: str, witness_cap: int = WITNESS_CAP) -> RepProfile:
    """Exact per-value representation counts for a list of distinct
    elements, in ``sum`` or ``diff`` mode."""
    keys = canonical_keys(elements)
    return _profile(keys, list(elements), mode, witness_cap)


@dataclass
class BVerdict:
    passed: bool
    mode: str
    g: int
    max_count: int
    witness: Witness | None


def is_b2(elements, g: int) -> BVerdict:
    """True iff every value has at most g unordered representations as a
    sum of two elements (the diagonal pair counts once)."""
    if g < 1:
        raise ParameterError("g must be >= 1")
    prof = rep_profile(elements, "sum")
    passed = prof.max_count <= g
    witness = None if passed else _violating_witness(prof)
    return BVerdict(passed, "sum", g, prof.max_count, witness)


def is_b2_circ(elements, g: int) -> BVerdict:
    """True iff every nonzero value has at most g ordered representations
    as a difference of two elements."""
    if g < 1:
        raise ParameterError("g must be >= 1")
    prof = rep_profile(elements, "diff")
    passed = prof.max_count <= g
    witness = None if passed else _violating_witness(prof)
    return BVerdict(passed, "diff", g, prof.max_count, witness)


def _violating_witness(prof: RepProfile) -> Witness | None:
    return prof.witnesses[0] if prof.witnesses else None


# -- additive energy ---------------------------------------------------------


@dataclass
class EnergyReport:
    """Ordered quadruple counts and the doubling quantities they bound.

    e_plus counts ordered (a, b, c, d) with a+b = c+d, e_minus the same
    for a-c = d-b; the two are always equal. Sizes and ratios are exact;
    energy_lower_bound = |A|^4 / e_plus bounds both |A+A| and |A-A| from
    below (Cauchy-Schwarz).
    """

    n_elements: int
    e_plus: int
    e_minus: int
    sumset_size: int
    diffset_size: int
    doubling_ratio_sum: Fraction
    doubling_ratio_diff: Fraction
    energy_lower_bound: Fraction


def additive_energy(elements, pair_budget: int = ENERGY_PAIR_BUDGET) -> EnergyReport:
    keys = canonical_keys(elements)
    n = len(keys)
    if n < 1:
        raise ParameterError("additive_energy requires at least one element")
    if n * n > pair_budget:
        raise ResourceCap(f"{n}^2 pairs exceed the budget {pair_budget}")

    # Sums: off-diagonal unordered counts u(v) plus the diagonal set;
    # the ordered count is 2*u(v) + (1 if v = a+a for some element a).
    diag = {kadd(k, k) for k in keys}

    def sum_stream():
        for i in range(n):
            ki = keys[i]
            for j in range(i + 1, n):
                yield kadd(ki, keys[j]), None

    groups, lonely = exact_group_counts(sum_stream, extra_keys=diag)
    e_plus = 4 * lonely  # lonely off-diagonal value: ordered count 2
    sumset_size = len(groups) + lonely
    for k, payloads in groups.items():
        r = 2 * len(payloads) + (1 if k in diag else 0)
        e_plus += r * r
    for k in diag:
        if k not in groups:
            e_plus += 1
            sumset_size += 1

    # Diffs: canonical-orientation counts c(v); the ordered count of v and
    # of -v both equal c(v), and zero contributes |A| ordered pairs.
    def diff_stream():
        for i in range(n):
            ki = keys[i]
            for j in range(i + 1, n):
                d = ksub(ki, keys[j])
                yield (d if kpositive(d) else kneg(d)), None

    dgroups, dlonely = exact_group_counts(diff_stream)
    e_minus = n * n + 2 * dlonely
    for payloads in dgroups.values():
        c = len(payloads)
        e_minus += 2 * c * c
    diffset_size = 1 + 2 * (len(dgroups) + dlonely)

    report = EnergyReport(
        n_elements=n,
        e_plus=e_plus,
        e_minus=e_minus,
        sumset_size=sumset_size,
        diffset_size=diffset_size,
        doubling_ratio_sum=Fraction(sumset_size, n * n),
        doubling_ratio_diff=Fraction(diffset_size, n * n),
        energy_lower_bound=Fraction(n**4, e_plus),
    )
    assert report.e_plus == report.e_minus, "ordered sum and difference energies must agree"
    assert sumset_size >= report.energy_lower_bound
    assert diffset_size >= Fraction(n**4, e_minus)
    return report


# -- family-level checks ------------------------------------------------------


@dataclass
class DisjointnessReport:
    passed: bool
    pair_count: int
    witness_value: object | None
    witness_pairs: tuple | None  # the two 1-based part index pairs


def family_sumset_disjointness(family: SetFamily) -> DisjointnessReport:
    """Check that the pairwise part sumsets P_i + P_j are disjoint across
    distinct unordered index pairs {i, j}."""
    part_keys = [
        [canonical_key(v) for v in values] for values in family.part_values()
    ]
    k = len(part_keys)
    owner: dict = {}
    collisions: list = []
    for i in range(k):
        for j in range(i, k):
            pair = (i + 1, j + 1)
            if i == j:
                kk = part_keys[i]
                values = {
                    kadd(kk[a], kk[b])
                    for a in range(len(kk))
                    for b in range(a, len(kk))
                }
            else:
                values = {
                    kadd(a, b) for a in part_keys[i] for b in part_keys[j]
                }
            for v in values:
                prev = owner.setdefault(v, pair)
                if prev != pair:
                    collisions.append((v, prev, pair))
    if not collisions:
        return DisjointnessReport(True, k * (k + 1) // 2, None, None)
    value, first, second = min(collisions)
    return DisjointnessReport(False, k * (k + 1) // 2, value, (first, second))


# -- collision census ---------------------------------------------------------


@dataclass
class CollisionRecord:
    value: object
    reps: tuple  # pairs (a, b) of labeled elements
    part_pair: tuple | None
    classification: str  # "PREDICTED" | "ANOMALY"
    pattern: str


@dataclass
class CensusReport:
    mode: str
    family_kind: str
    n_elements: int
    records: list[CollisionRecord]
    predicted: int
    anomalies: int


def collision_census(family: SetFamily, mode: str) -> CensusReport:
    """Enumerate every repeated sum (or difference) in the family union and
    classify each against the structural pattern the construction allows.

    With v_i, v_j the code vectors and phi(y).v_j the part-j element built
    from lattice tuple y, the allowed patterns are:

    * diagonal: every representation is {phi(y).v_i, phi(y).v_j} with one
      shared tuple per representation, a fixed part pair (i, j), i != j,
      and all tuples agreeing on the coordinates where v_i +- v_j is
      nonzero;
    * swap: exactly two representations {phi(y).v_i, phi(z).v_j} and
      {phi(z).v_i, phi(y).v_j} with y != z; for differences also the
      within-part form (phi(y).v_i, phi(z).v_i) and (phi(z).v_h, phi(y).v_h)
      across parts i != h;
    * agreement (star-code differences only): every representation is the
      within-part difference (phi(y).v_j, phi(z).v_j) of one fixed tuple
      pair y != z, across distinct parts j whose own coordinate satisfies
      (My)_j = (Mz)_j; at most ceil(d/2) - 1 parts can agree this way.

    Sums over the hadamard-code family admit only the diagonal pattern;
    star-code differences admit diagonal and agreement; the opposite
    combinations admit only swaps. Anything else is classified ANOMALY.
    """
    if family.kind not in ("W", "Wcirc"):
        raise ParameterError("collision_census needs a W or Wcirc family")
    if mode not in ("sum", "diff"):
        raise ParameterError(f"unknown mode {mode!r}")
    elems = family.union_elements()
    keys = [canonical_key(e.value) for e in elems]
    n = len(keys)

    if mode == "sum":

        def stream():
            for i in range(n):
                ki = keys[i]
                for j in range(i, n):
                    yield kadd(ki, keys[j]), (i, j)

    else:

        def stream():
            for i in range(n):
                ki = keys[i]
                for j in range(i + 1, n):
                    d = ksub(ki, keys[j])
                    if kpositive(d):
                        yield d, (i, j)
                    else:
                        yield kneg(d), (j, i)

    groups, _ = exact_group_counts(stream)
    vectors = family.code.vectors
    records = []
    predicted = anomalies = 0
    token = (lambda v: v) if mode == "sum" else _diff_sort_token
    for value in sorted((k for k, v in groups.items() if len(v) >= 2), key=token):
        reps = tuple((elems[i], elems[j]) for i, j in sorted(groups[value]))
        classification, pattern, part_pair = _classify_collision(
            reps, vectors, mode, family.kind
        )
        if classification == "PREDICTED":
            predicted += 1
        else:
            anomalies += 1
        records.append(
            CollisionRecord(value, reps, part_pair, classification, pattern)
        )
    return CensusReport(
        mode=mode,
        family_kind=family.kind,
        n_elements=n,
        records=records,
        predicted=predicted,
        anomalies=anomalies,
    )


def _classify_collision(reps, vectors, mode, kind):
    if (kind == "W" and mode == "sum") or (kind == "Wcirc" and mode == "diff"):
        ok, part_pair = _is_diagonal_pattern(reps, vectors, mode)
        if ok:
            return "PREDICTED", "diagonal", part_pair
        if kind == "Wcirc":
            ok, part_pair = _is_agreement_pattern(reps)
            if ok:
                return "PREDICTED", "agreement", part_pair
        return "ANOMALY", "unmatched", None
    ok, part_pair = _is_swap_pattern(reps, mode)
    if ok:
        return "PREDICTED", "swap", part_pair
    return "ANOMALY", "unmatched", None


def _is_agreement_pattern(reps):
    """Within-part differences of one tuple pair, repeated across every
    part whose own coordinate agrees between the two tuples."""
    point_pairs = set()
    parts = []
    for a, b in reps:
        if a.vector_index != b.vector_index:
            return False, None
        if a.point == b.point:
            return False, None
        j = a.vector_index
        if a.point.coords[j - 1] != b.point.coords[j - 1]:
            return False, None
        parts.append(j)
        point_pairs.add((a.point, b.point))
    if len(point_pairs) != 1 or len(set(parts)) != len(parts):
        return False, None
    return True, tuple(sorted(parts))


def _is_diagonal_pattern(reps, vectors, mode):
    first_pair = None
    supp = None
    ref_coords = None
    for a, b in reps:
        if mode == "sum" and a.vector_index > b.vector_index:
            a, b = b, a
        if a.point != b.point:
            return False, None
        pair = (a.vector_index, b.vector_index)
        if pair[0] == pair[1]:
            return False, None
        if first_pair is None:
            first_pair = pair
            vi = vectors[pair[0] - 1]
            vj = vectors[pair[1] - 1]
            combined = [
                vi[c] + vj[c] if mode == "sum" else vi[c] - vj[c]
                for c in range(len(vi))
            ]
            supp = [c for c, x in enumerate(combined) if x]
            ref_coords = a.point.coords
        elif pair != first_pair:
            return False, None
        if any(a.point.coords[c] != ref_coords[c] for c in supp):
            return False, None
    return True, first_pair


def _is_swap_pattern(reps, mode):
    if len(reps) != 2:
        return False, None
    (a1, b1), (a2, b2) = reps
    if mode == "sum":
        # {phi(y).v_i, phi(z).v_j} and {phi(z).v_i, phi(y).v_j}, y != z
        for p, q in ((a2, b2), (b2, a2)):
            if (
                a1.vector_index == p.vector_index
                and b1.vector_index == q.vector_index
                and a1.vector_index != b1.vector_index
                and a1.point == q.point
                and b1.point == p.point
                and a1.point != b1.point
            ):
                return True, tuple(sorted((a1.vector_index, b1.vector_index)))
        return False, None
    # diff, within-part: (phi(y).v_i, phi(z).v_i) and (phi(z).v_h, phi(y).v_h)
    if (
        a1.vector_index == b1.vector_index
        and a2.vector_index == b2.vector_index
        and a1.vector_index != a2.vector_index
        and a1.point == b2.point
        and b1.point == a2.point
        and a1.point != b1.point
    ):
        return True, (a1.vector_index, a2.vector_index)
    # diff, cross-part: (phi(y).v_i, phi(z).v_j) and (phi(z).v_i, phi(y).v_j)
    if (
        a1.vector_index == a2.vector_index
        and b1.vector_index == b2.vector_index
        and a1.vector_index != b1.vector_index
        and a1.point == b2.point
        and b1.point == a2.point
        and a1.point != b1.point
    ):
        return True, (a1.vector_index, b1.vector_index)
    return False, None


# -- subset doubling audit -----------------------------------------------------


@dataclass
class AuditParams:
    min_size: int = 4
    trials: int = 1000
    seed: int = 0
    max_size: int | None = None


@dataclass
class AuditResult:
    mode: str
    n_elements: int
    subsets_examined: int
    min_sum_ratio: Fraction
    min_diff_ratio: Fraction
    argmin_sum: list
    argmin_diff: list
    params: AuditParams


def subset_doubling_audit(elements, mode: str, params: AuditParams) -> AuditResult:
    """Minimum |A'+A'| / |A'|^2 and |A'-A'| / |A'|^2 over subsets A'.

    ``exhaustive`` iterates every subset of size >= min_size (|A| <= 20);
    ``sample`` draws ``trials`` subsets of uniform size in
    [min_size, max_size] from a seeded generator. Ratios are exact
    Fractions; |A'-A'| includes zero.
    """
    keys = canonical_keys(elements)
    n = len(keys)
    if params.min_size < 2:
        raise ParameterError("min_size must be >= 2")
    if n < params.min_size:
        raise ParameterError("fewer elements than min_size")
    if mode == "exhaustive" and n > EXHAUSTIVE_AUDIT_LIMIT:
        raise ResourceCap(
            f"exhaustive audit limited to {EXHAUSTIVE_AUDIT_LIMIT} elements"
        )

    table = _pair_id_tables(keys) if n <= AUDIT_TABLE_LIMIT else None

    best_sum = None
    best_diff = None
    argmin_sum = argmin_diff = ()
    examined = 0

    def consider(indices):
        nonlocal best_sum, best_diff, argmin_sum, argmin_diff, examined
        examined += 1
        s = len(indices)
        sums = set()
        diffs = set()
        if table is not None:
            sum_ids, diff_ids = table
            for ai in range(s):
                ia = indices[ai]
                row_s = sum_ids[ia]
                row_d = diff_ids[ia]
                sums.add(row_s[ia])
                for bi in range(ai + 1, s):
                    ib = indices[bi]
                    sums.add(row_s[ib])
                    diffs.add(row_d[ib])
        else:
            for ai in range(s):
                ka = keys[indices[ai]]
                sums.add(kadd(ka, ka))
                for bi in range(ai + 1, s):
                    kb = keys[indices[bi]]
                    sums.add(kadd(ka, kb))
                    d = ksub(ka, kb)
                    diffs.add(d if kpositive(d) else kneg(d))
        rs = Fraction(len(sums), s * s)
        rd = Fraction(1 + 2 * len(diffs), s * s)
        if best_sum is None or rs < best_sum:
            best_sum, argmin_sum = rs, tuple(indices)
        if best_diff is None or rd < best_diff:
            best_diff, argmin_diff = rd, tuple(indices)

    if mode == "exhaustive":
        for mask in range(1, 1 << n):
            if mask.bit_count() < params.min_size:
                continue
            consider([i for i in range(n) if mask >> i & 1])
    elif mode == "sample":
        hi = min(params.max_size if params.max_size is not None else n, n)
        if hi < params.min_size:
            raise ParameterError("max_size below min_size")
        rng = random.Random(params.seed)
        for _ in range(params.trials):
            s = rng.randint(params.min_size, hi)
            consider(sorted(rng.sample(range(n), s)))
    else:
        raise ParameterError(f"unknown audit mode {mode!r}")

    items = list(elements)
    return AuditResult(
        mode=mode,
        n_elements=n,
        subsets_examined=examined,
        min_sum_ratio=best_sum,
        min_diff_ratio=best_diff,
        argmin_sum=[items[i] for i in argmin_sum],
        argmin_diff=[items[i] for i in argmin_diff],
        params=params,
    )


def _pair_id_tables(keys):
    """Intern pair sums and canonical differences as small integer ids so
    repeated subset scans avoid big-integer arithmetic."""
    n = len(keys)
    sum_ids = [[0] * n for _ in range(n)]
    diff_ids = [[0] * n for _ in range(n)]
    intern_s: dict = {}
    intern_d: dict = {}
    for i in range(n):
        ki = keys[i]
        sum_ids[i][i] = intern_s.setdefault(kadd(ki, ki), len(intern_s))
        for j in range(i + 1, n):
            kj = keys[j]
            sid = intern_s.setdefault(kadd(ki, kj), len(intern_s))
            sum_ids[i][j] = sid
            sum_ids[j][i] = sid
            d = ksub(ki, kj)
            did = intern_d.setdefault(
                d if kpositive(d) else kneg(d), len(intern_d)
            )
            diff_ids[i][j] = did
            diff_ids[j][i] = did
    return sum_ids, diff_ids
