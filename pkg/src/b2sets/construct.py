"""Construction of the extremal set families.

The central object is a family W = W_1 u ... u W_k of integers built from
three ingredients: a code family of sign vectors v_1..v_k, a reduced
Vandermonde matrix M, and the lattice S = {M y : y in {1,2,...}^m} of
tuples whose coordinates index disjoint geometric sequences x^c_i =
5^(i*d + c). An element of W_j is the signed combination
sum_c v_j[c] * 5^(coords[c]*d + c+1) for a lattice tuple ``coords``.

Alongside W (hadamard code) and its star-code twin, this module builds
their direct product in Z^2, the difference set of powers of five
(``meyer``), and the simpler 2^k-part family over a k-dimensional index
box (``proposition``). It also provides the generic tools that transport
these sets without disturbing their additive structure: embeddings of
d-dimensional points into Z that preserve all sum and difference
quadruples, translations, and packing into disjoint dyadic blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .codes import (
    CodeFamily,
    ReducedVandermonde,
    hadamard_code_vectors,
    reduced_vandermonde,
    star_code_vectors,
)
from .digitnum import DigitVector
from .errors import EmptyConstruction, InternalVerificationFailure, ParameterError, ResourceCap

PRODUCT_ELEMENT_CAP = 10**7
EMBED_VERIFY_THRESHOLD = 100


@dataclass(frozen=True)
class TuplePoint:
    """A lattice point M*preimage together with its preimage."""

    coords: tuple[int, ...]
    preimage: tuple[int, ...]


@dataclass(frozen=True)
class LabeledElement:
    """A family member phi(point) . v_j with its construction labels."""

    point: TuplePoint
    vector_index: int  # 1-based index into the code family
    value: DigitVector


@dataclass(frozen=True)
class MeyerElement:
    """5^hi - 5^lo with 0 <= lo < hi."""

    hi: int
    lo: int
    value: DigitVector


@dataclass(frozen=True)
class BoxElement:
    """A signed combination over a k-dimensional index box."""

    indices: tuple[int, ...]
    signs: tuple[int, ...]
    value: DigitVector


@dataclass(frozen=True)
class ProductElement:
    """An ordered pair (left, right) of family members, one per factor."""

    left: LabeledElement
    right: LabeledElement

    @property
    def value(self) -> tuple[DigitVector, DigitVector]:
        return (self.left.value, self.right.value)


@dataclass(frozen=True)
class Part:
    name: str
    elements: tuple


@dataclass
class SetFamily:
    """A named, partitioned set with full construction provenance.

    ``parts`` are pairwise disjoint as value sets; ``ambient`` is 1 for
    integer families and 2 for the product family whose elements are
    ordered pairs.
    """

    kind: str  # "W" | "Wcirc" | "product" | "meyer" | "proposition"
    ambient: int
    params: dict
    parts: tuple[Part, ...]
    warnings: tuple[str, ...] = ()
    code: CodeFamily | None = None
    matrix: ReducedVandermonde | None = None
    factors: tuple["SetFamily", "SetFamily"] | None = None

    def union_elements(self) -> list:
        out = []
        for part in self.parts:
            out.extend(part.elements)
        return out

    def union_values(self) -> list:
        return [e.value for e in self.union_elements()]

    def part_values(self) -> list[list]:
        return [[e.value for e in part.elements] for part in self.parts]

    def size(self) -> int:
        return sum(len(part.elements) for part in self.parts)

    def describe(self) -> str:
        bits = [f"{self.kind}", f"|union|={self.size()}", f"parts={len(self.parts)}"]
        for key in ("k", "n", "n_max", "d", "m", "prime"):
            if key in self.params:
                bits.append(f"{key}={self.params[key]}")
        if self.warnings:
            bits.append(f"warnings={len(self.warnings)}")
        return " ".join(bits)


def lattice_points(matrix: ReducedVandermonde, n: int) -> tuple[TuplePoint, ...]:
    """All points M*y with y in {1,2,...}^m and every coordinate <= n.

    Entries of M are >= 1, so each y_c is bounded by n and the search is
    finite; preimages are enumerated in lexicographic order, which fixes
    the canonical order of every downstream element list.
    """
    if n < 1:
        raise ParameterError("lattice_points requires n >= 1")
    rows = matrix.rows
    d = matrix.d
    m = matrix.m
    # suffix_min[c][r]: least possible contribution of columns >= c to row r
    suffix_min = [[0] * d for _ in range(m + 1)]
    for c in range(m - 1, -1, -1):
        for r in range(d):
            suffix_min[c][r] = suffix_min[c + 1][r] + rows[r][c]
    out: list[TuplePoint] = []
    y = [0] * m

    def rec(c: int, partial: list[int]):
        if c == m:
            out.append(TuplePoint(tuple(partial), tuple(y)))
            return
        v = 1
        while True:
            nxt = [partial[r] + rows[r][c] * v for r in range(d)]
            if any(nxt[r] + suffix_min[c + 1][r] > n for r in range(d)):
                break
            y[c] = v
            rec(c + 1, nxt)
            v += 1

    rec(0, [0] * d)
    return tuple(out)


def element_value(coords: tuple[int, ...], vector: tuple[int, ...]) -> DigitVector:
    """sum_c vector[c] * 5^(coords[c]*d + c+1) as a DigitVector."""
    d = len(coords)
    return DigitVector.from_map(
        {coords[c] * d + (c + 1): vector[c] for c in range(d) if vector[c]}
    )


def _code_family_set(kind: str, code: CodeFamily, k: int, n: int, part_prefix: str) -> SetFamily:
    matrix = reduced_vandermonde(code.d)
    points = lattice_points(matrix, n)
    if not points:
        raise EmptyConstruction(
            f"{kind}: no lattice points with all coordinates <= {n} (d={code.d})"
        )
    parts = []
    for j0, vec in enumerate(code.vectors):
        elems = tuple(
            LabeledElement(pt, j0 + 1, element_value(pt.coords, vec))
            for pt in points
        )
        parts.append(Part(f"{part_prefix}_{j0 + 1}", elems))
    params = {
        "k": k,
        "n": n,
        "d": code.d,
        "m": matrix.m,
        "prime": matrix.prime,
        "nat_start": 1,
        "lattice_size": len(points),
    }
    return SetFamily(
        kind=kind,
        ambient=1,
        params=params,
        parts=tuple(parts),
        warnings=code.warnings,
        code=code,
        matrix=matrix,
    )


def build_w(k: int, n: int) -> SetFamily:
    """The k-part family over hadamard code vectors.

    Each part is a perfect difference-free summand: all pair sums within a
    part are distinct, while the union has every nonzero difference hit at
    most twice.
    """
    if k < 2:
        raise ParameterError("build_w requires k >= 2")
    return _code_family_set("W", hadamard_code_vectors(k), k, n, "W")


def build_w_circ(k: int, n: int) -> SetFamily:
    """The star-code twin: parts repeat no nonzero difference, and for
    k >= 5 the union repeats no sum more than twice."""
    if k < 2:
        raise ParameterError("build_w_circ requires k >= 2")
    return _code_family_set("Wcirc", star_code_vectors(k), k, n, "Wcirc")


def build_product(k: int, n: int, element_cap: int = PRODUCT_ELEMENT_CAP) -> SetFamily:
    """The full Cartesian product Wcirc x W in Z^2, materialized eagerly."""
    if k < 2:
        raise ParameterError("build_product requires k >= 2")
    left = build_w_circ(k, n)
    right = build_w(k, n)
    total = left.size() * right.size()
    if total > element_cap:
        raise ResourceCap(
            f"product would hold {total} elements, above the cap {element_cap}"
        )
    left_elems = left.union_elements()
    right_elems = right.union_elements()
    elems = tuple(
        ProductElement(le, re) for le in left_elems for re in right_elems
    )
    params = {
        "k": k,
        "n": n,
        "left_size": left.size(),
        "right_size": right.size(),
    }
    return SetFamily(
        kind="product",
        ambient=2,
        params=params,
        parts=(Part("WcircxW", elems),),
        warnings=tuple(dict.fromkeys(left.warnings + right.warnings)),
        factors=(left, right),
    )


def build_meyer(n_max: int) -> SetFamily:
    """All differences 5^hi - 5^lo for 0 <= lo < hi <= n_max."""
    if n_max < 1:
        raise ParameterError("build_meyer requires n_max >= 1")
    elems = []
    for hi in range(1, n_max + 1):
        for lo in range(hi):
            elems.append(
                MeyerElement(hi, lo, DigitVector.from_map({hi: 1, lo: -1}))
            )
    params = {"n_max": n_max, "base": 5}
    return SetFamily(
        kind="meyer",
        ambient=1,
        params=params,
        parts=(Part("E", tuple(elems)),),
    )


def build_proposition(k: int, n: int) -> SetFamily:
    """2^k parts, one per sign pattern in {1,-1}^k, over a k-dim index box.

    Part for pattern v holds sum_c v[c] * 5^(i_c*k + c+1) for all index
    tuples (i_1..i_k) in [1, n]^k; each part has n^k elements.
    """
    if k < 1:
        raise ParameterError("build_proposition requires k >= 1")
    if n < 1:
        raise ParameterError("build_proposition requires n >= 1")
    parts = []
    for idx, signs in enumerate(iter_product((1, -1), repeat=k)):
        elems = tuple(
            BoxElement(
                indices,
                signs,
                DigitVector.from_map(
                    {indices[c] * k + (c + 1): signs[c] for c in range(k)}
                ),
            )
            for indices in iter_product(range(1, n + 1), repeat=k)
        )
        parts.append(Part(f"S_{idx + 1}", elems))
    params = {"k": k, "n": n, "nat_start": 1}
    return SetFamily(
        kind="proposition",
        ambient=1,
        params=params,
        parts=tuple(parts),
    )


def decode_element(family: SetFamily, value: DigitVector) -> tuple[tuple[int, ...], int]:
    """Recover (coords, vector_index) from a W / Wcirc element value.

    The value has exactly d digits, one per coordinate class modulo d; the
    exponent i*d + c determines the index i and the digit sign recovers
    the code vector. Raises if the value is not decodable.
    """
    if family.kind not in ("W", "Wcirc"):
        raise ParameterError("decode_element needs a W or Wcirc family")
    d = family.params["d"]
    if len(value.digits) != d:
        raise ValueError(f"value has {len(value.digits)} digits, expected {d}")
    coords = [0] * d
    signs = [0] * d
    for e, c in value.digits:
        if abs(c) != 1:
            raise ValueError(f"digit {c} is not a sign")
        col = e % d
        col = d if col == 0 else col  # 1-based coordinate class
        coords[col - 1] = (e - col) // d
        signs[col - 1] = c
    try:
        j = family.code.vectors.index(tuple(signs)) + 1
    except ValueError:
        raise ValueError(f"sign pattern {signs} matches no code vector") from None
    if any(i < 1 for i in coords):
        raise ValueError("decoded index below 1")
    return tuple(coords), j


# -- structure-preserving transport ---------------------------------------


@dataclass(frozen=True)
class F2Embedding:
    """An injective map of d-dimensional points into Z preserving all
    a+b = c+d and a-b = c-d relations in both directions.

    base is 5 times the largest coordinate magnitude, so coordinate sums
    of two points stay within (-base/2, base/2) and base-M expansions of
    the images are unique; that argument certifies preservation even when
    the set is too large for the pairwise check.
    """

    base: int
    points: tuple[tuple[int, ...], ...]
    image: tuple[int, ...]
    verification: str  # "exhaustive" | "certified"

    def forward(self, point) -> int:
        return self.image[self.points.index(_as_point(point))]

    def mapping(self) -> dict:
        return dict(zip(self.points, self.image))


def _as_point(x) -> tuple[int, ...]:
    if isinstance(x, DigitVector):
        return (x.to_integer(),)
    if isinstance(x, int):
        return (x,)
    if isinstance(x, tuple):
        out = []
        for c in x:
            if isinstance(c, DigitVector):
                out.append(c.to_integer())
            elif isinstance(c, int):
                out.append(c)
            else:
                raise ParameterError(f"cannot treat {c!r} as an integer coordinate")
        return tuple(out)
    raise ParameterError(f"cannot treat {x!r} as a point")


def relations_preserved(domain: list, image: list[int]) -> bool:
    """Exact check that every sum and difference quadruple relation holds
    in the domain iff it holds in the image.

    Equivalent to the brute-force scan over all quadruples: grouping the
    ordered pairs by domain value and by image value, the two partitions
    must coincide, which is verified by requiring the domain-keyed map to
    be single-valued and injective.
    """
    pts = [_as_point(p) for p in domain]
    n = len(pts)
    for mode in ("sum", "diff"):
        seen: dict = {}
        for i in range(n):
            for j in range(n):
                if mode == "sum":
                    if j < i:
                        continue
                    dk = tuple(a + b for a, b in zip(pts[i], pts[j]))
                    iv = image[i] + image[j]
                else:
                    if i == j:
                        continue
                    dk = tuple(a - b for a, b in zip(pts[i], pts[j]))
                    iv = image[i] - image[j]
                prev = seen.setdefault(dk, iv)
                if prev != iv:
                    return False
        if len(set(seen.values())) != len(seen):
            return False
    return True


def f2_embed(points, verify_threshold: int = EMBED_VERIFY_THRESHOLD) -> F2Embedding:
    """Embed a finite set of d-dimensional integer points into Z via
    point -> sum_i point[i] * base^(i+1) with base = 5 * max |coordinate|."""
    pts = [_as_point(p) for p in points]
    if not pts:
        raise ParameterError("f2_embed requires a nonempty set")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ParameterError("all points must share one dimension")
    if len(set(pts)) != len(pts):
        raise ParameterError("points must be distinct")
    maxabs = max((abs(c) for p in pts for c in p), default=0)
    base = 5 * maxabs
    powers = [base ** (i + 1) for i in range(dim)]
    image = tuple(sum(c * powers[i] for i, c in enumerate(p)) for p in pts)
    if len(set(image)) != len(image):
        raise InternalVerificationFailure("embedding image is not injective")
    if len(pts) <= verify_threshold:
        if not relations_preserved(pts, list(image)):
            raise InternalVerificationFailure(
                "embedding failed the pairwise relation check"
            )
        verification = "exhaustive"
    else:
        verification = "certified"
    return F2Embedding(
        base=base, points=tuple(pts), image=image, verification=verification
    )


def translate(elements, alpha):
    """Shift every element by alpha; preserves all sum and difference
    quadruple relations. DigitVector inputs come back as plain integers."""
    out = []
    for x in elements:
        if isinstance(x, DigitVector):
            x = x.to_integer()
        if isinstance(x, int):
            if not isinstance(alpha, int):
                raise ParameterError("alpha must be an integer for integer elements")
            out.append(x + alpha)
        elif isinstance(x, tuple):
            if not isinstance(alpha, tuple) or len(alpha) != len(x):
                raise ParameterError("alpha must be a tuple matching the point dimension")
            out.append(tuple(_coord(c) + a for c, a in zip(x, alpha)))
        else:
            raise ParameterError(f"cannot translate {x!r}")
    return out


def _coord(c):
    return c.to_integer() if isinstance(c, DigitVector) else c


@dataclass(frozen=True)
class PackedBlock:
    index: int
    psi: int
    offset: int
    elements: tuple[int, ...]


@dataclass(frozen=True)
class DyadicPacking:
    blocks: tuple[PackedBlock, ...]

    def union(self) -> list[int]:
        out = []
        for b in self.blocks:
            out.extend(b.elements)
        return out


def dyadic_pack(sets) -> DyadicPacking:
    """Translate each finite set into its own dyadic block [2^psi, 2^(psi+1)).

    psi is strictly increasing across the input order, taking the minimal
    block that fits each set's width; translations preserve each set's
    additive structure and the blocks are pairwise disjoint.
    """
    blocks = []
    prev_psi = -1
    for idx, s in enumerate(sets):
        vals = sorted(_coord(v) for v in s)
        if not vals:
            raise ParameterError("dyadic_pack requires nonempty sets")
        if len(set(vals)) != len(vals):
            raise ParameterError("dyadic_pack requires distinct elements")
        width = vals[-1] - vals[0] + 1
        need = (width - 1).bit_length()  # minimal psi with 2^psi >= width
        psi = max(prev_psi + 1, need)
        offset = (1 << psi) - vals[0]
        moved = tuple(v + offset for v in vals)
        if moved[0] < (1 << psi) or moved[-1] >= (1 << (psi + 1)):
            raise InternalVerificationFailure("block does not fit its dyadic range")
        blocks.append(PackedBlock(index=idx, psi=psi, offset=offset, elements=moved))
        prev_psi = psi
    return DyadicPacking(tuple(blocks))
