"""The (4,4,4) triangle group via its geometric representation.

Generators are the reflections in the three walls of the base tile T, acting
on R^3 equipped with the Gram form of :mod:`reflirs.field`.  Matrix equality
is group-element equality (faithfulness is exercised against an independent
symbolic oracle in :mod:`reflirs.shortlex`).

Ball enumeration comes in two flavours:

* by word length: plain BFS over right multiplication with exact dedup;
* by cosh-radius threshold: complete because every element g of the metric
  ball is connected to the identity through left multiplications by
  generators along its folding path, with strictly increasing distance.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ResourceCapError
from .field import (
    IDENT,
    IMat,
    IVec,
    QSqrt2,
    b2,
    imat_apply,
    imat_inv,
    imat_mul,
    parse_imat,
    serialize_imat,
    zsign,
)

# Basis vectors as integral Z[sqrt2] vectors.
E1: IVec = (1, 0, 0, 0, 0, 0)
E2: IVec = (0, 0, 1, 0, 0, 0)
E3: IVec = (0, 0, 0, 0, 1, 0)
BASIS = (E1, E2, E3)

#: Basepoint o = (1+sqrt2)*(1,1,1): the interior point of T with B(o, e_i) = -1
#: for all i (equidistant from the three walls, trivial stabilizer).
BASEPOINT: IVec = (1, 1, 1, 1, 1, 1)

#: Vertices of the base tile: V[{i,j}] = wall_i intersect wall_j.
VERTEX = {
    frozenset({1, 2}): (1, 1, 1, 1, 1, 0),
    frozenset({1, 3}): (1, 1, 1, 0, 1, 1),
    frozenset({2, 3}): (1, 0, 1, 1, 1, 1),
}

B2_O_O = b2(BASEPOINT, BASEPOINT)  # = 2*B(o,o) = -6 - 6*sqrt2


def _sigma(i: int) -> IMat:
    # reflection x -> x - 2 B(x, e_i) e_i ; row i is (-1 at i, sqrt2 elsewhere)
    rows = []
    for r in range(3):
        for c in range(3):
            if r != i - 1:
                rows += [1 if r == c else 0, 0]
            elif c == i - 1:
                rows += [-1, 0]
            else:
                rows += [0, 1]
    return tuple(rows)


SIGMA = {1: _sigma(1), 2: _sigma(2), 3: _sigma(3)}


def generator_matrix(i: int) -> "Isometry":
    if i not in (1, 2, 3):
        raise ValueError("generator index must be 1, 2 or 3")
    return Isometry(SIGMA[i], str(i))


def _perm_mat(p: tuple[int, int, int]) -> IMat:
    rows = [0] * 18
    for c in range(3):
        rows[6 * p[c] + 2 * c] = 1
    return tuple(rows)


#: The six isometries of the base tile itself (coordinate permutations).
#: They preserve the Gram form but lie outside the reflection group.
TILE_SYMMETRIES = tuple(_perm_mat(p) for p in itertools.permutations((0, 1, 2)))


@dataclass(frozen=True)
class Isometry:
    """A matrix of the tiling's isometry group, with an optional witness word."""

    m: IMat
    word: Optional[str] = dfield(default=None, compare=False)

    def __mul__(self, other: "Isometry") -> "Isometry":
        w = None
        if self.word is not None and other.word is not None:
            w = self.word + other.word
        return Isometry(imat_mul(self.m, other.m), w)

    def inverse(self) -> "Isometry":
        w = self.word[::-1] if self.word is not None else None
        return Isometry(imat_inv(self.m), w)

    def is_identity(self) -> bool:
        return self.m == IDENT

    def apply(self, v: IVec) -> IVec:
        return imat_apply(self.m, v)


IDENTITY = Isometry(IDENT, "")


def compose(g: Isometry, h: Isometry) -> Isometry:
    return g * h


def invert(g: Isometry) -> Isometry:
    return g.inverse()


def preserves_form(m: IMat) -> bool:
    """Exact check that m^T G m = G."""
    img = [imat_apply(m, e) for e in BASIS]
    for i in range(3):
        for j in range(3):
            if b2(img[i], img[j]) != b2(BASIS[i], BASIS[j]):
                return False
    return True


def cosh_distance(g: Isometry | IMat, basepoint: IVec = BASEPOINT) -> QSqrt2:
    """cosh of the hyperbolic distance d(o, g*o), exact in Q(sqrt2)."""
    m = g.m if isinstance(g, Isometry) else g
    num = b2(basepoint, imat_apply(m, basepoint))
    den = b2(basepoint, basepoint)
    return QSqrt2(num[0], num[1]) / QSqrt2(den[0], den[1])


def point_cosh_num(m: IMat, basepoint: IVec = BASEPOINT) -> tuple[int, int]:
    """2*B(o, m*o); compare against thresholds times B2_O_O (both negative)."""
    return b2(basepoint, imat_apply(m, basepoint))


def fold_to_base(p: IVec) -> tuple[IMat, IVec]:
    """Reflect p into the closed base tile; returns (r, r*p) with r in the group.

    Each step reflects across a base wall separating p from the tile, which
    strictly decreases d(o, p); for p in the orbit of an interior point the
    loop terminates with r*p in the closed tile.
    """
    r = IDENT
    while True:
        for i in (1, 2, 3):
            if zsign(b2(p, BASIS[i - 1])) > 0:
                p = imat_apply(SIGMA[i], p)
                r = imat_mul(SIGMA[i], r)
                break
        else:
            return r, p


def canonical_tile(m: IMat) -> IMat:
    """Group representative of the tile m*T for m in the extended group.

    m may include a symmetry of T itself (the basepoint is fixed by those),
    the result is the unique reflection-group element g with g*T = m*T.
    """
    r, q = fold_to_base(imat_apply(m, BASEPOINT))
    if q != BASEPOINT:
        raise ValueError("matrix does not map the tile orbit to itself")
    return imat_inv(r)


# ---------------------------------------------------------------------------
# Ball enumeration
# ---------------------------------------------------------------------------


@dataclass
class Ball:
    """A finite, inverse-closed, deterministically ordered set of elements."""

    elements: list[Isometry]
    cap_kind: str  # "word_length" | "cosh_radius"
    cap_value: object
    index: dict = dfield(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {g.m: i for i, g in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        m = g.m if isinstance(g, Isometry) else g
        return m in self.index

    def position(self, g: Isometry | IMat) -> int:
        m = g.m if isinstance(g, Isometry) else g
        return self.index[m]

    def layer_sizes(self) -> list[int]:
        sizes: list[int] = []
        for g in self.elements:
            l = len(g.word) if g.word is not None else 0
            while len(sizes) <= l:
                sizes.append(0)
            sizes[l] += 1
        return sizes

    def to_json(self) -> list:
        return [
            {"index": i, "word": g.word or "", "matrix": serialize_imat(g.m)}
            for i, g in enumerate(self.elements)
        ]

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    @staticmethod
    def from_json(data: list, cap_kind="word_length", cap_value=None) -> "Ball":
        elems = [Isometry(parse_imat(rec["matrix"]), rec["word"]) for rec in data]
        return Ball(elems, cap_kind, cap_value)


def enumerate_ball(
    max_word_len: Optional[int] = None,
    cosh_radius: Optional[QSqrt2 | Fraction | int] = None,
    max_elements: int = 2_000_000,
    generators: Sequence[IMat] = (SIGMA[1], SIGMA[2], SIGMA[3]),
    basepoint: IVec = BASEPOINT,
) -> Ball:
    """Enumerate a ball of the group, by word length or by cosh-threshold.

    Word-length balls are BFS layers with exact matrix dedup; the stored
    witness word of each element is its ShortLex normal form (layers are
    expanded in witness order with ascending generator index, and ShortLex
    normal forms are closed under prefixes).

    Cosh-radius balls contain exactly the g with cosh d(o, g*o) < threshold
    (strict, matching B_R); elements are ordered like word-length balls.
    """
    if (max_word_len is None) == (cosh_radius is None):
        raise ValueError("specify exactly one of max_word_len / cosh_radius")
    gen_list = list(enumerate(generators, start=1))

    if max_word_len is not None:
        return _ball_bfs(max_word_len, None, max_elements, gen_list)

    thr = cosh_radius if isinstance(cosh_radius, QSqrt2) else QSqrt2(cosh_radius)
    den = QSqrt2(B2_O_O[0], B2_O_O[1])
    bound = thr * den  # cosh < thr  <=>  2B(o,go) > thr * 2B(o,o)
    members: set[IMat] = {IDENT}
    frontier = [IDENT]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for cur in frontier:
            for _, s in gen_list:
                cand = imat_mul(s, cur)  # left multiplication: folding paths
                if cand in members:
                    continue
                num = point_cosh_num(cand, basepoint)
                if QSqrt2(num[0], num[1]) > bound:  # cosh*den > thr*den, den < 0
                    members.add(cand)
                    nxt.append(cand)
                    if len(members) > max_elements:
                        raise ResourceCapError(
                            "cosh ball exceeded cap", partial_count=len(members)
                        )
        frontier = nxt
    # Re-enumerate by word length for canonical witnesses and ordering; the
    # folding-path depth bounds every member's word length.
    shell = _ball_bfs(depth, members, max_elements, gen_list)
    if len(shell) != len(members):
        raise AssertionError("cosh ball re-enumeration mismatch")
    return Ball(shell.elements, "cosh_radius", thr)


def _ball_bfs(max_len, restrict, max_elements, gen_list) -> Ball:
    seen = {IDENT: ""}
    if restrict is not None and IDENT not in restrict:
        raise AssertionError("restriction must contain the identity")
    elements = [Isometry(IDENT, "")]
    layer = [IDENT]
    for _ in range(max_len):
        nxt = []
        for cur in layer:
            wcur = seen[cur]
            for gi, s in gen_list:
                cand = imat_mul(cur, s)
                if cand in seen:
                    continue
                if restrict is not None and cand not in restrict:
                    continue
                seen[cand] = wcur + str(gi)
                elements.append(Isometry(cand, seen[cand]))
                nxt.append(cand)
                if len(elements) > max_elements:
                    raise ResourceCapError(
                        "ball enumeration exceeded cap", partial_count=len(elements)
                    )
        layer = nxt
    return Ball(elements, "word_length", max_len)


def save_ball(ball: Ball, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(ball.to_json(), fh, separators=(",", ":"))
        fh.write("\n")


def load_ball(path: str) -> Ball:
    with open(path) as fh:
        return Ball.from_json(json.load(fh))
