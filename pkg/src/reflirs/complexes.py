"""Tile complexes in the (4,4,4) tiling: blocks, gluing, angle sequences.

A tile complex is a finite union of triangle tiles, each stored as the
reflection-group element carrying the base tile onto it.  The two building
blocks of the shift-indexed polygons are the regular right-angled octagon
(8 tiles around a common vertex) and the 28-tile block obtained by gluing a
half-octagon and two further octagons onto a central octagon.  The second
block's realization is pinned by verified constraints, not by a figure: the
builder fails hard if any required property (tile count, the two pi/4
boundary vertices, trivial self-isometry group, face congruences) does not
hold.

Angles are never measured with floats: the interior angle at a boundary
vertex is (number of tiles meeting it) * pi/4, computed by exact vertex-star
counting.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dfield
from functools import lru_cache
from typing import Optional

from .errors import ConstructionError, RecognitionError
from .field import (
    IDENT,
    IMat,
    IVec,
    b2,
    imat_apply,
    imat_det,
    imat_inv,
    imat_mul,
    ivec_to_qvec,
    serialize_imat,
    zsign,
)
from .coxeter import (
    BASEPOINT,
    BASIS,
    SIGMA,
    TILE_SYMMETRIES,
    VERTEX,
    canonical_tile,
)

Flag = tuple  # (tile: IMat, side: int): side i of tile g is g * (wall i of T)

_SIDE_VERTICES = {
    1: (VERTEX[frozenset({1, 2})], VERTEX[frozenset({1, 3})]),
    2: (VERTEX[frozenset({1, 2})], VERTEX[frozenset({2, 3})]),
    3: (VERTEX[frozenset({1, 3})], VERTEX[frozenset({2, 3})]),
}

_CORNERS = {
    frozenset({1, 2}): VERTEX[frozenset({1, 2})],
    frozenset({1, 3}): VERTEX[frozenset({1, 3})],
    frozenset({2, 3}): VERTEX[frozenset({2, 3})],
}


def _canon_point(v: IVec) -> IVec:
    """Projective representative of an orbit point: content 1, future-pointing."""
    g = 0
    for c in v:
        g = math.gcd(g, c)
    w = tuple(c // g for c in v)
    if zsign(b2(w, BASEPOINT)) > 0:  # orient into the cone of the basepoint
        w = tuple(-c for c in w)
    return w


def _canon_dir(v: IVec) -> IVec:
    """Content-reduced vector, orientation preserved (for wall normals)."""
    g = 0
    for c in v:
        g = math.gcd(g, c)
    return tuple(c // g for c in v)


def _det3(p: IVec, q: IVec, r: IVec) -> int:
    return zsign(imat_det(p + q + r))


@dataclass
class Boundary:
    """Boundary walk of a connected complex with disk topology.

    ``vertices[i]`` is followed by ``edges[i]`` leading to ``vertices[i+1]``
    (cyclically); ``stars[i]`` counts tiles at ``vertices[i]`` (angle =
    stars[i] * pi/4).
    """

    vertices: list[IVec]
    edges: list[Flag]
    stars: list[int]


@dataclass
class TileComplex:
    """An immutable finite union of tiles with block bookkeeping."""

    tiles: tuple[IMat, ...]
    block_of: dict[IMat, int] = dfield(repr=False, default_factory=dict)
    word: Optional[tuple[int, ...]] = None
    poses: Optional[tuple[IMat, ...]] = None
    _tile_set: frozenset = dfield(default=None, repr=False)
    _boundary: Optional[Boundary] = dfield(default=None, repr=False)

    def __post_init__(self):
        if self._tile_set is None:
            self._tile_set = frozenset(self.tiles)
        if not self.block_of:
            self.block_of = {t: 0 for t in self.tiles}

    @property
    def tile_count(self) -> int:
        return len(self.tiles)

    def __contains__(self, t: IMat) -> bool:
        return t in self._tile_set

    def boundary_flags(self) -> list[Flag]:
        out = []
        for t in self.tiles:
            for i in (1, 2, 3):
                if imat_mul(t, SIGMA[i]) not in self._tile_set:
                    out.append((t, i))
        return out

    def boundary(self) -> Boundary:
        if self._boundary is None:
            self._boundary = _walk_boundary(self)
        return self._boundary

    def boundary_walls(self) -> list[IVec]:
        """Deduplicated outward wall normals (inside is the negative side)."""
        seen = []
        have = set()
        for t, i in self.boundary_flags():
            u = _canon_dir(imat_apply(t, BASIS[i - 1]))
            if u not in have:
                have.add(u)
                seen.append(u)
        return seen

    def to_json(self) -> dict:
        walk = self.boundary()
        comps = [_boundary_component_json(walk)]
        return {
            "blocks": "".join(str(a) for a in self.word) if self.word else "",
            "tiles": [
                {"block_index": self.block_of[t], "matrix": serialize_imat(t)}
                for t in self.tiles
            ],
            "boundary": comps,
        }


def _boundary_component_json(walk: Boundary) -> list[dict]:
    n = len(walk.vertices)
    out = []
    run_start = None
    for i in range(n):
        if walk.stars[i] != 4 and run_start is None:
            run_start = i
    if run_start is None:
        raise ConstructionError("boundary has no genuine vertex")
    i = run_start
    start_v = walk.vertices[i]
    for _ in range(n):
        j = (i + 1) % n
        while walk.stars[j] == 4:
            j = (j + 1) % n
        k = walk.stars[j]
        out.append(
            {
                "edge_endpoints": [
                    [q.serialize() for q in ivec_to_qvec(walk.vertices[i])],
                    [q.serialize() for q in ivec_to_qvec(walk.vertices[j])],
                ],
                "angle_denominator": {1: 4, 2: 2}.get(k, k),
            }
        )
        i = j
        if walk.vertices[i] == start_v:
            break
    return out


def _walk_boundary(c: TileComplex) -> Boundary:
    flags = c.boundary_flags()
    if not flags:
        raise ConstructionError("complex has empty boundary")
    # endpoints of each boundary edge, canonical point representatives
    ends: dict[Flag, tuple[IVec, IVec]] = {}
    at_vertex: dict[IVec, list[Flag]] = {}
    for f in flags:
        t, i = f
        a, b = _SIDE_VERTICES[i]
        pa = _canon_point(imat_apply(t, a))
        pb = _canon_point(imat_apply(t, b))
        ends[f] = (pa, pb)
        at_vertex.setdefault(pa, []).append(f)
        at_vertex.setdefault(pb, []).append(f)
    for v, fs in at_vertex.items():
        if len(fs) != 2:
            raise ConstructionError(
                "boundary is not a simple closed walk at %r (%d edges)" % (v, len(fs))
            )
    # tile star counts at boundary vertices, with contiguity verification
    stars: dict[IVec, int] = {}
    star_tiles: dict[IVec, set[IMat]] = {}
    for t in c.tiles:
        for pair, vv in _CORNERS.items():
            p = _canon_point(imat_apply(t, vv))
            if p in at_vertex:
                stars[p] = stars.get(p, 0) + 1
                star_tiles.setdefault(p, set()).add(t)
    for p, group in star_tiles.items():
        _check_fan(group, c, p)
    # assemble the closed walk
    start = min(flags, key=lambda f: (f[0], f[1]))
    walk_edges = [start]
    walk_vertices = [ends[start][0], ends[start][1]]
    while True:
        v = walk_vertices[-1]
        e1, e2 = at_vertex[v]
        nxt = e2 if e1 == walk_edges[-1] else e1
        if nxt == start:
            break
        walk_edges.append(nxt)
        pa, pb = ends[nxt]
        walk_vertices.append(pb if pa == v else pa)
    walk_vertices.pop()  # cyclic: last vertex == first
    if len(walk_edges) != len(flags):
        raise ConstructionError("boundary walk did not close over all edges")
    star_list = [stars[v] for v in walk_vertices]
    # orient the walk: positive determinant at convex corners
    orient = 0
    n = len(walk_vertices)
    for i in range(n):
        if star_list[i] != 4:
            d = _det3(
                walk_vertices[(i - 1) % n], walk_vertices[i], walk_vertices[(i + 1) % n]
            )
            if d != 0:
                orient = d
                break
    if orient < 0:
        walk_vertices = [walk_vertices[0]] + walk_vertices[:0:-1]
        star_list = [star_list[0]] + star_list[:0:-1]
        walk_edges = walk_edges[::-1]
    # edges[i] joins vertices[i] -> vertices[i+1]
    return Boundary(walk_vertices, walk_edges, star_list)


def _check_fan(group: set[IMat], c: TileComplex, p: IVec) -> None:
    """The tiles at a boundary vertex must form a single contiguous fan."""
    group = set(group)
    seed = next(iter(group))
    seen = {seed}
    stack = [seed]
    while stack:
        t = stack.pop()
        for i in (1, 2, 3):
            nb = imat_mul(t, SIGMA[i])
            if nb in group and nb not in seen:
                # neighbours in the fan share the vertex through wall i
                seen.add(nb)
                stack.append(nb)
    if seen != group:
        raise ConstructionError("tile star at %r is not contiguous" % (p,))


# ---------------------------------------------------------------------------
# Angle sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AngleSequence:
    """Angle denominators (angle = pi/m) along boundary components.

    ``components`` holds one tuple per component; ``cyclic`` marks compact
    complexes (single closed component, canonical lex-min rotation), linear
    components come from window truncations and carry no cap entries.
    """

    components: tuple[tuple[int, ...], ...]
    cyclic: bool

    def entries(self) -> tuple[int, ...]:
        if len(self.components) != 1:
            raise ValueError("entries() needs a single component")
        return self.components[0]


def _min_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    if not seq:
        return seq
    doubled = seq + seq
    n = len(seq)
    best = seq
    for i in range(1, n):
        cand = doubled[i : i + n]
        if cand < best:
            best = cand
    return best


def _angle_entry(star: int) -> int:
    if star == 1:
        return 4
    if star == 2:
        return 2
    raise ConstructionError("boundary angle %d*pi/4 is not pi/m" % star)


def angle_sequence(c: TileComplex) -> AngleSequence:
    """Cyclic angle sequence of a compact complex (straight angles removed)."""
    walk = c.boundary()
    entries = tuple(_angle_entry(s) for s in walk.stars if s != 4)
    return AngleSequence((_min_rotation(entries),), cyclic=True)


def window_angle_sequence(c: TileComplex) -> AngleSequence:
    """Reliable angle entries of a window truncation, per boundary component.

    Entries at the unglued end faces are dropped: those are the only angles
    that change when the window is extended (they straighten against the
    next block), everything else is data of the infinite polygon.
    """
    if c.word is None or c.poses is None:
        raise ValueError("window sequences need a glued complex")
    unreliable = set(_end_face_vertices(c))
    walk = c.boundary()
    n = len(walk.vertices)
    flagged = [
        (walk.vertices[i] in unreliable, walk.stars[i]) for i in range(n)
    ]
    # split the cyclic walk at unreliable vertices into linear runs
    runs: list[list[int]] = []
    cur: list[int] = []
    # rotate so position 0 is unreliable, making runs well defined
    first_bad = next((i for i in range(n) if flagged[i][0]), None)
    if first_bad is None:
        raise ConstructionError("window has no truncation marks")
    for off in range(n):
        bad, star = flagged[(first_bad + off) % n]
        if bad:
            if cur:
                runs.append(cur)
                cur = []
            continue
        if star != 4:
            cur.append(_angle_entry(star))
    if cur:
        runs.append(cur)
    comps = tuple(tuple(r) for r in runs if r)
    return AngleSequence(tuple(sorted(comps)), cyclic=False)


def _end_face_vertices(c: TileComplex):
    blocks = [block(a) for a in c.word]
    first = blocks[0]
    last = blocks[-1]
    for pose, flag in (
        (c.poses[0], first.f_minus),
        (c.poses[-1], last.f_plus),
    ):
        t, i = flag
        a, b = _SIDE_VERTICES[i]
        placed = imat_mul(pose, t)
        yield _canon_point(imat_apply(placed, a))
        yield _canon_point(imat_apply(placed, b))


def iso_check(s1: AngleSequence, s2: AngleSequence) -> bool:
    """True iff the sequences agree up to shift or mirror (per component)."""
    if s1.cyclic != s2.cyclic:
        return False
    if s1.cyclic:
        a = _min_rotation(s1.entries())
        b = _min_rotation(s2.entries())
        return a == b or a == _min_rotation(tuple(reversed(s2.entries())))
    a = tuple(sorted(s1.components))
    b = tuple(sorted(s2.components))
    bm = tuple(sorted(tuple(reversed(comp)) for comp in s2.components))
    return a == b or a == bm


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------


@dataclass
class Block:
    """A named building block with optional distinguished gluing faces."""

    kind: str
    complex: TileComplex
    f_plus: Optional[Flag] = None
    f_minus: Optional[Flag] = None

    @property
    def tile_count(self) -> int:
        return self.complex.tile_count

    @property
    def tiles(self) -> tuple[IMat, ...]:
        return self.complex.tiles


def _alternating(first: int, second: int, length: int) -> IMat:
    m = IDENT
    for k in range(length):
        m = imat_mul(m, SIGMA[first if k % 2 == 0 else second])
    return m


_OCT_TILES = tuple(sorted(set(_alternating(1, 2, k) for k in range(8))))
_HALF_TILES = tuple(sorted(_alternating(1, 2, k) for k in range(4)))


def build_triangle() -> Block:
    return Block("T", TileComplex((IDENT,)))


@lru_cache(maxsize=None)
def _octagon_walk_sides() -> list[Flag]:
    """The octagon's 8 boundary sides in walk order, starting at (identity, 3)."""
    c = TileComplex(_OCT_TILES)
    walk = c.boundary()
    k = walk.edges.index((IDENT, 3))
    return walk.edges[k:] + walk.edges[:k]


@lru_cache(maxsize=None)
def build_octagon() -> Block:
    c = TileComplex(_OCT_TILES)
    if c.tile_count != 8:
        raise ConstructionError("octagon does not have 8 tiles")
    if any(s != 2 for s in c.boundary().stars):
        raise ConstructionError("octagon boundary angles are not all pi/2")
    sides = _octagon_walk_sides()
    return Block("O", c, f_plus=sides[2], f_minus=sides[6])


@lru_cache(maxsize=None)
def build_half_octagon() -> Block:
    c = TileComplex(_HALF_TILES)
    if c.tile_count != 4:
        raise ConstructionError("half-octagon does not have 4 tiles")
    stars = c.boundary().stars
    if sorted(stars) != [1, 1, 2, 2, 2, 4]:
        raise ConstructionError("half-octagon angle pattern unexpected: %r" % stars)
    return Block("Q", c)


def _outside_tile(flag: Flag) -> IMat:
    t, i = flag
    return imat_mul(t, SIGMA[i])


def _wall_reflection(flag: Flag) -> IMat:
    t, i = flag
    return imat_mul(imat_mul(t, SIGMA[i]), imat_inv(t))


@lru_cache(maxsize=None)
def build_phat2() -> Block:
    """The 28-tile block: octagon + half-octagon + two octagons.

    The half-octagon's middle side (the one between two right angles) is
    glued onto one octagon side; two further octagons go onto the unique
    pair of opposite octagon sides disjoint from the half-octagon.  Every
    property this block must have is verified here.
    """
    oct_block = build_octagon()
    sides = _octagon_walk_sides()
    s0, s2, s6 = sides[0], sides[2], sides[6]

    q = build_half_octagon()
    qwalk = q.complex.boundary()
    # middle sides: both endpoint angles pi/2
    mids = []
    nq = len(qwalk.vertices)
    for i, e in enumerate(qwalk.edges):
        if qwalk.stars[i] == 2 and qwalk.stars[(i + 1) % nq] == 2:
            mids.append(e)
    if len(mids) != 2:
        raise ConstructionError("half-octagon does not have two middle sides")
    t_mid, i_mid = min(mids)
    if i_mid != 3:
        raise ConstructionError("half-octagon middle side is not an outer side")

    pose_q = imat_mul(_outside_tile(s0), imat_inv(t_mid))
    q_tiles = [canonical_tile(imat_mul(pose_q, t)) for t in q.tiles]

    rho2 = _wall_reflection(s2)
    rho6 = _wall_reflection(s6)
    oct2 = [canonical_tile(imat_mul(rho2, t)) for t in oct_block.tiles]
    oct6 = [canonical_tile(imat_mul(rho6, t)) for t in oct_block.tiles]

    tiles = list(oct_block.tiles) + q_tiles + oct2 + oct6
    if len(set(tiles)) != 28:
        raise ConstructionError("P2 block tiles overlap")
    c = TileComplex(tuple(tiles))

    f_plus = (canonical_tile(imat_mul(rho2, s6[0])), 3)
    f_minus = (canonical_tile(imat_mul(rho6, s2[0])), 3)
    blk = Block("P2", c, f_plus=f_plus, f_minus=f_minus)

    stars = c.boundary().stars
    if sum(1 for s in stars if s == 1) != 2:
        raise ConstructionError("P2 block must have exactly two pi/4 vertices")
    for flag in (f_plus, f_minus):
        if flag not in c.boundary_flags():
            raise ConstructionError("P2 distinguished face is not on the boundary")
        _require_face_between_right_angles(c, flag)
    if len(self_isometries(c)) != 1:
        raise ConstructionError("P2 block has a nontrivial self-isometry")
    return blk


def _require_face_between_right_angles(c: TileComplex, flag: Flag) -> None:
    walk = c.boundary()
    i = walk.edges.index(flag)
    n = len(walk.vertices)
    if walk.stars[i] != 2 or walk.stars[(i + 1) % n] != 2:
        raise ConstructionError("gluing face endpoints are not right angles")


def block(kind: int) -> Block:
    if kind == 1:
        return build_octagon()
    if kind == 2:
        return build_phat2()
    raise ValueError("block kind must be 1 or 2")


BLOCK_TILE_COUNTS = {1: 8, 2: 28}


def build_block_by_name(name: str) -> Block:
    name = name.upper()
    if name == "T":
        return build_triangle()
    if name == "O":
        return build_octagon()
    if name == "Q":
        return build_half_octagon()
    if name in ("P1", "P̂1"):
        return build_octagon()
    if name in ("P2", "P̂2"):
        return build_phat2()
    raise ValueError("unknown block kind %r" % name)


# ---------------------------------------------------------------------------
# Gluing
# ---------------------------------------------------------------------------


#: The tile symmetry swapping walls 1 and 2 (fixes the type-3 side setwise).
_SWAP12 = next(
    p
    for p in TILE_SYMMETRIES
    if imat_apply(p, BASIS[0]) == BASIS[1]
    and imat_apply(p, BASIS[1]) == BASIS[0]
    and imat_apply(p, BASIS[2]) == BASIS[2]
)


@lru_cache(maxsize=65536)
def glue_blocks(word: tuple[int, ...]) -> TileComplex:
    """Glue blocks along their distinguished faces, left to right.

    Block i+1 is placed so its F- face covers block i's F+ face from the
    outside, by the orientation-preserving alignment (determinant +1): all
    blocks keep the same handedness along the spine, which is what makes
    the angle counts between consecutive (4,4) segments affine in the number
    of intervening octagons.  Tile overlap raises ConstructionError.
    """
    if not word:
        raise ValueError("gluing word must be nonempty")
    if any(a not in (1, 2) for a in word):
        raise ValueError("gluing word entries must be 1 or 2")
    poses = [IDENT]
    for i in range(len(word) - 1):
        cur = block(word[i])
        nxt = block(word[i + 1])
        t_plus, i_plus = cur.f_plus
        t_minus, i_minus = nxt.f_minus
        if i_plus != i_minus or i_plus != 3:
            raise ConstructionError("gluing faces have mismatched wall types")
        step = imat_mul(imat_mul(t_plus, SIGMA[i_plus]), imat_inv(t_minus))
        if imat_det(step) != (1, 0):
            step = imat_mul(
                imat_mul(imat_mul(t_plus, SIGMA[i_plus]), _SWAP12), imat_inv(t_minus)
            )
        poses.append(imat_mul(poses[-1], step))
    tiles: list[IMat] = []
    block_of: dict[IMat, int] = {}
    for bi, a in enumerate(word):
        blk = block(a)
        for t in blk.tiles:
            placed = canonical_tile(imat_mul(poses[bi], t))
            if placed in block_of:
                raise ConstructionError(
                    "tile overlap between blocks %d and %d" % (block_of[placed], bi)
                )
            block_of[placed] = bi
            tiles.append(placed)
    return TileComplex(tuple(tiles), block_of, tuple(word), tuple(poses))


# ---------------------------------------------------------------------------
# Self-isometries
# ---------------------------------------------------------------------------


def self_isometries(c: TileComplex) -> list[IMat]:
    """All isometries of the plane mapping the tile set onto itself.

    Candidates are pinned by one boundary flag-to-flag match (two wall
    permutations each), then verified tile by tile, exactly.
    """
    flags = sorted(c.boundary_flags())
    g0, i0 = flags[0]
    g0_inv = imat_inv(g0)
    out = []
    seen = set()
    for g, i in flags:
        for perm in TILE_SYMMETRIES:
            # perm must carry wall i0 to wall i
            if imat_apply(perm, BASIS[i0 - 1]) != BASIS[i - 1]:
                continue
            cand = imat_mul(imat_mul(g, perm), g0_inv)
            if cand in seen:
                continue
            seen.add(cand)
            if _maps_tiles(cand, c):
                out.append(cand)
    return sorted(out)


def _maps_tiles(phi: IMat, c: TileComplex) -> bool:
    for t in c.tiles:
        try:
            if canonical_tile(imat_mul(phi, t)) not in c:
                return False
        except ValueError:
            return False
    return True


def window_shift_isometries(c: TileComplex) -> list[tuple[int, IMat]]:
    """Partial self-isometries of a window matching a block shift.

    For each 0 < p < n with word[i] == word[i+p] on the overlap, the
    isometry aligning block 0 on block p is verified to map the tiles of
    block j onto those of block j+p for every applicable j.  These are the
    finite-window shadow of the self-isometries of the infinite polygon.
    """
    if c.word is None:
        raise ValueError("needs a glued complex")
    n = len(c.word)
    found = []
    for p in range(1, n):
        if any(c.word[i] != c.word[i + p] for i in range(n - p)):
            continue
        phi = imat_mul(c.poses[p], imat_inv(c.poses[0]))
        ok = True
        for j in range(n - p):
            src = block(c.word[j]).tiles
            for t in src:
                placed = imat_mul(c.poses[j], t)
                target = canonical_tile(imat_mul(phi, placed))
                if c.block_of.get(target) != j + p:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append((p, phi))
    return found


# ---------------------------------------------------------------------------
# Reconstruction of the gluing word from an angle sequence
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _calibrate_counts() -> tuple[int, int, int, int, int]:
    """Fit the counting constants from short gluings by brute force.

    Returns (alpha, beta, c1, c2, c0) with: the number of pi/2 entries
    between consecutive (4,4) segments along the spine equal to
    alpha*k + beta for k intervening octagons, and total entry count
    c1*n1 + c2*n2 + c0.
    """
    def entries(word):
        return angle_sequence(glue_blocks(word)).entries()

    def gap(word):
        # two (4,4) segments; the spine gap is the smaller of the two runs
        seq = entries(word)
        return min(_gap_lengths(seq, _four_pairs(seq)))

    g0 = gap((2, 2))
    g1 = gap((2, 1, 2))
    g2 = gap((2, 1, 1, 2))
    alpha = g1 - g0
    beta = g0
    if g2 != 2 * alpha + beta:
        raise ConstructionError("gap counts are not affine in the octagon count")
    e1 = len(entries((1,)))
    e11 = len(entries((1, 1)))
    e2 = len(entries((2,)))
    c1 = e11 - e1
    c0 = e1 - c1
    c2 = e2 - c0
    for w, n1, n2 in (((1, 2), 1, 1), ((2, 1, 2), 1, 2), ((1, 1, 1), 3, 0)):
        if len(entries(w)) != c1 * n1 + c2 * n2 + c0:
            raise ConstructionError("entry count is not affine in block counts")
    return alpha, beta, c1, c2, c0


def _four_pairs(seq: tuple[int, ...]) -> list[tuple[int, int]]:
    n = len(seq)
    fours = [i for i in range(n) if seq[i] == 4]
    if len(fours) % 2:
        raise RecognitionError("odd number of pi/4 entries")
    pairs = []
    used = set()
    for i in fours:
        if i in used:
            continue
        j = (i + 1) % n
        if seq[j] != 4 or j in used:
            raise RecognitionError("pi/4 entries do not pair up adjacently")
        used.add(i)
        used.add(j)
        pairs.append((i, j))
    return pairs


def _gap_lengths(seq: tuple[int, ...], pairs: list[tuple[int, int]]) -> list[int]:
    """Counts of pi/2 entries between consecutive (4,4) segments, cyclically."""
    n = len(seq)
    starts = sorted(p[0] for p in pairs)
    gaps = []
    for a, b in zip(starts, starts[1:] + [starts[0] + n]):
        count = 0
        for k in range(a + 2, b):
            if seq[k % n] != 2:
                raise RecognitionError("unexpected entry inside a gap")
            count += 1
        gaps.append(count)
    return gaps


def reconstruct_word(s: AngleSequence) -> tuple[int, ...]:
    """Invert angle_sequence . glue_blocks, up to the shift ambiguity.

    Parses the (4,4) segments and the calibrated gap counts into candidate
    words, then verifies the exact sequence equality before returning.  All
    words consistent with a given sequence are cyclic shifts of each other.
    """
    if not s.cyclic or len(s.components) != 1:
        raise RecognitionError("reconstruction needs a single cyclic component")
    seq = s.entries()
    alpha, beta, c1, c2, c0 = _calibrate_counts()
    if any(e not in (2, 4) for e in seq):
        raise RecognitionError("entries must be 2 or 4")
    if 4 not in seq:
        n1, rem = divmod(len(seq) - c0, c1)
        if rem or n1 < 1:
            raise RecognitionError("length not realizable by an all-octagon word")
        word = (1,) * n1
        if angle_sequence(glue_blocks(word)).entries() != _min_rotation(seq):
            raise RecognitionError("sequence does not match its candidate word")
        return word
    pairs = _four_pairs(seq)
    n2 = len(pairs)
    n1, rem = divmod(len(seq) - c2 * n2 - c0, c1)
    if rem or n1 < 0:
        raise RecognitionError("entry count inconsistent with any word")
    gaps = _gap_lengths(seq, pairs)
    target = _min_rotation(seq)
    tried = set()
    for wrap in range(n2):
        interior = gaps[wrap + 1 :] + gaps[:wrap]  # all but the wrap gap
        ks = []
        ok = True
        for g in interior:
            k, r = divmod(g - beta, alpha)
            if r or k < 0:
                ok = False
                break
            ks.append(k)
        if not ok or sum(ks) > n1:
            continue
        spare = n1 - sum(ks)
        for lead in range(spare + 1):
            word = [1] * lead + [2]
            for k in ks:
                word += [1] * k + [2]
            word += [1] * (spare - lead)
            wt = tuple(word)
            if wt in tried:
                continue
            tried.add(wt)
            if angle_sequence(glue_blocks(wt)).entries() == target:
                return wt
    raise RecognitionError("sequence is not the angle sequence of any gluing word")


def save_complex(c: TileComplex, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(c.to_json(), fh, separators=(",", ":"))
        fh.write("\n")
