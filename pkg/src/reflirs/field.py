"""Exact arithmetic in Q(sqrt2) and the Lorentzian form of the (4,4,4) triangle.

All group-theoretic equality decisions in this package route through the
exact types here; floating point is only produced by :func:`QSqrt2.to_float`
for rendering and statistics.

Two representations coexist:

* :class:`QSqrt2` holds a value ``a + b*sqrt(2)`` with ``Fraction``
  components.  It is the public, serializable face of the field.
* Hot paths (matrix products, form evaluations, folding loops) work on flat
  tuples of Python ints: a vector is ``(a1, b1, a2, b2, a3, b3)`` and a 3x3
  matrix is the analogous 18-tuple, all entries living in Z[sqrt2].  Every
  isometry of the tiling and every vertex/normal vector we manipulate is
  integral in this sense, so the tuple kernels never need denominators.

The bilinear form is the Gram form of the hyperbolic triangle with three
angles pi/4: ``G_ii = 1`` and ``G_ij = -sqrt(2)/2`` off the diagonal, of
signature (2,1).  The integer kernels use the doubled form ``2*G`` so that
evaluations of integral vectors stay in Z[sqrt2].
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

SQRT2 = math.sqrt(2.0)

Rational = Fraction


class QSqrt2:
    """An element a + b*sqrt(2) of the real quadratic field Q(sqrt2).

    Components are kept as canonical :class:`fractions.Fraction` values, so
    representation is unique and hashing/equality are exact.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt2 is immutable")

    # -- ring/field operations -------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt2(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt2":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        n = self.a * self.a - 2 * self.b * self.b  # field norm a^2 - 2 b^2
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(2)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0:
            return sb
        if sb == 0 or sa == sb:
            return sa
        # a and b have opposite signs: compare a^2 with 2 b^2.
        cmp = self.a * self.a - 2 * self.b * self.b
        if cmp == 0:
            return 0  # unreachable for nonzero rationals; kept for totality
        return sa if cmp > 0 else sb

    def __lt__(self, other):
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce(other)).sign() >= 0

    # -- output -----------------------------------------------------------

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * SQRT2

    __float__ = to_float

    def serialize(self) -> str:
        """Canonical string ``p/q+r/s*sqrt2`` (sign carried by numerators)."""
        return "%d/%d%+d/%d*sqrt2" % (
            self.a.numerator,
            self.a.denominator,
            self.b.numerator,
            self.b.denominator,
        )

    @staticmethod
    def parse(s: str) -> "QSqrt2":
        body, _, tail = s.partition("*")
        if tail != "sqrt2":
            raise ValueError("malformed QSqrt2 string: %r" % s)
        # split "p/q+r/s" at the sign of the second numerator
        k = max(body.rfind("+", 1), body.rfind("-", 1))
        return QSqrt2(Fraction(body[:k]), Fraction(body[k:]))

    def __repr__(self):
        return "QSqrt2(%s, %s)" % (self.a, self.b)

    def __str__(self):
        return self.serialize()


def _coerce(x):
    if isinstance(x, QSqrt2):
        return x
    if isinstance(x, (int, Fraction)):
        return QSqrt2(x)
    return NotImplemented


ZERO = QSqrt2(0)
ONE = QSqrt2(1)
SQRT2_EXACT = QSqrt2(0, 1)


def sign(x: QSqrt2) -> int:
    return x.sign()


# ---------------------------------------------------------------------------
# Gram form of the (4,4,4) triangle.
# ---------------------------------------------------------------------------

#: Gram matrix entries: 1 on the diagonal, -sqrt(2)/2 = -cos(pi/4) elsewhere.
GRAM = tuple(
    tuple(ONE if i == j else QSqrt2(0, Fraction(-1, 2)) for j in range(3))
    for i in range(3)
)

Vec3 = tuple  # 3 QSqrt2 entries
Mat3 = tuple  # 3 rows of 3 QSqrt2 entries


def form_eval(x: Iterable[QSqrt2], y: Iterable[QSqrt2]) -> QSqrt2:
    """Evaluate the Gram bilinear form B(x, y) on QSqrt2 triples."""
    x = tuple(x)
    y = tuple(y)
    total = ZERO
    for i in range(3):
        for j in range(3):
            total = total + x[i] * GRAM[i][j] * y[j]
    return total


def gram_signature_floats() -> list[float]:
    """Float eigenvalues of the Gram matrix (startup signature check)."""
    import numpy as np

    g = np.array([[e.to_float() for e in row] for row in GRAM])
    return sorted(np.linalg.eigvalsh(g))


def check_gram_signature() -> None:
    """Assert signature (2,1): exactly one negative eigenvalue."""
    ev = gram_signature_floats()
    neg = [e for e in ev if e < 0]
    pos = [e for e in ev if e > 0]
    if len(neg) != 1 or len(pos) != 2:
        raise AssertionError("Gram form does not have signature (2,1): %r" % ev)
    # eigenvalues are 1 - sqrt2 (simple) and 1 + sqrt2/2 (double)
    if abs(ev[0] - (1 - SQRT2)) > 1e-12 or abs(ev[1] - (1 + SQRT2 / 2)) > 1e-12:
        raise AssertionError("unexpected Gram eigenvalues: %r" % ev)


# ---------------------------------------------------------------------------
# Integer kernels over Z[sqrt2].
#
# ivec: (a1, b1, a2, b2, a3, b3); imat: 18-tuple, rows concatenated.
# These are deliberately plain tuples: hashable, picklable, fast to compare.
# ---------------------------------------------------------------------------

IVec = tuple
IMat = tuple

IDENT: IMat = (1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0)


def imat_mul(m: IMat, n: IMat) -> IMat:
    out = []
    for r in range(0, 18, 6):
        m0, m1, m2, m3, m4, m5 = m[r : r + 6]
        for c in range(0, 6, 2):
            n0, n1 = n[c], n[c + 1]
            n2, n3 = n[c + 6], n[c + 7]
            n4, n5 = n[c + 12], n[c + 13]
            a = m0 * n0 + 2 * m1 * n1 + m2 * n2 + 2 * m3 * n3 + m4 * n4 + 2 * m5 * n5
            b = m0 * n1 + m1 * n0 + m2 * n3 + m3 * n2 + m4 * n5 + m5 * n4
            out.append(a)
            out.append(b)
    return tuple(out)


def imat_apply(m: IMat, v: IVec) -> IVec:
    v0, v1, v2, v3, v4, v5 = v
    out = []
    for r in range(0, 18, 6):
        m0, m1, m2, m3, m4, m5 = m[r : r + 6]
        a = m0 * v0 + 2 * m1 * v1 + m2 * v2 + 2 * m3 * v3 + m4 * v4 + 2 * m5 * v5
        b = m0 * v1 + m1 * v0 + m2 * v3 + m3 * v2 + m4 * v5 + m5 * v4
        out.append(a)
        out.append(b)
    return tuple(out)


def _entry(m: IMat, i: int, j: int) -> tuple[int, int]:
    k = 6 * i + 2 * j
    return (m[k], m[k + 1])


def _zmul(x, y):
    return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _zsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _zadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def imat_det(m: IMat) -> tuple[int, int]:
    a, b, c = _entry(m, 0, 0), _entry(m, 0, 1), _entry(m, 0, 2)
    d, e, f = _entry(m, 1, 0), _entry(m, 1, 1), _entry(m, 1, 2)
    g, h, i = _entry(m, 2, 0), _entry(m, 2, 1), _entry(m, 2, 2)
    t1 = _zmul(a, _zsub(_zmul(e, i), _zmul(f, h)))
    t2 = _zmul(b, _zsub(_zmul(d, i), _zmul(f, g)))
    t3 = _zmul(c, _zsub(_zmul(d, h), _zmul(e, g)))
    return _zadd(_zsub(t1, t2), t3)


def imat_inv(m: IMat) -> IMat:
    """Inverse of an integral isometry matrix; requires det = +-1 in Z[sqrt2]."""
    det = imat_det(m)
    if det not in ((1, 0), (-1, 0)):
        raise ValueError("matrix determinant is not a unit +-1: %r" % (det,))
    s = det[0]
    rows = [[_entry(m, i, j) for j in range(3)] for i in range(3)]

    def cof(i, j):
        i1, i2 = [r for r in range(3) if r != i]
        j1, j2 = [c for c in range(3) if c != j]
        v = _zsub(_zmul(rows[i1][j1], rows[i2][j2]), _zmul(rows[i1][j2], rows[i2][j1]))
        if (i + j) % 2:
            v = (-v[0], -v[1])
        return v

    out = []
    for i in range(3):
        for j in range(3):
            v = cof(j, i)  # adjugate = transposed cofactors
            out.append(s * v[0])
            out.append(s * v[1])
    return tuple(out)


def b2(x: IVec, y: IVec) -> tuple[int, int]:
    """Doubled Gram form 2*B(x, y) on integral vectors: exact in Z[sqrt2].

    2*G has 2 on the diagonal and -sqrt2 off it, so
    2*B(x,y) = 2*sum(x_i y_i) - sqrt2 * (S_x S_y - sum(x_i y_i)).
    """
    x0, x1, x2, x3, x4, x5 = x
    y0, y1, y2, y3, y4, y5 = y
    # pairwise products of Z[sqrt2] coordinates
    da = x0 * y0 + 2 * x1 * y1 + x2 * y2 + 2 * x3 * y3 + x4 * y4 + 2 * x5 * y5
    db = x0 * y1 + x1 * y0 + x2 * y3 + x3 * y2 + x4 * y5 + x5 * y4
    sxa, sxb = x0 + x2 + x4, x1 + x3 + x5
    sya, syb = y0 + y2 + y4, y1 + y3 + y5
    pa = sxa * sya + 2 * sxb * syb
    pb = sxa * syb + sxb * sya
    # (pa, pb) - (da, db), multiplied by sqrt2: (a+b*sqrt2)*sqrt2 = 2b + a*sqrt2
    ra, rb = pa - da, pb - db
    return (2 * da - 2 * rb, 2 * db - ra)


def zsign(x: tuple[int, int]) -> int:
    """Exact sign of a + b*sqrt2 for integer a, b."""
    a, b = x
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0:
        return sb
    if sb == 0 or sa == sb:
        return sa
    cmp = a * a - 2 * b * b
    if cmp == 0:
        return 0
    return sa if cmp > 0 else sb


def zcmp_ratio(p: tuple[int, int], q: tuple[int, int], r: tuple[int, int], s: tuple[int, int]) -> int:
    """Sign of p/q - r/s for Z[sqrt2] values with q, s > 0."""
    return zsign(_zsub(_zmul(p, s), _zmul(r, q)))


def ivec_canon(v: IVec) -> IVec:
    """Projective canonical form: divide by integer content, orient sign.

    Two integral vectors represent the same projective point iff their
    canonical forms agree (rational scale between integral vectors reduces
    to an integer ratio after content division, up to sign).
    """
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g == 0:
        return v
    w = tuple(c // g for c in v)
    for c in w:
        if c != 0:
            return w if c > 0 else tuple(-x for x in w)
    return w


def imat_to_qmat(m: IMat) -> Mat3:
    return tuple(
        tuple(QSqrt2(m[6 * i + 2 * j], m[6 * i + 2 * j + 1]) for j in range(3))
        for i in range(3)
    )


def ivec_to_qvec(v: IVec) -> Vec3:
    return tuple(QSqrt2(v[2 * i], v[2 * i + 1]) for i in range(3))


def qvec_to_ivec(v: Iterable[QSqrt2]) -> IVec:
    out = []
    for e in v:
        if e.a.denominator != 1 or e.b.denominator != 1:
            raise ValueError("vector entry is not integral in Z[sqrt2]: %r" % e)
        out.append(e.a.numerator)
        out.append(e.b.numerator)
    return tuple(out)


def serialize_imat(m: IMat) -> list[list[str]]:
    return [[q.serialize() for q in row] for row in imat_to_qmat(m)]


def parse_imat(rows: list[list[str]]) -> IMat:
    out = []
    for row in rows:
        for s in row:
            q = QSqrt2.parse(s)
            if q.a.denominator != 1 or q.b.denominator != 1:
                raise ValueError("matrix entry is not integral: %r" % s)
            out.append(q.a.numerator)
            out.append(q.b.numerator)
    return tuple(out)
