"""Shift-invariant measures on {1,2}^Z, reweighting, and window sampling.

Measures come in three sampled variants (Bernoulli, two-state Markov,
periodic) plus the periodic approximants used by the weak-limit check.
Reweighting multiplies the density at a sequence by the tile count of its
coordinate-zero block; sampling draws the center symbol from the reweighted
marginal and extends by the base measure's conditional law, which is exact
(no rejection).  A rejection sampler is kept alongside as a cross-check
oracle.

Probabilities are exact rationals end to end; floats appear only at the
random-draw boundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np


def philox_stream(seed: int, index: int) -> np.random.Generator:
    """Counter-based per-sample stream: independent of scheduling order."""
    key = np.array([seed % (1 << 64), index % (1 << 64)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _draw(rng: np.random.Generator, p_one: Fraction) -> int:
    """Return symbol 1 with probability p_one, else 2."""
    return 1 if rng.random() < float(p_one) else 2


@dataclass(frozen=True)
class Bernoulli:
    p: Fraction  # probability of symbol 1

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError("Bernoulli parameter out of range")

    def t(self) -> Fraction:
        return Fraction(self.p)

    def spec(self) -> str:
        return "bernoulli:%s" % self.p


@dataclass(frozen=True)
class Markov:
    """Two-state chain on symbols (1, 2); rows[i][j] = P(next=j+1 | cur=i+1)."""

    rows: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    def __post_init__(self):
        for row in self.rows:
            if sum(row) != 1 or any(x < 0 for x in row):
                raise ValueError("Markov rows must be probability vectors")

    def stationary(self) -> tuple[Fraction, Fraction]:
        b = self.rows[0][1]  # 1 -> 2
        c = self.rows[1][0]  # 2 -> 1
        if b + c == 0:
            raise ValueError("reducible chain has no unique stationary vector")
        return (c / (b + c), b / (b + c))

    def reversed_rows(self):
        pi = self.stationary()
        out = []
        for cur in range(2):
            row = []
            for prev in range(2):
                row.append(pi[prev] * self.rows[prev][cur] / pi[cur])
            out.append(tuple(row))
        return tuple(out)

    def t(self) -> Fraction:
        return self.stationary()[0]

    def spec(self) -> str:
        return "markov:%s,%s;%s,%s" % (
            self.rows[0][0],
            self.rows[0][1],
            self.rows[1][0],
            self.rows[1][1],
        )


@dataclass(frozen=True)
class Periodic:
    word: tuple[int, ...]

    def __post_init__(self):
        if not self.word or any(a not in (1, 2) for a in self.word):
            raise ValueError("periodic word must be nonempty over {1,2}")

    def t(self) -> Fraction:
        return Fraction(sum(1 for a in self.word if a == 1), len(self.word))

    def spec(self) -> str:
        return "periodic:%s" % "".join(str(a) for a in self.word)


@dataclass(frozen=True)
class PeriodicApproximant:
    """Period-n approximant of a base measure: the n-cylinder law of the base
    spread over periodic orbits with uniform phase.  Agrees with the base on
    all cylinders of length <= n."""

    base: object
    n: int

    def t(self) -> Fraction:
        total = Fraction(0)
        for b in itertools.product((1, 2), repeat=self.n):
            total += cylinder_probability(self.base, b) * Periodic(b).t()
        return total

    def spec(self) -> str:
        return "approx%d:%s" % (self.n, self.base.spec())


ShiftMeasure = (Bernoulli, Markov, Periodic, PeriodicApproximant)


def t_nu(m) -> Fraction:
    """Marginal probability of symbol 1 at coordinate zero."""
    return m.t()


def cylinder_probability(m, word: Sequence[int]) -> Fraction:
    """Probability of seeing ``word`` at consecutive coordinates."""
    if isinstance(m, Bernoulli):
        p = Fraction(1)
        for a in word:
            p *= m.p if a == 1 else (1 - m.p)
        return p
    if isinstance(m, Markov):
        pi = m.stationary()
        p = pi[word[0] - 1]
        for a, b in zip(word, word[1:]):
            p *= m.rows[a - 1][b - 1]
        return p
    if isinstance(m, Periodic):
        L = len(m.word)
        hits = sum(
            1
            for r in range(L)
            if all(m.word[(r + i) % L] == a for i, a in enumerate(word))
        )
        return Fraction(hits, L)
    if isinstance(m, PeriodicApproximant):
        total = Fraction(0)
        for b in itertools.product((1, 2), repeat=m.n):
            total += cylinder_probability(m.base, b) * cylinder_probability(
                Periodic(b), word
            )
        return total
    raise TypeError("not a shift measure: %r" % (m,))


@dataclass(frozen=True)
class ReweightedMeasure:
    """nu' with density n_{a_0} / (t n1 + (1-t) n2) relative to the base."""

    base: object
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("weights must be positive integers")

    def t_base(self) -> Fraction:
        return t_nu(self.base)

    def marginal_one(self) -> Fraction:
        """P(a_0 = 1) after reweighting."""
        t = self.t_base()
        return t * self.n1 / (t * self.n1 + (1 - t) * self.n2)

    def weight(self, symbol: int) -> int:
        return self.n1 if symbol == 1 else self.n2

    def spec(self) -> str:
        return "reweight(%d,%d):%s" % (self.n1, self.n2, self.base.spec())


def reweight(m, n1: int, n2: int) -> ReweightedMeasure:
    return ReweightedMeasure(m, n1, n2)


# ---------------------------------------------------------------------------
# Window sampling
# ---------------------------------------------------------------------------


def sample_window(m: ReweightedMeasure, k: int, rng: np.random.Generator):
    """Draw a[-k..k] from the reweighted measure, exactly.

    The center symbol follows the reweighted marginal; the rest follows the
    base measure's conditional law given a_0 (iid for Bernoulli, forward and
    time-reversed chains for Markov, a rotation for periodic variants).
    """
    if k < 0:
        raise ValueError("window radius must be >= 0")
    base = m.base
    if isinstance(base, Bernoulli):
        a0 = _draw(rng, m.marginal_one())
        left = [_draw(rng, base.p) for _ in range(k)]
        right = [_draw(rng, base.p) for _ in range(k)]
        return tuple(left[::-1] + [a0] + right)
    if isinstance(base, Markov):
        a0 = _draw(rng, m.marginal_one())
        fwd = base.rows
        bwd = base.reversed_rows()
        right = []
        cur = a0
        for _ in range(k):
            cur = _draw(rng, fwd[cur - 1][0])
            right.append(cur)
        left = []
        cur = a0
        for _ in range(k):
            cur = _draw(rng, bwd[cur - 1][0])
            left.append(cur)
        return tuple(left[::-1] + [a0] + right)
    if isinstance(base, Periodic):
        word = base.word
        L = len(word)
        weights = [m.weight(word[r]) for r in range(L)]
        r = _weighted_index(rng, weights)
        return tuple(word[(r + i) % L] for i in range(-k, k + 1))
    if isinstance(base, PeriodicApproximant):
        pairs = []
        weights = []
        for b in itertools.product((1, 2), repeat=base.n):
            pb = cylinder_probability(base.base, b)
            if pb == 0:
                continue
            for r in range(base.n):
                pairs.append((b, r))
                weights.append(pb * m.weight(b[r]))
        idx = _weighted_index(rng, weights)
        b, r = pairs[idx]
        return tuple(b[(r + i) % base.n] for i in range(-k, k + 1))
    raise TypeError("unsupported base measure: %r" % (base,))


def sample_window_rejection(m: ReweightedMeasure, k: int, rng: np.random.Generator):
    """Rejection-sampling oracle for the same law: accept with n_{a_0}/max."""
    cap = max(m.n1, m.n2)
    while True:
        flat = ReweightedMeasure(m.base, 1, 1)
        w = sample_window(flat, k, rng)
        if rng.random() < m.weight(w[k]) / cap:
            return w


def _weighted_index(rng: np.random.Generator, weights) -> int:
    total = sum(weights)
    u = rng.random() * float(total)
    acc = 0.0
    for i, w in enumerate(weights):
        acc += float(w)
        if u < acc:
            return i
    return len(weights) - 1


# ---------------------------------------------------------------------------
# Word utilities and parsing
# ---------------------------------------------------------------------------


def shift_equivalent(w1: Sequence[int], w2: Sequence[int]) -> bool:
    """Cyclic-rotation equality of finite words."""
    w1, w2 = tuple(w1), tuple(w2)
    if len(w1) != len(w2):
        return False
    return any(w2 == w1[i:] + w1[:i] for i in range(len(w1)))


def is_periodic(w: Sequence[int]) -> Optional[int]:
    """Minimal period p < len(w) of the cyclic word, or None if aperiodic."""
    w = tuple(w)
    n = len(w)
    for p in range(1, n):
        if n % p == 0 and w == w[p:] + w[:p]:
            return p
    return None


def parse_measure(spec: str):
    """Parse "bernoulli:0.5", "markov:a,b;c,d" or "periodic:1121"."""
    kind, _, body = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "bernoulli":
        return Bernoulli(_fraction(body))
    if kind == "markov":
        rows = []
        for part in body.split(";"):
            a, b = part.split(",")
            rows.append((_fraction(a), _fraction(b)))
        if len(rows) != 2:
            raise ValueError("markov spec needs two rows")
        return Markov((rows[0], rows[1]))
    if kind == "periodic":
        return Periodic(tuple(int(ch) for ch in body.strip()))
    raise ValueError("unknown measure spec %r" % spec)


def _fraction(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        return Fraction(s)
    return Fraction(s).limit_denominator(10**12) if "." in s else Fraction(s)
