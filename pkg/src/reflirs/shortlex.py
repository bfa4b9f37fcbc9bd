"""Symbolic ShortLex normal forms for the (4,4,4) triangle group.

This module is the independent word-problem oracle: it never touches the
matrix representation.  It relies on Tits' solution of the word problem for
Coxeter groups: every word can be brought to reduced form using braid moves
(here ``ijij -> jiji`` for distinct generators, since all m_ij = 4) plus
deletion of adjacent equal letters, and two reduced words represent the same
element iff they are connected by braid moves alone.

The normal form of an element is the ShortLex-least member of the braid
class of any reduced word for it.
"""

from __future__ import annotations

from typing import Iterable

GENS = "123"


def braid_class(word: str, memo: dict | None = None) -> frozenset[str]:
    """All words obtainable from ``word`` by braid moves (no length change)."""
    seen = {word}
    stack = [word]
    while stack:
        u = stack.pop()
        for p in range(len(u) - 3):
            a, b = u[p], u[p + 1]
            if a != b and u[p + 2] == a and u[p + 3] == b:
                v = u[:p] + b + a + b + a + u[p + 4 :]
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return frozenset(seen)


def normal_form(word: str, _memo: dict | None = None) -> str:
    """ShortLex normal form of the element spelled by ``word``."""
    memo = _memo if _memo is not None else {}
    return _nf(word, memo)


def _nf(word: str, memo: dict) -> str:
    hit = memo.get(word)
    if hit is not None:
        return hit
    if len(word) < 2:
        memo[word] = word
        return word
    # explore the braid class; stop at the first visible cancellation
    seen = {word}
    stack = [word]
    while stack:
        u = stack.pop()
        for p in range(len(u) - 1):
            if u[p] == u[p + 1]:
                nf = _nf(u[:p] + u[p + 2 :], memo)
                for w in seen:
                    memo[w] = nf
                memo[word] = nf
                return nf
        for p in range(len(u) - 3):
            a, b = u[p], u[p + 1]
            if a != b and u[p + 2] == a and u[p + 3] == b:
                v = u[:p] + b + a + b + a + u[p + 4 :]
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    # no cancellation anywhere in the class: word is reduced (Tits)
    nf = min(seen)
    for w in seen:
        memo[w] = nf
    return nf


def enumerate_normal_forms(max_len: int) -> list[list[str]]:
    """Normal forms of all elements of length <= max_len, grouped by length.

    Layer l+1 is built from layer l: a candidate w+s is a new element's
    normal form iff it is reduced and ShortLex-least in its braid class
    (normal forms are closed under taking prefixes).
    """
    memo: dict[str, str] = {}
    layers = [[""]]
    for _ in range(max_len):
        nxt = []
        for w in layers[-1]:
            for s in GENS:
                if w and w[-1] == s:
                    continue  # immediate cancellation
                v = w + s
                if _nf(v, memo) == v:
                    nxt.append(v)
        layers.append(sorted(nxt))
    return layers


def growth_layer_counts(max_len: int) -> list[int]:
    """Sphere sizes from the rational growth series (third, closed-form oracle).

    The Poincare series of the (4,4,4) Coxeter system is
    (1 + 2t + 2t^2 + 2t^3 + t^4) / (1 - t - t^2 - t^3 + t^4),
    giving a_n = a_{n-1} + a_{n-2} + a_{n-3} - a_{n-4} for n >= 5.
    """
    a = [1, 3, 6, 12, 21]
    while len(a) <= max_len:
        a.append(a[-1] + a[-2] + a[-3] - a[-4])
    return a[: max_len + 1]


def words_equal(w1: str, w2: str) -> bool:
    memo: dict[str, str] = {}
    return _nf(w1, memo) == _nf(w2, memo)


def is_reduced(word: str) -> bool:
    memo: dict[str, str] = {}
    return len(_nf(word, memo)) == len(word)


def check_layers_against(max_len: int, matrix_layers: Iterable[Iterable[str]]) -> None:
    """Element-for-element comparison with an enumeration by witness words."""
    sym = enumerate_normal_forms(max_len)
    for l, layer in enumerate(matrix_layers):
        if l > max_len:
            break
        got = sorted(layer)
        want = sym[l]
        if got != want:
            extra = set(got) - set(want)
            missing = set(want) - set(got)
            raise AssertionError(
                "layer %d mismatch: %d vs %d elements (extra=%s missing=%s)"
                % (l, len(got), len(want), sorted(extra)[:5], sorted(missing)[:5])
            )
