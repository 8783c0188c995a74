"""Permutations of ``range(n)`` in one-line notation.

Simple reflections are indexed from 1: ``s(r, n)`` swaps ``r-1`` and ``r``.
Composition is ``compose(w, v) = w o v`` (apply ``v`` first).

>>> w = compose(s(1, 3), s(2, 3))
>>> w, length(w), reduced_word(w)
((1, 2, 0), 2, (1, 2))
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

__all__ = [
    "Perm", "identity", "s", "compose", "inverse", "length", "reduced_word",
    "all_perms", "from_word", "is_left_descent", "act_on_seq",
]

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def s(r: int, n: int) -> Perm:
    w = list(range(n))
    w[r - 1], w[r] = w[r], w[r - 1]
    return tuple(w)


def compose(w: Perm, v: Perm) -> Perm:
    return tuple(w[v[k]] for k in range(len(v)))


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, x in enumerate(w):
        out[x] = k
    return tuple(out)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def is_left_descent(r: int, w: Perm) -> bool:
    """True when ``l(s_r w) < l(w)``: value ``r-1`` sits to the right of value ``r``."""
    pos = inverse(w)
    return pos[r - 1] > pos[r]


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """Lexicographically smallest reduced word ``(j1, ..., jk)`` with w = s_j1...s_jk."""
    word = []
    n = len(w)
    while True:
        j = next((r for r in range(1, n) if is_left_descent(r, w)), None)
        if j is None:
            return tuple(word)
        word.append(j)
        w = compose(s(j, n), w)


def from_word(word, n: int) -> Perm:
    w = identity(n)
    for j in word:
        w = compose(w, s(j, n))
    return w


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    """All of S_n sorted by length, then lexicographically."""
    return tuple(sorted(permutations(range(n)), key=lambda w: (length(w), w)))


def act_on_seq(w: Perm, seq: tuple) -> tuple:
    """``(w.i)_k = i_{w^-1(k)}``; for ``s_r`` this swaps entries r and r+1."""
    out = [None] * len(seq)
    for k, x in enumerate(seq):
        out[w[k]] = x
    return tuple(out)
