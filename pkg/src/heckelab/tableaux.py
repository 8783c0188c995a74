"""Multipartitions, standard tableaux and their residue sequences.

A standard tableau is recorded by the order in which its nodes are added,
so residue sequences come from walking addable nodes.

>>> sorted(tableau_residues(2, (0,), 3))
[(0, 1), (0, 2)]
>>> sorted(tableau_residues(2, (0,), 2))
[(0, 1)]
"""

from __future__ import annotations

from functools import lru_cache

__all__ = ["multipartitions", "standard_tableaux", "tableau_residues", "residue"]

Multipartition = tuple[tuple[int, ...], ...]


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def multipartitions(n: int, level: int) -> list[Multipartition]:
    """All ``level``-tuples of partitions with total size n."""
    if level == 0:
        return [()] if n == 0 else []
    out = []
    for k in range(n + 1):
        for head in _partitions(k):
            for tail in multipartitions(n - k, level - 1):
                out.append((head,) + tail)
    return out


def _addable(shape: Multipartition):
    for l, part in enumerate(shape):
        for r in range(len(part) + 1):
            row = part[r] if r < len(part) else 0
            above = part[r - 1] if r > 0 else None
            if above is None or above > row:
                yield l, r, row


def _add(shape: Multipartition, l: int, r: int) -> Multipartition:
    part = list(shape[l])
    if r == len(part):
        part.append(1)
    else:
        part[r] += 1
    return shape[:l] + (tuple(part),) + shape[l + 1:]


def residue(kappa: tuple[int, ...], l: int, r: int, c: int, e: int) -> int:
    """Residue of the node in row r, column c of component l (0-based)."""
    value = kappa[l] + c - r
    return value % e if e else value


def standard_tableaux(n: int, level: int):
    """Yield tableaux as tuples of nodes ``(l, r, c)`` in the order 1..n."""
    def walk(shape, path):
        if len(path) == n:
            yield tuple(path)
            return
        for l, r, c in _addable(shape):
            path.append((l, r, c))
            yield from walk(_add(shape, l, r), path)
            path.pop()

    yield from walk(tuple(() for _ in range(level)), [])


@lru_cache(maxsize=None)
def tableau_residues(n: int, kappa: tuple[int, ...], e: int) -> frozenset:
    """Residue sequences of all standard tableaux of shape an ``len(kappa)``-multipartition of n."""
    kappa = tuple(k % e if e else k for k in kappa)
    return frozenset(
        tuple(residue(kappa, l, r, c, e) for l, r, c in t)
        for t in standard_tableaux(n, len(kappa)))
