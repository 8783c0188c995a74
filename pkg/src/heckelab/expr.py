"""Formal noncommutative expressions with pluggable interpretations.

Atoms are opaque labels; an interpreter decides how an atom acts on a value
from the left. Evaluating ``x`` on ``z`` computes ``x * z``, rightmost
factor first.

>>> a, b = Atom("a", ()), Atom("b", ())
>>> str(2 * a * b - b)
'(1)*((2)*a*b) + (-1)*b'
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Expr", "Atom", "Sum", "Prod", "ONE", "apply_expr", "atoms_of"]


class Expr:
    """Base class; subclasses are frozen dataclasses."""

    def __add__(self, other):
        other = _lift(other)
        return Sum(_terms(self) + _terms(other))

    def __radd__(self, other):
        return _lift(other) + self

    def __neg__(self):
        return Sum(tuple((-c, x) for c, x in _terms(self)))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Expr):
            return Prod(_factors(self) + _factors(other))
        return Sum(tuple((c * other, x) for c, x in _terms(self)))

    def __rmul__(self, other):
        return Sum(tuple((other * c, x) for c, x in _terms(self)))


@dataclass(frozen=True)
class Atom(Expr):
    kind: str
    args: tuple

    def __str__(self):
        if not self.args:
            return self.kind
        return "%s%s" % (self.kind, self.args)


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple  # of (coefficient, Expr)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*%s" % (c, x) for c, x in self.terms)


@dataclass(frozen=True)
class Prod(Expr):
    factors: tuple

    def __str__(self):
        if not self.factors:
            return "1"
        return "(" + "*".join(str(f) for f in self.factors) + ")"


ONE = Prod(())


def _lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Sum(((x, ONE),))


def _terms(x: Expr) -> tuple:
    if isinstance(x, Sum):
        return x.terms
    return ((1, x),)


def _factors(x: Expr) -> tuple:
    if isinstance(x, Prod):
        return x.factors
    return (x,)


def apply_expr(x: Expr, z, act_atom):
    """Compute ``x * z`` where ``act_atom(atom, z)`` applies one atom."""
    if isinstance(x, Atom):
        return act_atom(x, z)
    if isinstance(x, Prod):
        for f in reversed(x.factors):
            z = apply_expr(f, z, act_atom)
        return z
    acc = None
    for c, t in x.terms:
        v = apply_expr(t, z, act_atom) * c
        acc = v if acc is None else acc + v
    return z * 0 if acc is None else acc


def atoms_of(x: Expr) -> set:
    if isinstance(x, Atom):
        return {x}
    if isinstance(x, Prod):
        return set().union(*(atoms_of(f) for f in x.factors)) if x.factors else set()
    return set().union(*(atoms_of(t) for _, t in x.terms)) if x.terms else set()
