"""Laurent polynomials in ``t_1, ..., t_n`` with symmetric group action.

Terms are kept in a dict from exponent tuples to nonzero field elements.

>>> from heckelab.fields import FieldSpec
>>> F = FieldSpec.degenerate(0)
>>> t1, t2 = Poly.var(F, 2, 1), Poly.var(F, 2, 2)
>>> divided_difference(1, t1 * t1) == t1 + t2
True
>>> sym_act((1, 0), t1) == t2
True
"""

from __future__ import annotations

from .fields import FieldSpec

__all__ = ["Poly", "sym_act", "divided_difference"]


class Poly:
    __slots__ = ("F", "n", "terms")

    def __init__(self, F: FieldSpec, n: int, terms: dict | None = None):
        self.F = F
        self.n = n
        self.terms = {} if terms is None else {a: c for a, c in terms.items() if c}

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, F, n, c=1) -> "Poly":
        return cls(F, n, {(0,) * n: F(c)})

    @classmethod
    def monomial(cls, F, exps, c=1) -> "Poly":
        return cls(F, len(exps), {tuple(exps): F(c)})

    @classmethod
    def var(cls, F, n, k, power: int = 1) -> "Poly":
        """``t_k^power`` with k counted from 1."""
        a = [0] * n
        a[k - 1] = power
        return cls(F, n, {tuple(a): F.one})

    # -- ring operations ----------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(self.F, self.n, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            v = out.get(a)
            out[a] = c if v is None else v + c
        return Poly(self.F, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.F, self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.F(other)
            return Poly(self.F, self.n, {a: x * c for a, x in self.terms.items()})
        out: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = tuple(i + j for i, j in zip(a, b))
                v = out.get(k)
                out[k] = x * y if v is None else v + x * y
        return Poly(self.F, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (a, c), = self.terms.items()
            return Poly(self.F, self.n, {tuple(-x * (-k) for x in a): c ** k})
        out = Poly.const(self.F, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self._lift(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_laurent(self) -> bool:
        return any(x < 0 for a in self.terms for x in a)

    def max_degree(self) -> int:
        return max((max(a) for a in self.terms), default=0)

    def min_degree(self) -> int:
        return min((min(a) for a in self.terms), default=0)

    # -- symmetric group ----------------------------------------------

    def act(self, w) -> "Poly":
        """Substitute ``t_k -> t_{w(k)}``."""
        out = {}
        for a, c in self.terms.items():
            b = [0] * self.n
            for k, x in enumerate(a):
                b[w[k]] = x
            out[tuple(b)] = c
        return Poly(self.F, self.n, out)

    def swap(self, r: int) -> "Poly":
        out = {}
        for a, c in self.terms.items():
            b = list(a)
            b[r - 1], b[r] = b[r], b[r - 1]
            out[tuple(b)] = c
        return Poly(self.F, self.n, out)

    def delta(self, r: int) -> "Poly":
        """``(f - s_r f) / (t_{r+1} - t_r)``, computed monomial by monomial."""
        p = r - 1
        out: dict = {}
        for a, c in self.terms.items():
            x, y = a[p], a[p + 1]
            if x == y:
                continue
            low, d = min(x, y), abs(x - y)
            coef = -c if x > y else c
            for u in range(d):
                b = list(a)
                b[p], b[p + 1] = low + u, low + d - 1 - u
                k = tuple(b)
                v = out.get(k)
                out[k] = coef if v is None else v + coef
        return Poly(self.F, self.n, out)

    def is_symmetric(self) -> bool:
        return all(self.swap(r) == self for r in range(1, self.n))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms):
            mono = "*".join(
                ("t%d" % (k + 1)) + ("" if x == 1 else "^%d" % x)
                for k, x in enumerate(a) if x)
            coef = self.F.fmt(self.terms[a])
            parts.append("(%s)%s" % (coef, "*" + mono if mono else ""))
        return " + ".join(parts)


def sym_act(w, f: Poly) -> Poly:
    return f.act(w)


def divided_difference(r: int, f: Poly) -> Poly:
    """``(s_r(f) - f) / (t_{r+1} - t_r)``; always an exact quotient."""
    return -f.delta(r)
