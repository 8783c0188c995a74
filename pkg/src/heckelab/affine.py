"""Affine Hecke algebras of type A in normal form.

An element is a dict ``w -> f`` standing for ``sum_w f(X) T_w`` (degenerate
mode: ``sum_w f(x) w``), so every X-factor sits left of every T-factor.
Moving a T past a polynomial uses the Demazure-Lusztig rule

    T_i f = s_i(f) T_i + (q-1) X_{i+1} (f - s_i f)/(X_{i+1} - X_i)
    s_i f = s_i(f) s_i + (f - s_i f)/(x_{i+1} - x_i)

which specializes to ``T_1 X_1 = X_2 T_1 - (q-1) X_2`` and to
``x_2 s_1 = s_1 x_1 + 1``.

>>> from heckelab.fields import FieldSpec
>>> H = AffineHecke(FieldSpec.nondegenerate(0), 2)
>>> H.T(1) * H.X(1) == H.X(2) * H.T(1) - (H.q - 1) * H.X(2)
True
"""

from __future__ import annotations

from functools import lru_cache
import random

from .fields import FieldSpec
from .perms import (Perm, all_perms, compose, identity, inverse, is_left_descent,
                    reduced_word, s)
from .poly import Poly, divided_difference

__all__ = [
    "AffineHecke", "AffineElement", "multiply", "rho_action", "star",
    "bernstein_center_check", "relation_residuals", "random_element",
]


class AffineHecke:
    """H_n(q) (nondegenerate field) or the degenerate algebra H_n."""

    def __init__(self, F: FieldSpec, n: int):
        self.F = F
        self.n = n
        self.degenerate = F.degenerate_mode
        self.q = F.one if self.degenerate else F.q
        self._finite = lru_cache(maxsize=None)(self._finite_product)

    # -- constructors -------------------------------------------------

    def element(self, terms: dict) -> "AffineElement":
        return AffineElement(self, terms)

    def poly(self, f: Poly) -> "AffineElement":
        return AffineElement(self, {identity(self.n): f})

    def scalar(self, c) -> "AffineElement":
        return self.poly(Poly.const(self.F, self.n, c))

    @property
    def one(self) -> "AffineElement":
        return self.scalar(1)

    @property
    def zero(self) -> "AffineElement":
        return AffineElement(self, {})

    def X(self, k: int, power: int = 1) -> "AffineElement":
        if self.degenerate and power < 0:
            raise ValueError("degenerate algebra has no inverse x_k")
        return self.poly(Poly.var(self.F, self.n, k, power))

    x = X

    def T(self, r: int) -> "AffineElement":
        return AffineElement(self, {s(r, self.n): Poly.const(self.F, self.n)})

    s = T

    def Tw(self, w: Perm) -> "AffineElement":
        return AffineElement(self, {tuple(w): Poly.const(self.F, self.n)})

    # -- finite Hecke algebra -----------------------------------------

    def _left_T(self, j: int, u: Perm) -> dict:
        """T_j T_u in the finite Hecke algebra (or s_j u in the group)."""
        su = compose(s(j, self.n), u)
        if self.degenerate or not is_left_descent(j, u):
            return {su: self.F.one}
        return {u: self.q - 1, su: self.q}

    def _finite_product(self, u: Perm, v: Perm) -> tuple:
        acc = {v: self.F.one}
        for j in reversed(reduced_word(u)):
            nxt: dict = {}
            for w, c in acc.items():
                for w2, c2 in self._left_T(j, w).items():
                    nxt[w2] = nxt.get(w2, self.F.zero) + c * c2
            acc = {w: c for w, c in nxt.items() if c}
        return tuple(acc.items())

    def finite_product(self, u: Perm, v: Perm) -> dict:
        return dict(self._finite(u, v))

    # -- commutation --------------------------------------------------

    def T_times_poly(self, j: int, f: Poly) -> dict:
        """T_j f as a dict perm -> Poly (only identity and s_j occur)."""
        sj = s(j, self.n)
        out = {sj: f.swap(j)}
        d = f.delta(j)
        if d:
            if self.degenerate:
                out[identity(self.n)] = d
            else:
                out[identity(self.n)] = d * Poly.var(self.F, self.n, j + 1) * (self.q - 1)
        return out

    def Tw_times_poly(self, w: Perm, f: Poly) -> dict:
        acc = {identity(self.n): f}
        for j in reversed(reduced_word(w)):
            nxt: dict = {}
            for u, h in acc.items():
                for v, g in self.T_times_poly(j, h).items():
                    # g T_v T_u with v in {1, s_j}
                    for w2, c in self.finite_product(v, u).items():
                        term = g * c
                        prev = nxt.get(w2)
                        nxt[w2] = term if prev is None else prev + term
            acc = {u: h for u, h in nxt.items() if h}
        return acc

    def multiply(self, a: "AffineElement", b: "AffineElement") -> "AffineElement":
        out: dict = {}
        for w, f in a.terms.items():
            for v, g in b.terms.items():
                for u, h in self.Tw_times_poly(w, g).items():
                    fh = f * h
                    for w2, c in self.finite_product(u, v).items():
                        term = fh * c
                        prev = out.get(w2)
                        out[w2] = term if prev is None else prev + term
        return AffineElement(self, out)


class AffineElement:
    __slots__ = ("H", "terms")

    def __init__(self, H: AffineHecke, terms: dict):
        self.H = H
        self.terms = {w: f for w, f in terms.items() if f}

    def _lift(self, other) -> "AffineElement":
        if isinstance(other, AffineElement):
            return other
        return self.H.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, f in other.terms.items():
            out[w] = out[w] + f if w in out else f
        return AffineElement(self.H, out)

    __radd__ = __add__

    def __neg__(self):
        return AffineElement(self.H, {w: -f for w, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, AffineElement):
            return self.H.multiply(self, other)
        return AffineElement(self.H, {w: f * other for w, f in self.terms.items()})

    def __rmul__(self, other):
        return AffineElement(self.H, {w: f * other for w, f in self.terms.items()})

    def __pow__(self, k: int):
        out = self.H.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return self.terms == self._lift(other).terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def monomials(self):
        """Yield ``(exponent, perm, coeff)`` triples of the normal form."""
        for w in sorted(self.terms):
            for a, c in sorted(self.terms[w].terms.items()):
                yield a, w, c

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%r)*T%s" % (f, w) for w, f in sorted(self.terms.items()))


def multiply(u: AffineElement, v: AffineElement) -> AffineElement:
    return u.H.multiply(u, v)


def star(u: AffineElement) -> AffineElement:
    """Anti-involution fixing every T_i and X_k: ``f T_w -> T_{w^-1} f``."""
    H = u.H
    out = H.zero
    for w, f in u.terms.items():
        out = out + H.Tw(inverse(w)) * H.poly(f)
    return out


# -- polynomial representation ------------------------------------------

def _rho_generator(H: AffineHecke, r: int, g: Poly) -> Poly:
    dd = divided_difference(r, g)
    if H.degenerate:
        return -dd + g.swap(r)
    t = lambda k: Poly.var(H.F, H.n, k)  # noqa: E731
    return (t(r + 1) - t(r) * H.q) * dd + g * H.q


def rho_action(u: AffineElement, f: Poly) -> Poly:
    """Apply u through the faithful polynomial representation."""
    H = u.H
    out = Poly(H.F, H.n)
    for w, coeff in u.terms.items():
        g = f
        for r in reversed(reduced_word(w)):
            g = _rho_generator(H, r, g)
        out = out + coeff * g
    return out


# -- checks -------------------------------------------------------------

def bernstein_center_check(H: AffineHecke, f: Poly) -> dict:
    """Check that the polynomial f(X) commutes with every T_i."""
    z = H.poly(f)
    for i in range(1, H.n):
        if z * H.T(i) != H.T(i) * z:
            return {"pass": False, "witness": "T_%d" % i}
    return {"pass": True, "witness": None}


def relation_residuals(H: AffineHecke) -> dict[str, bool]:
    """Evaluate every defining relation; True means the residual is 0.

    The key ``"(7a) printed"`` holds the relation with ``(q-1) X_i`` exactly
    as it is usually misprinted; it is reported, not asserted.
    """
    n, q = H.n, H.q
    T, X = H.T, H.X
    out: dict[str, bool] = {}

    def record(name, residual):
        out[name] = out.get(name, True) and not residual

    if not H.degenerate:
        for i in range(1, n):
            record("(1) quadratic", (T(i) - q) * (T(i) + 1))
            record("(7) X_{i+1} = q^-1 T_i X_i T_i", X(i + 1) * q - T(i) * X(i) * T(i))
            record("(7a) X_{i+1}T_i = T_iX_i + (q-1)X_{i+1}",
                   X(i + 1) * T(i) - T(i) * X(i) - (q - 1) * X(i + 1))
            record("(7a) printed", X(i + 1) * T(i) - T(i) * X(i) - (q - 1) * X(i))
            for k in range(1, n + 1):
                if k not in (i, i + 1):
                    record("(6) T_i X_k = X_k T_i", T(i) * X(k) - X(k) * T(i))
                    record("(6) T_i X_k^-1 = X_k^-1 T_i", T(i) * X(k, -1) - X(k, -1) * T(i))
        for i in range(1, n - 1):
            record("(2) braid", T(i) * T(i + 1) * T(i) - T(i + 1) * T(i) * T(i + 1))
        for i in range(1, n):
            for k in range(i + 2, n):
                record("(3) distant T", T(i) * T(k) - T(k) * T(i))
        for i in range(1, n + 1):
            record("(5) X X^-1 = 1", X(i) * X(i, -1) - 1)
            record("(5) X^-1 X = 1", X(i, -1) * X(i) - 1)
            for k in range(1, n + 1):
                for a in (1, -1):
                    for b in (1, -1):
                        record("(4) X commute", X(i, a) * X(k, b) - X(k, b) * X(i, a))
    else:
        S, x = H.s, H.x
        for i in range(1, n):
            record("(8) s_i^2 = 1", S(i) * S(i) - 1)
            record("(13) x_{i+1} = s_i x_i s_i + s_i", x(i + 1) - S(i) * x(i) * S(i) - S(i))
            record("(13a) x_{i+1}s_i = s_ix_i + 1", x(i + 1) * S(i) - S(i) * x(i) - 1)
            for k in range(1, n + 1):
                if k not in (i, i + 1):
                    record("(12) s_i x_k = x_k s_i", S(i) * x(k) - x(k) * S(i))
        for i in range(1, n - 1):
            record("(9) braid", S(i) * S(i + 1) * S(i) - S(i + 1) * S(i) * S(i + 1))
        for i in range(1, n):
            for k in range(i + 2, n):
                record("(10) distant s", S(i) * S(k) - S(k) * S(i))
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                record("(11) x commute", x(i) * x(k) - x(k) * x(i))
    return out


def random_element(H: AffineHecke, rng: random.Random, terms: int = 3,
                   exp_range: tuple[int, int] = (-2, 2)) -> AffineElement:
    """A random sum of monomials ``c X^a T_w`` with small integer c."""
    lo, hi = exp_range
    if H.degenerate:
        lo = max(lo, 0)
    perms = all_perms(H.n)
    out = H.zero
    for _ in range(terms):
        a = tuple(rng.randint(lo, hi) for _ in range(H.n))
        w = rng.choice(perms)
        c = rng.choice([1, -1, 2, 3])
        out = out + AffineElement(H, {w: Poly.monomial(H.F, a, c)})
    return out
