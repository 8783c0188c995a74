"""Exact ground fields with a Hecke parameter.

Three realizations are supported: the rationals (gmpy2 ``mpq``), prime
fields ``F_p`` and cyclotomic fields ``Q[x]/Phi_e(x)`` with ``q`` the class
of ``x``.

>>> F = FieldSpec.nondegenerate(3)
>>> F.fmt(quantum_integer(F, 3))
'[0, 0]'
>>> F = FieldSpec.degenerate(3)
>>> F.fmt(q_residue(F, 5))
'2 mod 3'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "FieldSpec", "ModP", "CycNum", "quantum_integer", "q_residue",
    "cyclotomic_coefficients", "FieldError",
]


class FieldError(ValueError):
    """Inconsistent field configuration."""


class ModP:
    """Residue class modulo a prime, always stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _co(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 mod %d" % self.p)
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)


_MPQ = type(mpq(0))


class CycNum:
    """Element of ``Q[x]/(m(x))`` for a monic integer polynomial ``m``.

    ``coeffs[k]`` is the coefficient of ``x^k``; the tuple always has
    length ``deg m``.
    """

    __slots__ = ("coeffs", "mod")

    def __init__(self, coeffs, mod: tuple[int, ...]):
        self.coeffs = tuple(coeffs)
        self.mod = mod

    @staticmethod
    def _reduce(c: list, mod: tuple[int, ...]) -> tuple:
        m = len(mod) - 1
        for k in range(len(c) - 1, m - 1, -1):
            lead = c[k]
            if lead:
                for j in range(m):
                    c[k - m + j] -= lead * mod[j]
            c[k] = 0
        out = c[:m]
        out.extend([mpq(0)] * (m - len(out)))
        return tuple(out)

    def _co(self, other):
        if isinstance(other, CycNum):
            return other
        if isinstance(other, int) or type(other) is type(mpq(0)):
            m = len(self.mod) - 1
            return CycNum((mpq(other),) + (mpq(0),) * (m - 1), self.mod)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, CycNum):
            if isinstance(other, int) or type(other) is _MPQ:
                if not other:
                    return self
                c = self.coeffs
                return CycNum((c[0] + other,) + c[1:], self.mod)
            return NotImplemented
        return CycNum([a + b for a, b in zip(self.coeffs, other.coeffs)], self.mod)

    __radd__ = __add__

    def __neg__(self):
        return CycNum([-a for a in self.coeffs], self.mod)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return CycNum([a - b for a, b in zip(self.coeffs, o.coeffs)], self.mod)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            if isinstance(other, int) or type(other) is _MPQ:
                return CycNum([a * other for a in self.coeffs], self.mod)
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) == 2:
            # x^2 = -m0 - m1 x
            a0, a1 = a
            b0, b1 = b
            top = a1 * b1
            m0, m1 = self.mod[0], self.mod[1]
            return CycNum((a0 * b0 - m0 * top, a0 * b1 + a1 * b0 - m1 * top), self.mod)
        if not any(b[1:]):
            y = b[0]
            return CycNum([x * y for x in a], self.mod)
        if not any(a[1:]):
            x = a[0]
            return CycNum([x * y for y in b], self.mod)
        prod = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycNum(self._reduce(prod, self.mod), self.mod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        # solve (self * z) = 1 as a linear system on the power basis
        m = len(self.mod) - 1
        cols = []
        basis = [mpq(0)] * m
        for k in range(m):
            e = list(basis)
            e[k] = mpq(1)
            cols.append((self * CycNum(e, self.mod)).coeffs)
        rows = [[cols[k][r] for k in range(m)] + [mpq(1 if r == 0 else 0)]
                for r in range(m)]
        for c in range(m):
            piv = next((r for r in range(c, m) if rows[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("non-invertible cyclotomic number")
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [x * inv for x in rows[c]]
            for r in range(m):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return CycNum([rows[r][m] for r in range(m)], self.mod)

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self._co(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"


@lru_cache(maxsize=None)
def cyclotomic_coefficients(e: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the e-th cyclotomic polynomial.

    >>> cyclotomic_coefficients(3)
    (1, 1, 1)
    """
    from sympy import Poly, cyclotomic_poly, symbols

    x = symbols("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(e, x), x).all_coeffs()))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class FieldSpec:
    """A ground field together with its quantum characteristic.

    ``kind`` is one of ``"rational"``, ``"prime"``, ``"cyclotomic"``.
    In degenerate mode ``q`` is ``None``.
    """

    characteristic: int
    mode: str
    e: int
    kind: str
    q: object = field(default=None, compare=False)
    q_label: str = ""
    modulus: tuple[int, ...] = ()

    # -- constructors -------------------------------------------------

    @classmethod
    def degenerate(cls, e: int) -> "FieldSpec":
        if e == 0:
            return cls(0, "degenerate", 0, "rational", q_label="1")
        if not _is_prime(e):
            raise FieldError("degenerate mode needs e = 0 or e = char = prime, got e=%d" % e)
        return cls(e, "degenerate", e, "prime", q_label="1")

    @classmethod
    def nondegenerate(cls, e: int, q=None, characteristic: int = 0) -> "FieldSpec":
        if characteristic:
            return cls._nondegenerate_prime(e, q, characteristic)
        if e == 0:
            qv = mpq(2) if q is None else mpq(q)
            spec = cls(0, "nondegenerate", 0, "rational", q=qv, q_label=str(qv))
        elif e == 2 and (q is None or mpq(q) == -1):
            # Phi_2 = x + 1 has degree one, so the realization is Q itself
            spec = cls(0, "nondegenerate", 2, "rational", q=mpq(-1), q_label="-1")
        elif q is None and e >= 3:
            mod = cyclotomic_coefficients(e)
            qv = CycNum([mpq(0), mpq(1)] + [mpq(0)] * (len(mod) - 3), mod)
            spec = cls(0, "nondegenerate", e, "cyclotomic", q=qv,
                       q_label="zeta_%d" % e, modulus=mod)
        else:
            raise FieldError("no rational q with quantum characteristic %d" % e)
        spec._check_e()
        return spec

    @classmethod
    def _nondegenerate_prime(cls, e: int, q, p: int) -> "FieldSpec":
        if not _is_prime(p):
            raise FieldError("characteristic %d is not prime" % p)
        if q is None:
            if e < 2 or (p - 1) % e:
                raise FieldError("F_%d has no element of multiplicative order %d" % (p, e))
            q = next(a for a in range(2, p) if _order(a, p) == e)
        spec = cls(p, "nondegenerate", e, "prime", q=ModP(int(q), p),
                   q_label="%d mod %d" % (int(q) % p, p))
        spec._check_e()
        return spec

    def _check_e(self) -> None:
        if self.q == 1 or self.q == 0:
            raise FieldError("q must be a unit different from 1")
        found = self.compute_e()
        if found != self.e:
            raise FieldError("q=%s has quantum characteristic %d, not %d"
                             % (self.q_label, found, self.e))

    def compute_e(self, bound: int = 200) -> int:
        """Least k with [k]_q = 0, or 0 if there is none.

        Exact for prime and cyclotomic fields; for rationals the only root
        of unity besides 1 is -1, and the search bound is a safety net.
        """
        if self.mode == "degenerate":
            return self.characteristic
        if self.kind == "prime":
            limit = self.characteristic
        elif self.kind == "cyclotomic":
            limit = self.e
        else:
            limit = bound
        acc, power = self.zero, self.one
        for k in range(1, limit + 1):
            acc = acc + power
            power = power * self.q
            if acc == 0:
                return k
        return 0

    # -- element plumbing ---------------------------------------------

    def __call__(self, x):
        if self.kind == "prime":
            if isinstance(x, ModP):
                return x
            if type(x) is type(mpq(0)):
                return ModP(int(x.numerator), self.characteristic) / int(x.denominator)
            return ModP(int(x), self.characteristic)
        if self.kind == "cyclotomic":
            if isinstance(x, CycNum):
                return x
            return CycNum((mpq(x),) + (mpq(0),) * (len(self.modulus) - 2), self.modulus)
        return mpq(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def degenerate_mode(self) -> bool:
        return self.mode == "degenerate"

    def fmt(self, x) -> str:
        """Canonical string form of an element."""
        x = self(x)
        if self.kind == "prime":
            return "%d mod %d" % (x.v, x.p)
        if self.kind == "cyclotomic":
            return repr(x)
        return str(x)

    def describe(self) -> str:
        if self.kind == "rational":
            base = "Q"
        elif self.kind == "prime":
            base = "F_%d" % self.characteristic
        else:
            base = "Q(zeta_%d)" % self.e
        if self.mode == "degenerate":
            return base
        return "%s, q=%s" % (base, self.q_label)

    def reduce_residue(self, i: int) -> int:
        return i % self.e if self.e else i


def _order(a: int, p: int) -> int:
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def quantum_integer(spec: FieldSpec, k: int):
    """Return ``1 + q + ... + q^(k-1)``, or ``k`` in degenerate mode."""
    if spec.degenerate_mode:
        return spec(k)
    acc, power = spec.zero, spec.one
    for _ in range(k):
        acc = acc + power
        power = power * spec.q
    return acc


def q_residue(spec: FieldSpec, i: int):
    """Return ``q^i`` (nondegenerate) or ``i`` (degenerate) for a residue i."""
    i = spec.reduce_residue(i)
    if spec.degenerate_mode:
        return spec(i)
    return spec.q ** i
