"""Dense exact linear algebra over a :class:`FieldSpec`.

Matrices are lists of row lists. Univariate polynomials are coefficient
lists, lowest degree first.

>>> from heckelab.fields import FieldSpec
>>> F = FieldSpec.degenerate(0)
>>> [F.fmt(c) for c in minpoly(F, [[0, 1], [1, 0]])]
['-1', '0', '1']
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldSpec

__all__ = [
    "SingularMatrixError", "ExactMatrix", "identity", "matmul", "matvec",
    "rref", "rank", "kernel", "invert", "solve", "minpoly", "RowSpace",
    "upoly_mul", "upoly_divmod", "upoly_gcdex", "upoly_trim",
]


class SingularMatrixError(ArithmeticError):
    """Raised by :func:`invert`; ``witness`` is a nonzero kernel vector."""

    def __init__(self, witness):
        super().__init__("matrix is singular")
        self.witness = witness


def identity(F: FieldSpec, n: int) -> list[list]:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def matmul(A, B):
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * m
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(m):
                    b = bk[j]
                    if b:
                        acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def matvec(A, v):
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def rref(F: FieldSpec, M):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    R = [[F(x) for x in row] for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F: FieldSpec, M) -> int:
    return len(rref(F, M)[1]) if M else 0


def kernel(F: FieldSpec, M) -> list[list]:
    """Basis of ``{v : M v = 0}``."""
    cols = len(M[0])
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * cols
        v[f] = F.one
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def invert(F: FieldSpec, M):
    n = len(M)
    aug = [list(M[i]) + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError(kernel(F, M)[0])
    return [row[n:] for row in R]


def solve(F: FieldSpec, A, b):
    """One solution of ``A x = b`` or ``None``."""
    cols = len(A[0])
    aug = [list(row) + [y] for row, y in zip(A, b)]
    R, pivots = rref(F, aug)
    if cols in pivots:
        return None
    x = [F.zero] * cols
    for r, p in enumerate(pivots):
        x[p] = R[r][cols]
    return x


class RowSpace:
    """Incrementally grown span of sparse vectors (dicts index -> value)."""

    def __init__(self):
        self.rows: list[tuple[object, dict]] = []

    def reduce(self, v: dict) -> dict:
        v = {k: x for k, x in v.items() if x}
        for p, row in self.rows:
            c = v.get(p)
            if c:
                for k, x in row.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        """Add ``v``; return True when it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        self.rows.append((p, {k: x * inv for k, x in v.items()}))
        return True

    def __contains__(self, v: dict) -> bool:
        return not self.reduce(v)

    def __len__(self):
        return len(self.rows)


def minpoly(F: FieldSpec, M) -> list:
    """Monic minimal polynomial of a square matrix (coefficients low first)."""
    n = len(M)
    # track each reduced vector's expression in terms of powers of M
    combos: list[tuple[object, dict, dict]] = []
    power = identity(F, n)
    for k in range(n + 1):
        vec = {(i, j): power[i][j] for i in range(n) for j in range(n) if power[i][j]}
        expr = {k: F.one}
        for p, row, rexpr in combos:
            c = vec.get(p)
            if c:
                for key, x in row.items():
                    y = vec.get(key, 0) - c * x
                    if y:
                        vec[key] = y
                    else:
                        vec.pop(key, None)
                for key, x in rexpr.items():
                    expr[key] = expr.get(key, F.zero) - c * x
        if not vec:
            coeffs = [expr.get(j, F.zero) for j in range(k + 1)]
            lead = coeffs[-1]
            return [c / lead for c in coeffs]
        p = min(vec)
        inv = 1 / vec[p]
        combos.append((p, {key: x * inv for key, x in vec.items()},
                       {key: x * inv for key, x in expr.items()}))
        power = matmul(power, M)
    raise AssertionError("Cayley-Hamilton violated")


@dataclass(frozen=True)
class ExactMatrix:
    """Thin wrapper bundling a dense matrix with its field."""

    F: FieldSpec
    rows: tuple

    @classmethod
    def of(cls, F, rows) -> "ExactMatrix":
        return cls(F, tuple(tuple(F(x) for x in r) for r in rows))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix.of(self.F, matmul(self.rows, other.rows))

    def rank(self) -> int:
        return rank(self.F, self.rows)

    def kernel(self) -> list[list]:
        return kernel(self.F, self.rows)

    def inverse(self) -> "ExactMatrix":
        return ExactMatrix.of(self.F, invert(self.F, self.rows))

    def minpoly(self) -> list:
        return minpoly(self.F, self.rows)


# -- univariate polynomials ---------------------------------------------

def upoly_trim(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def upoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return upoly_trim(out)


def upoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return upoly_trim([x - y for x, y in zip(a, b)])


def upoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = upoly_trim(a)
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    inv = 1 / b[-1]
    while len(rem) >= len(b):
        c = rem[-1] * inv
        shift = len(rem) - len(b)
        quot[shift] = c
        for j, y in enumerate(b):
            rem[shift + j] = rem[shift + j] - c * y
        rem = upoly_trim(rem)
    return upoly_trim(quot), rem


def upoly_gcdex(a: list, b: list):
    """Return ``(g, u, v)`` with ``u a + v b = g`` and g monic."""
    r0, r1 = upoly_trim(a), upoly_trim(b)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        qt, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, upoly_sub(u0, upoly_mul(qt, u1))
        v0, v1 = v1, upoly_sub(v0, upoly_mul(qt, v1))
    lead = 1 / r0[-1]
    scale = lambda p: [x * lead for x in p]  # noqa: E731
    return scale(r0), scale(u0), scale(v0)
