"""Centers of cyclotomic quotients and symmetric Jucys-Murphy polynomials.

>>> from heckelab.fields import FieldSpec
>>> from heckelab.cyclotomic import Weight, quotient
>>> A = quotient(FieldSpec.degenerate(0), 2, Weight((0,)))
>>> len(center_basis(A)), symmetric_jm_span(A).dim
(2, 2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .cyclotomic import CycElement, CyclotomicQuotient, Weight, blocks, quotient
from .fields import FieldSpec, q_residue
from .klrmap import KLRImageSet, _klr_generators
from .linalg import RowSpace, kernel, rank, solve
from .poly import Poly

__all__ = [
    "CenterReport", "SymmetricSpan", "center_basis", "symmetric_jm_span",
    "surjectivity_check", "partitions", "monomial_symmetric", "in_scope",
    "klr_central_form",
]

EXPLORATORY = "exploratory, outside proven scope"
PROVEN = "within proven scope"


def center_basis(A: CyclotomicQuotient) -> list[CycElement]:
    """Basis of the centralizer of ``T_1, ..., T_{n-1}, L_1``.

    Solved as one kernel computation of the stacked matrices of
    ``z -> z g - g z``.
    """
    rows = []
    for _, g in A.generators():
        Lg, Rg = A.left_matrix(g), A.right_matrix(g)
        rows.extend([r - l for r, l in zip(rr, ll)] for rr, ll in zip(Rg, Lg))
    return [A.vector({k: c for k, c in enumerate(v) if c}) for v in kernel(A.F, rows)]


def partitions(total: int, parts: int, below: int | None = None):
    """Partitions of ``total`` into at most ``parts`` parts, each ``< below``.

    >>> list(partitions(3, 2))
    [(3,), (2, 1)]
    >>> list(partitions(3, 2, below=3))
    [(2, 1)]
    """
    cap = total if below is None else min(total, below - 1)

    def rec(left, k, top):
        if left == 0:
            yield ()
            return
        if k == 0:
            return
        for part in range(min(left, top), 0, -1):
            for rest in rec(left - part, k - 1, part):
                yield (part,) + rest
    yield from rec(total, parts, cap)


def monomial_symmetric(F: FieldSpec, n: int, mu) -> Poly:
    """``m_mu(t_1, ..., t_n)``, zero when mu has more than n parts.

    >>> from heckelab.fields import FieldSpec
    >>> monomial_symmetric(FieldSpec.degenerate(0), 2, (1,))
    (1)*t2 + (1)*t1
    """
    if len(mu) > n:
        return Poly(F, n)
    padded = tuple(mu) + (0,) * (n - len(mu))
    return Poly(F, n, {a: F.one for a in set(permutations(padded))})


@dataclass
class SymmetricSpan:
    """Independent symmetric JM elements found up to the saturation degree."""

    polys: list
    elements: list
    saturation_degree: int
    degrees_tried: int

    @property
    def dim(self) -> int:
        return len(self.elements)

    def coefficients(self, z: CycElement):
        """Coordinates of z on ``elements``, or ``None`` when z lies outside."""
        if not self.elements:
            return None if z else []
        cols = [x.vec for x in self.elements]
        M = [[c[r] for c in cols] for r in range(len(z.vec))]
        return solve(z.A.F, M, list(z.vec))


def symmetric_jm_span(A: CyclotomicQuotient, max_stall: int = 2,
                      max_degree: int | None = None) -> SymmetricSpan:
    """Span of ``m_mu(L_1, ..., L_n)`` over partitions with parts below ``l n``.

    Degrees are added in increasing order until ``max_stall`` consecutive
    degrees add nothing, the family is exhausted, or ``max_degree`` is passed.
    """
    F, n = A.F, A.n
    below = A.weight.level * n
    top = n * (below - 1)
    if max_degree is not None:
        top = min(top, max_degree)
    space = RowSpace()
    polys, elements = [], []
    stall, saturation, degree = 0, 0, 0
    while degree <= top and stall < max_stall:
        grew = False
        for mu in partitions(degree, n, below):
            f = monomial_symmetric(F, n, mu)
            z = A.apply_poly_L(f, A.one)
            if space.add(dict(enumerate(z.vec))):
                polys.append(f)
                elements.append(z)
                grew = True
        if grew:
            stall, saturation = 0, degree
        else:
            stall += 1
        degree += 1
    return SymmetricSpan(polys, elements, saturation, degree)


def in_scope(F: FieldSpec, n: int) -> bool:
    """Degenerate quotients are covered for every n; nondegenerate ones for n <= 2."""
    return F.degenerate_mode or n <= 2


def _jm_in_y(F: FieldSpec, n: int, i) -> list[Poly]:
    """``L_k e(i)`` written as a polynomial in ``y_1, ..., y_n``."""
    out = []
    for k in range(1, n + 1):
        y = Poly.var(F, n, k)
        if F.degenerate_mode:
            out.append(y + F(i[k - 1]))
        else:
            out.append((Poly.const(F, n) - y) * q_residue(F, i[k - 1]))
    return out


def _substitute(f: Poly, images: list[Poly]) -> Poly:
    out = Poly(f.F, f.n)
    for a, c in f.terms.items():
        term = Poly.const(f.F, f.n, c)
        for k, x in enumerate(a):
            if x:
                term = term * images[k] ** x
        out = out + term
    return out


def _apply_y_poly(S: KLRImageSet, f: Poly, i) -> CycElement:
    """``f(y_1, ..., y_n) e(i)`` through the y images."""
    out = S.A.zero
    base = S.E[i]
    for a, c in f.terms.items():
        z = base
        for k, x in enumerate(a):
            for _ in range(x):
                z = S.apply_y(k + 1, i, z)
        out = out + z * c
    return out


def klr_central_form(S: KLRImageSet, coeffs, polys) -> dict:
    """Symmetric tuple ``f_i(y)`` for ``sum_j coeffs[j] polys[j](L)`` on block S."""
    F, n = S.F, S.n
    out = {}
    for i in S.seqs:
        images = _jm_in_y(F, n, i)
        f = Poly(F, n)
        for c, g in zip(coeffs, polys):
            if c:
                f = f + _substitute(g, images) * c
        out[i] = f
    return out


def _tuple_symmetric(F: FieldSpec, forms: dict) -> bool:
    for i, f in forms.items():
        for r in range(1, len(i)):
            j = list(i)
            j[r - 1], j[r] = j[r], j[r - 1]
            if forms[tuple(j)] != f.swap(r):
                return False
    return True


def _klr_side(F, n, weight, block, center, span) -> dict:
    """Check the KLR central form of every center element on one block."""
    S = KLRImageSet(F, n, weight, block["beta"])
    gens = []
    for _, atom in _klr_generators(S):
        if atom[0] == "e":
            gens.append(S.E[atom[1]])
        elif atom[0] == "y":
            gens.append(S.Y[(atom[1], atom[2])])
        else:
            gens.append(S.PSI[(atom[1], atom[2])])
    eb = block["idempotent"]
    checked, failures, symmetric = 0, [], True
    for idx, z in enumerate(center):
        coeffs = span.coefficients(z)
        if coeffs is None:
            failures.append({"element": idx, "reason": "outside symmetric span"})
            continue
        forms = klr_central_form(S, coeffs, span.polys)
        symmetric = symmetric and _tuple_symmetric(F, forms)
        image = S.A.zero
        for i, f in forms.items():
            if not S.E[i].is_zero():
                image = image + _apply_y_poly(S, f, i)
        checked += 1
        if image != z * eb:
            failures.append({"element": idx, "reason": "eta image differs"})
        elif any(image * g != g * image for g in gens):
            failures.append({"element": idx, "reason": "not central among KLR images"})
    return {"pass": not failures and symmetric, "checked": checked,
            "symmetric_tuples": symmetric, "failures": failures}


@dataclass
class CenterReport:
    field: str
    n: int
    weight: tuple
    algebra_dim: int
    center_dim: int
    symmetric_dim: int
    surjective: bool
    saturation_degree: int
    block_dims: dict = field(default_factory=dict)
    klr_side: dict = field(default_factory=dict)
    scope: str = PROVEN

    @property
    def passed(self) -> bool:
        klr_ok = all(v["pass"] for v in self.klr_side.values())
        return self.surjective and klr_ok

    def to_json(self) -> dict:
        return {
            "field": self.field, "n": self.n, "weight": list(self.weight),
            "algebra_dim": self.algebra_dim, "center_dim": self.center_dim,
            "symmetric_dim": self.symmetric_dim, "surjective": self.surjective,
            "saturation_degree": self.saturation_degree,
            "block_center_dims": self.block_dims, "klr_side": self.klr_side,
            "scope": self.scope, "pass": self.passed,
        }


def _beta_key(beta) -> str:
    return ",".join("%d:%d" % jm for jm in beta)


def surjectivity_check(F: FieldSpec, n: int, weight: Weight, klr: bool = True,
                       max_degree: int | None = None) -> CenterReport:
    """Compare the center with the symmetric JM span, block by block."""
    A = quotient(F, n, weight)
    center = center_basis(A)
    span = symmetric_jm_span(A, max_degree=max_degree)
    centre_rank = len(center)
    joint = rank(F, [list(z.vec) for z in center] + [list(z.vec) for z in span.elements])
    surjective = joint == centre_rank == span.dim
    block_dims, klr_side = {}, {}
    for block in blocks(A):
        eb = block["idempotent"]
        key = _beta_key(block["beta"])
        block_dims[key] = rank(F, [list((z * eb).vec) for z in center])
        if klr:
            klr_side[key] = _klr_side(F, n, A.weight, block, center, span)
    return CenterReport(
        field=F.describe(), n=n, weight=A.weight.kappa, algebra_dim=A.dim,
        center_dim=centre_rank, symmetric_dim=span.dim, surjective=surjective,
        saturation_degree=span.saturation_degree, block_dims=block_dims,
        klr_side=klr_side, scope=PROVEN if in_scope(F, n) else EXPLORATORY)
