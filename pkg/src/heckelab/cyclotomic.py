"""Cyclotomic quotients H_n^Lambda through their regular representation.

The basis is the Ariki-Koike family ``L^a T_w`` with ``0 <= a_k < l``.
Left multiplication by ``T_i`` never raises an exponent to ``l`` (the
Demazure-Lusztig correction only lowers degrees), so only ``L_1`` needs the
cyclotomic relation; ``L_k`` for ``k > 1`` is obtained as
``q^-1 T_{k-1} L_{k-1} T_{k-1}`` (degenerate: ``s L s + s``).

>>> from heckelab.fields import FieldSpec
>>> A = CyclotomicQuotient(FieldSpec.nondegenerate(3), 2, Weight((0,)))
>>> A.dim, sorted(A.spectrum())
(2, [(0, 1), (0, 2)])
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .affine import AffineElement, AffineHecke
from .fields import FieldSpec, q_residue
from .linalg import (RowSpace, invert, minpoly, rank, solve, upoly_divmod,
                     upoly_gcdex, upoly_mul)
from .perms import all_perms, identity, reduced_word, s
from .poly import Poly
from .tableaux import tableau_residues

__all__ = [
    "Weight", "BlockLabel", "block_of", "CyclotomicQuotient", "CycElement",
    "project", "idempotent", "idempotent_closed_formula", "blocks", "pi_between",
    "CentralityError", "tableau_spectrum", "residues_of_block", "quotient",
]


class CentralityError(AssertionError):
    """A block idempotent failed to commute with a generator."""


@dataclass(frozen=True)
class Weight:
    """Dominant weight given by the residues kappa_1, ..., kappa_l."""

    kappa: tuple[int, ...]

    @property
    def level(self) -> int:
        return len(self.kappa)

    def reduced(self, e: int) -> "Weight":
        return Weight(tuple(k % e if e else k for k in self.kappa))

    def multiplicity(self, j: int) -> int:
        return self.kappa.count(j)

    def contains(self, other: "Weight") -> bool:
        """Multiset containment ``other <= self``."""
        mine, theirs = Counter(self.kappa), Counter(other.kappa)
        return all(mine[k] >= v for k, v in theirs.items())

    def __str__(self):
        return ",".join(str(k) for k in self.kappa)


BlockLabel = tuple[tuple[int, int], ...]


def block_of(i: tuple[int, ...]) -> BlockLabel:
    """Multiset of entries as sorted ``(residue, multiplicity)`` pairs."""
    return tuple(sorted(Counter(i).items()))


def residues_of_block(beta: BlockLabel) -> list[tuple[int, ...]]:
    """All sequences in I^beta, sorted."""
    from itertools import permutations
    flat = [j for j, m in beta for _ in range(m)]
    return sorted(set(permutations(flat)))


class CycElement:
    """Element of a cyclotomic quotient as a coordinate vector."""

    __slots__ = ("A", "vec")

    def __init__(self, A: "CyclotomicQuotient", vec):
        self.A = A
        self.vec = tuple(vec)

    def __add__(self, other):
        other = self.A.lift(other)
        return CycElement(self.A, [a + b for a, b in zip(self.vec, other.vec)])

    __radd__ = __add__

    def __neg__(self):
        return CycElement(self.A, [-a for a in self.vec])

    def __sub__(self, other):
        other = self.A.lift(other)
        return CycElement(self.A, [a - b for a, b in zip(self.vec, other.vec)])

    def __rsub__(self, other):
        return self.A.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, CycElement):
            return self.A.multiply(self, other)
        c = self.A.F(other)
        return CycElement(self.A, [a * c for a in self.vec])

    def __rmul__(self, other):
        c = self.A.F(other)
        return CycElement(self.A, [a * c for a in self.vec])

    def __pow__(self, k: int):
        out = self.A.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self.A.lift(other)
        return all(a == b for a, b in zip(self.vec, other.vec))

    __hash__ = None

    def __bool__(self):
        return any(self.vec)

    def is_zero(self) -> bool:
        return not any(self.vec)

    def support_size(self) -> int:
        return sum(1 for a in self.vec if a)

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.vec):
            if c:
                a, w = self.A.basis[k]
                parts.append("(%s)L%sT%s" % (self.A.F.fmt(c), a, w))
        return " + ".join(parts) or "0"


class CyclotomicQuotient:
    """H_n^Lambda(q) or H_n^Lambda with cached regular representation."""

    def __init__(self, F: FieldSpec, n: int, weight: Weight):
        if weight.level < 1:
            raise ValueError("weight must have level at least 1")
        self.F = F
        self.n = n
        self.weight = weight.reduced(F.e)
        self.ell = self.weight.level
        self.degenerate = F.degenerate_mode
        self.H = AffineHecke(F, n)
        self.basis = [(a, w) for w in all_perms(n)
                      for a in product(range(self.ell), repeat=n)]
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        # f(t) = prod (t - q_kappa), coefficients low first
        f = [F.one]
        for k in self.weight.kappa:
            f = upoly_mul(f, [-q_residue(F, k), F.one])
        self.cyclotomic_poly = f
        self._T = {i: self._gen_T(i) for i in range(1, n)}
        self._L = {1: self._gen_L1()}
        for k in range(2, n + 1):
            self._L[k] = self._derive_L(k)
        self._Linv: dict[int, list] = {}
        self._prod = self._structure_constants()
        self._spectral: dict = {}
        self._idem: dict = {}

    # -- regular representation -----------------------------------------

    def coords(self, u: AffineElement) -> dict:
        """Coordinates of an affine element already in reduced range."""
        out: dict = {}
        for a, w, c in u.monomials():
            if any(x < 0 or x >= self.ell for x in a):
                raise ValueError("monomial %s outside the Ariki-Koike range" % (a,))
            k = self.index[(a, w)]
            out[k] = out.get(k, self.F.zero) + c
        return {k: c for k, c in out.items() if c}

    def _basis_affine(self, k: int) -> AffineElement:
        a, w = self.basis[k]
        return AffineElement(self.H, {w: Poly.monomial(self.F, a)})

    def _gen_T(self, i: int) -> list[dict]:
        Ti = self.H.T(i)
        return [self.coords(Ti * self._basis_affine(k)) for k in range(self.dim)]

    def _gen_L1(self) -> list[dict]:
        cols = []
        for a, w in self.basis:
            b = (a[0] + 1,) + a[1:]
            if b[0] < self.ell:
                cols.append({self.index[(b, w)]: self.F.one})
                continue
            col = {}
            for j, c in enumerate(self.cyclotomic_poly[:-1]):
                if c:
                    col[self.index[((j,) + a[1:], w)]] = -c
            cols.append(col)
        return cols

    def _derive_L(self, k: int) -> list[dict]:
        cols = []
        T, L = self._T[k - 1], self._L[k - 1]
        qinv = None if self.degenerate else 1 / self.H.q
        for c in range(self.dim):
            v = self._apply_cols(T, {c: self.F.one})
            if self.degenerate:
                col = self._add(self._apply_cols(T, self._apply_cols(L, v)), v)
            else:
                col = {j: x * qinv for j, x in
                       self._apply_cols(T, self._apply_cols(L, v)).items()}
            cols.append(col)
        return cols

    @staticmethod
    def _add(u: dict, v: dict) -> dict:
        out = dict(u)
        for k, x in v.items():
            y = out.get(k, 0) + x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def _apply_cols(cols: list[dict], v: dict) -> dict:
        out: dict = {}
        for c, x in v.items():
            if x:
                for r, y in cols[c].items():
                    z = out.get(r, 0) + x * y
                    if z:
                        out[r] = z
                    else:
                        out.pop(r, None)
        return out

    def _structure_constants(self) -> list[list[dict]]:
        """``prod[b][c]`` = coordinates of basis_b * basis_c."""
        prod: list = [None] * self.dim
        for k, (a, w) in sorted(enumerate(self.basis),
                                key=lambda kb: (sum(kb[1][0]) + len(reduced_word(kb[1][1])))):
            if any(a):
                j = next(t for t, x in enumerate(a) if x)
                prev = a[:j] + (a[j] - 1,) + a[j + 1:]
                gen = self._L[j + 1]
                base = prod[self.index[(prev, w)]]
            elif w != identity(self.n):
                j = reduced_word(w)[0]
                gen = self._T[j]
                rest = self._s_times(j, w)
                base = prod[self.index[((0,) * self.n, rest)]]
            else:
                prod[k] = [{c: self.F.one} for c in range(self.dim)]
                continue
            prod[k] = [self._apply_cols(gen, col) for col in base]
        return prod

    def _s_times(self, j: int, w):
        from .perms import compose
        return compose(s(j, self.n), w)

    # -- elements ---------------------------------------------------------

    def vector(self, d: dict) -> CycElement:
        v = [self.F.zero] * self.dim
        for k, x in d.items():
            v[k] = self.F(x)
        return CycElement(self, v)

    def basis_element(self, k: int) -> CycElement:
        return self.vector({k: 1})

    @property
    def one(self) -> CycElement:
        return self.basis_element(self.index[((0,) * self.n, identity(self.n))])

    @property
    def zero(self) -> CycElement:
        return self.vector({})

    def lift(self, x) -> CycElement:
        if isinstance(x, CycElement):
            return x
        return self.one * x

    def T(self, i: int) -> CycElement:
        return self.basis_element(self.index[((0,) * self.n, s(i, self.n))])

    s = T

    def L(self, k: int, power: int = 1) -> CycElement:
        return self.apply_L(k, self.one, power)

    def multiply(self, x: CycElement, y: CycElement) -> CycElement:
        acc: dict = {}
        ynz = [(c, v) for c, v in enumerate(y.vec) if v]
        for b, u in enumerate(x.vec):
            if not u:
                continue
            row = self._prod[b]
            for c, v in ynz:
                uv = u * v
                for r, z in row[c].items():
                    acc[r] = acc.get(r, 0) + uv * z
        return self.vector({k: v for k, v in acc.items() if v})

    def apply_gen(self, cols: list[dict], x: CycElement) -> CycElement:
        return self.vector(self._apply_cols(cols, {k: v for k, v in enumerate(x.vec) if v}))

    def apply_T(self, i: int, x: CycElement) -> CycElement:
        return self.apply_gen(self._T[i], x)

    def apply_L(self, k: int, x: CycElement, power: int = 1) -> CycElement:
        cols = self._L[k] if power >= 0 else self._L_inverse(k)
        for _ in range(abs(power)):
            x = self.apply_gen(cols, x)
        return x

    def _L_inverse(self, k: int) -> list[dict]:
        if k not in self._Linv:
            inv = invert(self.F, self.dense(self._L[k]))
            self._Linv[k] = [{r: inv[r][c] for r in range(self.dim) if inv[r][c]}
                             for c in range(self.dim)]
        return self._Linv[k]

    def dense(self, cols: list[dict]) -> list[list]:
        M = [[self.F.zero] * self.dim for _ in range(self.dim)]
        for c, col in enumerate(cols):
            for r, x in col.items():
                M[r][c] = self.F(x)
        return M

    def generator_matrix(self, name: str, k: int) -> list[list]:
        return self.dense(self._T[k] if name == "T" else self._L[k])

    def left_matrix(self, x: CycElement) -> list[list]:
        M = [[self.F.zero] * self.dim for _ in range(self.dim)]
        for b, u in enumerate(x.vec):
            if u:
                for c, col in enumerate(self._prod[b]):
                    for r, z in col.items():
                        M[r][c] = M[r][c] + u * z
        return M

    def left_cols(self, x: CycElement) -> list[dict]:
        """Sparse columns of left multiplication by x (for :meth:`apply_gen`)."""
        cols = [dict() for _ in range(self.dim)]
        for b, u in enumerate(x.vec):
            if u:
                for c, col in enumerate(self._prod[b]):
                    tgt = cols[c]
                    for r, z in col.items():
                        y = tgt.get(r, 0) + u * z
                        if y:
                            tgt[r] = y
                        else:
                            tgt.pop(r, None)
        return cols

    def right_matrix(self, x: CycElement) -> list[list]:
        M = [[self.F.zero] * self.dim for _ in range(self.dim)]
        for c, u in enumerate(x.vec):
            if u:
                for b in range(self.dim):
                    for r, z in self._prod[b][c].items():
                        M[r][b] = M[r][b] + u * z
        return M

    def structure_rows(self):
        """Yield ``(i, j, [(k, coeff), ...])`` for all basis pairs."""
        for i in range(self.dim):
            for j in range(self.dim):
                yield i, j, sorted(self._prod[i][j].items())

    def generators(self) -> list[tuple[str, CycElement]]:
        gens = [("T_%d" % i, self.T(i)) for i in range(1, self.n)]
        gens.append(("L_1", self.L(1)))
        return gens

    def monomial(self, a, w) -> CycElement:
        """``L^a T_w`` for arbitrary (also negative) exponents."""
        x = self.basis_element(self.index[((0,) * self.n, tuple(w))])
        for k in range(self.n, 0, -1):
            if a[k - 1]:
                x = self.apply_L(k, x, a[k - 1])
        return x

    def apply_poly_L(self, f: Poly, x: CycElement) -> CycElement:
        """f(L_1, ..., L_n) * x."""
        out = self.zero
        for a, c in f.terms.items():
            y = x
            for k in range(self.n, 0, -1):
                if a[k - 1]:
                    y = self.apply_L(k, y, a[k - 1])
            out = out + y * c
        return out

    def apply_upoly(self, k: int, coeffs: list, x: CycElement) -> CycElement:
        """p(L_k) * x by Horner's rule."""
        out = self.zero
        for c in reversed(coeffs):
            out = self.apply_L(k, out) + x * c
        return out

    # -- verification helpers --------------------------------------------

    def check_relations(self) -> dict[str, bool]:
        """Defining relations of the quotient on the generator matrices."""
        out: dict[str, bool] = {}
        one = self.one
        q = self.H.q
        T, L = self.T, self.L
        f = self.apply_upoly(1, self.cyclotomic_poly, one)
        out["cyclotomic relation"] = f.is_zero()
        ok_quad = ok_braid = ok_far = ok_TL = ok_LL = True
        for i in range(1, self.n):
            if self.degenerate:
                ok_quad &= T(i) * T(i) == one
            else:
                ok_quad &= (T(i) - q) * (T(i) + 1) == 0
            if i + 1 < self.n:
                ok_braid &= T(i) * T(i + 1) * T(i) == T(i + 1) * T(i) * T(i + 1)
            for k in range(i + 2, self.n):
                ok_far &= T(i) * T(k) == T(k) * T(i)
            for k in range(1, self.n + 1):
                if k not in (i, i + 1):
                    ok_TL &= T(i) * L(k) == L(k) * T(i)
        for k in range(1, self.n + 1):
            for j in range(k + 1, self.n + 1):
                ok_LL &= L(k) * L(j) == L(j) * L(k)
        if self.n >= 2:
            if self.degenerate:
                ok_TL &= L(2) == T(1) * L(1) * T(1) + T(1)
            else:
                ok_TL &= L(2) * q == T(1) * L(1) * T(1)
        out.update({"quadratic": ok_quad, "braid": ok_braid, "distant": ok_far,
                    "T-L": ok_TL, "L commute": ok_LL})
        return out

    def generated_dimension(self) -> int:
        """Dimension of the matrix algebra generated by T_i and L_1 (closure of words)."""
        gens = [self._T[i] for i in range(1, self.n)] + [self._L[1]]
        space = RowSpace()
        ident = [{c: self.F.one} for c in range(self.dim)]
        frontier = [ident]
        space.add(self._flatten(ident))
        while frontier:
            nxt = []
            for M in frontier:
                for g in gens:
                    GM = [self._apply_cols(g, col) for col in M]
                    if space.add(self._flatten(GM)):
                        nxt.append(GM)
            frontier = nxt
        return len(space)

    @staticmethod
    def _flatten(cols: list[dict]) -> dict:
        return {(c, r): x for c, col in enumerate(cols) for r, x in col.items()}

    # -- spectral data ----------------------------------------------------

    def candidate_residues(self) -> list[int]:
        if self.F.e:
            return list(range(self.F.e))
        lo, hi = min(self.weight.kappa) - self.n, max(self.weight.kappa) + self.n
        return list(range(lo, hi + 1))

    def jm_spectral(self, r: int) -> dict:
        """Minimal polynomial of L_r and its primary decomposition."""
        if r in self._spectral:
            return self._spectral[r]
        F = self.F
        m = minpoly(F, self.dense(self._L[r]))
        mult = {}
        rest = m
        for j in self.candidate_residues():
            root = [-q_residue(F, j), F.one]
            k = 0
            while len(rest) > 1:
                quot, rem = upoly_divmod(rest, root)
                if rem:
                    break
                rest, k = quot, k + 1
            if k:
                mult[j] = k
        if len(rest) != 1:
            raise AssertionError("minimal polynomial of L_%d does not split over residues" % r)
        projectors = {}
        for j, k in mult.items():
            factor = [F.one]
            for _ in range(k):
                factor = upoly_mul(factor, [-q_residue(F, j), F.one])
            cofactor, rem = upoly_divmod(m, factor)
            g, u, _ = upoly_gcdex(cofactor, factor)
            assert g == [F.one]
            proj = upoly_divmod(upoly_mul(u, cofactor), m)[1]
            projectors[j] = proj
        self._spectral[r] = {"minpoly": m, "multiplicity": mult, "projectors": projectors}
        return self._spectral[r]

    def nilpotency_bound(self) -> int:
        return max(max(self.jm_spectral(r)["multiplicity"].values())
                   for r in range(1, self.n + 1))

    def idempotent(self, i: tuple[int, ...]) -> CycElement:
        i = tuple(self.F.reduce_residue(x) for x in i)
        if i in self._idem:
            return self._idem[i]
        x = self.one
        for r in range(self.n, 0, -1):
            proj = self.jm_spectral(r)["projectors"].get(i[r - 1])
            if proj is None:
                x = self.zero
                break
            x = self.apply_upoly(r, proj, x)
            if x.is_zero():
                break
        self._idem[i] = x
        return x

    def spectrum(self) -> set[tuple[int, ...]]:
        """Residue sequences with nonzero idempotent."""
        out = set()
        supports = [sorted(self.jm_spectral(r)["multiplicity"]) for r in range(1, self.n + 1)]
        for i in product(*supports):
            if not self.idempotent(i).is_zero():
                out.add(i)
        return out

    def idempotent_closed_formula(self, i, N: int, J=None) -> CycElement:
        """Product over r of ``prod_j (1 - ((q_{i_r} - L_r)/(q_{i_r} - q_j))^N)`` raised to N."""
        F = self.F
        i = tuple(F.reduce_residue(x) for x in i)
        if J is None:
            J = sorted({x for seq in self.spectrum() for x in seq})
        x = self.one
        for r in range(self.n, 0, -1):
            qi = q_residue(F, i[r - 1])
            poly = [F.one]
            for j in J:
                if F.reduce_residue(j) == i[r - 1]:
                    continue
                scale = 1 / (qi - q_residue(F, j))
                base = [qi * scale, -scale]      # (q_i - t)/(q_i - q_j)
                power = [F.one]
                for _ in range(N):
                    power = upoly_mul(power, base)
                factor = [F.one - (power[0] if power else 0)] + [-c for c in power[1:]]
                poly = upoly_mul(poly, factor)
            total = [F.one]
            for _ in range(N):
                total = upoly_mul(total, poly)
            # reduce modulo the minimal polynomial before evaluating
            total = upoly_divmod(total, self.jm_spectral(r)["minpoly"])[1]
            x = self.apply_upoly(r, total, x)
        return x

    # -- corner algebra inverses --------------------------------------------

    def inverse_in_corner(self, u: CycElement, e: CycElement, scalar=None) -> CycElement:
        """z in eHe with u z = e = z u, for u in eHe.

        When the scalar part of u on the block is known the inverse is a
        finite geometric series; otherwise a linear system is solved.
        """
        if e.is_zero():
            return self.zero
        if scalar is not None:
            c = self.F(scalar)
            if c == 0:
                raise ZeroDivisionError("zero scalar part")
            nu = e - u * (1 / c)
            term, z = e, e
            for _ in range(self.dim + 1):
                term = term * nu
                if term.is_zero():
                    break
                z = z + term
            else:
                raise ArithmeticError("scalar part does not make the remainder nilpotent")
            z = z * (1 / c)
        else:
            sol = solve(self.F, self.left_matrix(u), list(e.vec))
            if sol is None:
                raise ZeroDivisionError("element is not invertible in the corner algebra")
            z = e * CycElement(self, sol) * e
        if u * z != e:
            raise ZeroDivisionError("element is not invertible in the corner algebra")
        return z

    def block_rank(self, x: CycElement) -> int:
        return rank(self.F, self.left_matrix(x))


# -- module-level operations ----------------------------------------------

@lru_cache(maxsize=64)
def quotient(F: FieldSpec, n: int, weight: Weight) -> CyclotomicQuotient:
    """Shared, cached quotient for (F, n, weight)."""
    return CyclotomicQuotient(F, n, weight.reduced(F.e))


def project(u: AffineElement, A: CyclotomicQuotient) -> CycElement:
    """Image of an affine element in the cyclotomic quotient."""
    out = A.zero
    for w, f in u.terms.items():
        tw = A.basis_element(A.index[((0,) * A.n, w)])
        out = out + A.apply_poly_L(f, tw)
    return out


def idempotent(i, A: CyclotomicQuotient) -> CycElement:
    return A.idempotent(i)


def idempotent_closed_formula(i, A: CyclotomicQuotient, N: int, J=None) -> CycElement:
    return A.idempotent_closed_formula(i, N, J)


def blocks(A: CyclotomicQuotient) -> list[dict]:
    """Nonzero block idempotents with their dimensions; checks centrality."""
    groups: dict = {}
    for i in sorted(A.spectrum()):
        groups.setdefault(block_of(i), []).append(i)
    out = []
    gens = A.generators()
    for beta, seqs in sorted(groups.items()):
        eb = A.zero
        for i in seqs:
            eb = eb + A.idempotent(i)
        if eb * eb != eb:
            raise CentralityError("e(beta) is not idempotent for %s" % (beta,))
        for name, g in gens:
            if eb * g != g * eb:
                raise CentralityError("e(beta) for %s does not commute with %s" % (beta, name))
        out.append({"beta": beta, "idempotent": eb, "dim": A.block_rank(eb),
                    "sequences": seqs})
    return out


def pi_between(x: CycElement, target: CyclotomicQuotient) -> CycElement:
    """Image under the surjection to a quotient with smaller weight."""
    A = x.A
    if not A.weight.contains(target.weight) or A.n != target.n:
        raise ValueError("target weight must be contained in the source weight")
    out = target.zero
    for k, c in enumerate(x.vec):
        if c:
            a, w = A.basis[k]
            out = out + target.monomial(a, w) * c
    return out


def tableau_spectrum(A: CyclotomicQuotient) -> frozenset:
    return tableau_residues(A.n, A.weight.kappa, A.F.e)
