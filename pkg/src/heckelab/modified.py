"""Modified affine Hecke algebras as formal expressions.

Expressions are built from idempotent-routed atoms

* ``e(i)``                       the idempotent attached to a residue sequence
* ``T(r, i)``                    ``T_r e(i)`` (``s_r e(i)`` in degenerate mode);
  ``i=None`` means ``T_r e(beta)``
* ``X(k, p, i)``                 ``X_k^p e(i)``; again ``i=None`` allowed
* ``inv(r, s, b, i)``            ``(X_r - q^b X_s)^-1 e(i)``, degenerate
  ``(x_r - x_s - b)^-1 e(i)``, allowed when ``i_r != b + i_s``

and are given meaning in two independent ways: evaluation in a cyclotomic
quotient (a "probe") and the action on the localized polynomial module.

>>> from heckelab.fields import FieldSpec
>>> M = ModifiedAlgebra(FieldSpec.nondegenerate(3), 2, ((0, 1), (1, 1)))
>>> x = M.inv(1, 2, 0, (0, 1)) * (M.X(1, 1, (0, 1)) - M.X(2, 1, (0, 1)))
>>> M.equal(x, M.e((0, 1)))
True
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cyclotomic import (BlockLabel, CycElement, CyclotomicQuotient, Weight,
                         pi_between, quotient, residues_of_block)
from .expr import Atom, Expr, Sum, apply_expr
from .fields import FieldSpec, q_residue
from .linalg import RowSpace
from .perms import act_on_seq, all_perms, compose, reduced_word, s
from .poly import Poly

__all__ = [
    "ModifiedAlgebra", "ModExprError", "ProbeEvaluator", "LocalizedModuleElement",
    "block_label", "evaluate", "rho_hat", "relation_suite", "basis_independence",
    "center_candidate", "is_central_probe", "module_panel",
]


class ModExprError(ValueError):
    """An atom violates its side condition or cannot be evaluated."""


def block_label(spec) -> BlockLabel:
    """Normalize ``{res: mult}``, ``[(res, mult)]`` or ``"0:1,1:1"``."""
    if isinstance(spec, str):
        spec = [tuple(int(x) for x in part.split(":")) for part in spec.split(",") if part]
    if isinstance(spec, dict):
        spec = spec.items()
    out: dict = {}
    for res, mult in spec:
        if mult:
            out[res] = out.get(res, 0) + mult
    return tuple(sorted(out.items()))


class ModifiedAlgebra:
    """Expression builder for the modified algebra attached to a block."""

    def __init__(self, F: FieldSpec, n: int, beta, plus: bool = False):
        self.F = F
        self.n = n
        self.beta = block_label(beta)
        if sum(m for _, m in self.beta) != n:
            raise ModExprError("block %s does not have height %d" % (self.beta, n))
        self.beta = tuple((F.reduce_residue(j), m) for j, m in self.beta)
        self.beta = block_label(self.beta)
        self.degenerate = F.degenerate_mode
        self.plus = plus or self.degenerate
        self.seqs = residues_of_block(self.beta)
        self._seqset = set(self.seqs)
        self.q = F.one if self.degenerate else F.q

    # -- validation -----------------------------------------------------

    def _seq(self, i) -> tuple:
        if i is None:
            return None
        i = tuple(self.F.reduce_residue(x) for x in i)
        if i not in self._seqset:
            raise ModExprError("%s is not in I^beta for beta=%s" % (i, self.beta))
        return i

    def _index(self, k: int, upper: int) -> None:
        if not 1 <= k <= upper:
            raise ModExprError("index %d out of range 1..%d" % (k, upper))

    # -- atoms ----------------------------------------------------------

    def e(self, i) -> Atom:
        return Atom("e", (self._seq(i),))

    @property
    def ebeta(self) -> Expr:
        return Sum(tuple((1, self.e(i)) for i in self.seqs))

    def T(self, r: int, i=None) -> Atom:
        self._index(r, self.n - 1)
        return Atom("T", (r, self._seq(i)))

    s = T

    def X(self, k: int, p: int = 1, i=None) -> Expr:
        self._index(k, self.n)
        if p < 0 and self.plus:
            raise ModExprError("negative powers are not available here")
        if p == 0:
            return self.e(i) if i is not None else self.ebeta
        return Atom("X", (k, p, self._seq(i)))

    def x(self, k: int, i=None) -> Expr:
        return self.X(k, 1, i)

    def inv(self, r: int, s_: int, b: int, i) -> Atom:
        """``(X_r - q^b X_s)^-1 e(i)`` or ``(x_r - x_s - b)^-1 e(i)``."""
        self._index(r, self.n)
        self._index(s_, self.n)
        if r == s_:
            raise ModExprError("inverse atom needs r != s")
        i = self._seq(i)
        b = self.F.reduce_residue(b)
        if self.F.reduce_residue(i[r - 1] - b - i[s_ - 1]) == 0:
            raise ModExprError("(X_%d - q^%d X_%d) e(%s) is not invertible" % (r, b, s_, i))
        return Atom("inv", (r, s_, b, i))

    def routed_T(self, j, r: int, i) -> Expr:
        """``e(j) T_r e(i)``."""
        return self.e(j) * self.T(r, i)

    def T_word(self, w, i) -> Expr:
        """Routed product along the lex-least reduced word of w, ending in e(i)."""
        cur = self._seq(i)
        out = self.e(cur)
        for r in reversed(reduced_word(tuple(w))):
            nxt = act_on_seq(s(r, self.n), cur)
            out = self.routed_T(nxt, r, cur) * out
            cur = nxt
        return out

    def diff(self, r: int, s_: int, i, b: int = 0) -> Expr:
        """``(X_r - q^b X_s) e(i)`` (degenerate: ``(x_r - x_s - b) e(i)``)."""
        if self.degenerate:
            return self.X(r, 1, i) - self.X(s_, 1, i) - self.F(b) * self.e(i)
        return self.X(r, 1, i) - self.X(s_, 1, i) * (self.q ** b)

    # -- probes ---------------------------------------------------------

    def probe_weight(self, N: int) -> Weight:
        return Weight(tuple(j for j, _ in self.beta for _ in range(N)))

    def probe_panel(self, levels=(1, 2, 3), max_dim: int | None = None) -> list[Weight]:
        """Weights ``N * sum_{j in supp beta} Lambda_j``, optionally capped by dimension."""
        out = []
        for N in levels:
            w = self.probe_weight(N)
            if max_dim is not None and _dim(w.level, self.n) > max_dim and out:
                break
            out.append(w)
        return out

    def probe(self, weight: Weight) -> "ProbeEvaluator":
        return ProbeEvaluator(self, quotient(self.F, self.n, weight))

    def evaluate(self, x: Expr, weight: Weight) -> CycElement:
        return self.probe(weight).evaluate(x)

    def equal(self, x: Expr, y: Expr, weights=None, panel=None) -> bool:
        """Equal at every probe and as operators on the module test panel."""
        weights = self.probe_panel(max_dim=96) if weights is None else weights
        for w in weights:
            P = self.probe(w)
            if P.evaluate(x) != P.evaluate(y):
                return False
        panel = module_panel(self) if panel is None else panel
        return all(rho_hat(self, x, m) == rho_hat(self, y, m) for m in panel)


def _dim(ell: int, n: int) -> int:
    out = ell ** n
    for k in range(2, n + 1):
        out *= k
    return out


# -- probe evaluation --------------------------------------------------------

_PROBES: dict = {}


class ProbeEvaluator:
    """Evaluate expressions inside one cyclotomic quotient."""

    def __init__(self, M: ModifiedAlgebra, A: CyclotomicQuotient):
        self.M = M
        self.A = A
        key = (M.F, M.n, M.beta, A.weight)
        cache = _PROBES.setdefault(key, {})
        self._cols = cache

    def idem(self, i) -> CycElement:
        return self.A.idempotent(i)

    @property
    def ebeta(self) -> CycElement:
        out = self.A.zero
        for i in self.M.seqs:
            out = out + self.idem(i)
        return out

    def _left(self, key, build) -> list[dict]:
        cols = self._cols.get(key)
        if cols is None:
            cols = self.A.left_cols(build())
            self._cols[key] = cols
        return cols

    def inverse_atom(self, r, s_, b, i) -> CycElement:
        A, F = self.A, self.A.F
        e = self.idem(i)
        if self.M.degenerate:
            u = A.apply_L(r, e) - A.apply_L(s_, e) - e * F(b)
            scalar = F(i[r - 1]) - F(i[s_ - 1]) - F(b)
        else:
            u = A.apply_L(r, e) - A.apply_L(s_, e) * (F.q ** b)
            scalar = q_residue(F, i[r - 1]) - q_residue(F, i[s_ - 1]) * (F.q ** b)
        try:
            return A.inverse_in_corner(u, e, scalar)
        except (ZeroDivisionError, ArithmeticError) as exc:
            raise ModExprError("inverse atom (%d,%d,%d,%s) not invertible at weight %s"
                               % (r, s_, b, i, A.weight)) from exc

    def act(self, atom: Atom, z: CycElement) -> CycElement:
        A = self.A
        kind, args = atom.kind, atom.args
        if kind == "e":
            return A.apply_gen(self._left(("e", args[0]), lambda: self.idem(args[0])), z)
        if kind == "inv":
            return A.apply_gen(self._left(atom, lambda: self.inverse_atom(*args)), z)
        i = args[-1]
        if i is not None:
            z = self.act(Atom("e", (i,)), z)
        if kind == "T":
            return A.apply_T(args[0], z)
        if kind == "X":
            return A.apply_L(args[0], z, args[1])
        raise ModExprError("unknown atom %s" % (atom,))

    def evaluate(self, x: Expr) -> CycElement:
        return apply_expr(x, self.ebeta, self.act)


def evaluate(M: ModifiedAlgebra, x: Expr, weight: Weight) -> CycElement:
    return M.evaluate(x, weight)


# -- localized polynomial module ---------------------------------------------

Form = tuple  # (r, s, b) with r < s: t_r - q^b t_s, or t_r - t_s - b


@dataclass(frozen=True)
class _Frac:
    num: Poly
    den: tuple  # sorted ((form, exponent), ...)


class LocalizedModuleElement:
    """Element of the direct sum of localized polynomial rings, one per i.

    Each component is stored as a single fraction ``num / prod form^k``.
    """

    __slots__ = ("M", "comps")

    def __init__(self, M: ModifiedAlgebra, comps: dict):
        self.M = M
        self.comps = {i: f for i, f in comps.items() if f.num}

    @classmethod
    def basic(cls, M: ModifiedAlgebra, i, f: Poly | None = None) -> "LocalizedModuleElement":
        f = Poly.const(M.F, M.n) if f is None else f
        return cls(M, {tuple(i): _Frac(f, ())})

    # -- forms ----------------------------------------------------------

    def _form_poly(self, form: Form) -> Poly:
        M = self.M
        r, s_, b = form
        tr, ts = Poly.var(M.F, M.n, r), Poly.var(M.F, M.n, s_)
        if M.degenerate:
            return tr - ts - M.F(b)
        return tr - ts * (M.q ** b)

    @staticmethod
    def canonical_form(M: ModifiedAlgebra, r: int, s_: int, b: int):
        """Return ``(form, c)`` with ``t_r - q^b t_s = c * form`` and form[0] < form[1]."""
        b = M.F.reduce_residue(b)
        if r < s_:
            return (r, s_, b), M.F.one
        nb = M.F.reduce_residue(-b)
        if M.degenerate:
            return (s_, r, nb), -M.F.one
        return (s_, r, nb), -(M.q ** b)

    # -- arithmetic -----------------------------------------------------

    def _combine(self, f: _Frac, g: _Frac, sign) -> _Frac:
        df, dg = dict(f.den), dict(g.den)
        lcm = {k: max(df.get(k, 0), dg.get(k, 0)) for k in set(df) | set(dg)}
        a = f.num * self._den_poly({k: lcm[k] - df.get(k, 0) for k in lcm})
        b = g.num * self._den_poly({k: lcm[k] - dg.get(k, 0) for k in lcm})
        return _Frac(a + b * sign, tuple(sorted((k, v) for k, v in lcm.items() if v)))

    def _den_poly(self, exps: dict) -> Poly:
        out = Poly.const(self.M.F, self.M.n)
        for form, k in exps.items():
            for _ in range(k):
                out = out * self._form_poly(form)
        return out

    def _add(self, other, sign) -> "LocalizedModuleElement":
        out = dict(self.comps)
        for i, g in other.comps.items():
            if i in out:
                out[i] = self._combine(out[i], g, sign)
            else:
                out[i] = _Frac(g.num * sign, g.den)
        return LocalizedModuleElement(self.M, out)

    def __add__(self, other):
        return self._add(other, self.M.F.one)

    def __sub__(self, other):
        return self._add(other, -self.M.F.one)

    def __mul__(self, c):
        c = self.M.F(c)
        return LocalizedModuleElement(self.M, {i: _Frac(f.num * c, f.den)
                                               for i, f in self.comps.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        parts = []
        for i, f in sorted(self.comps.items()):
            den = "*".join("(%s)^%d" % (form, k) for form, k in f.den)
            parts.append("%s: (%r)/(%s)" % (i, f.num, den or "1"))
        return "{" + "; ".join(parts) + "}"

    # -- operators --------------------------------------------------------

    def restrict(self, i) -> "LocalizedModuleElement":
        return LocalizedModuleElement(self.M, {i: self.comps[i]} if i in self.comps else {})

    def mul_poly(self, f: Poly, i=None) -> "LocalizedModuleElement":
        return LocalizedModuleElement(self.M, {
            j: (_Frac(g.num * f, g.den) if i is None or j == i else g)
            for j, g in self.comps.items()})

    def divide_form(self, r: int, s_: int, b: int, i) -> "LocalizedModuleElement":
        """Divide the i-component by ``t_r - q^b t_s``; other components vanish."""
        if i not in self.comps:
            return LocalizedModuleElement(self.M, {})
        form, c = self.canonical_form(self.M, r, s_, b)
        g = self.comps[i]
        den = dict(g.den)
        den[form] = den.get(form, 0) + 1
        return LocalizedModuleElement(self.M, {i: _Frac(g.num * (1 / c), tuple(sorted(den.items())))})

    def _swap_frac(self, r: int, g: _Frac) -> _Frac:
        """Apply s_r to a fraction (variables and denominator forms)."""
        M = self.M
        sw = lambda k: r + 1 if k == r else (r if k == r + 1 else k)  # noqa: E731
        num = g.num.swap(r)
        den: dict = {}
        for (a, c, b), k in g.den:
            form, scale = self.canonical_form(M, sw(a), sw(c), b)
            den[form] = den.get(form, 0) + k
            num = num * ((1 / scale) ** k)
        return _Frac(num, tuple(sorted(den.items())))

    def apply_T(self, r: int, i=None) -> "LocalizedModuleElement":
        M, F = self.M, self.M.F
        t = lambda k: Poly.var(F, M.n, k)  # noqa: E731
        sr = s(r, M.n)
        out = LocalizedModuleElement(M, {})
        for j, g in self.comps.items():
            if i is not None and j != i:
                continue
            sg = self._swap_frac(r, g)
            if M.degenerate:
                lead = t(r + 1) - t(r) - F.one
                diag = Poly.const(F, M.n)
            else:
                lead = t(r + 1) - t(r) * M.q
                diag = t(r + 1) * (M.q - 1)
            part1 = LocalizedModuleElement(M, {act_on_seq(sr, j): _Frac(sg.num * lead, sg.den)})
            part1 = part1.divide_form(r + 1, r, 0, act_on_seq(sr, j))
            part2 = LocalizedModuleElement(M, {j: _Frac(g.num * diag, g.den)})
            part2 = part2.divide_form(r + 1, r, 0, j)
            out = out + part1 + part2
        return out


def rho_hat(M: ModifiedAlgebra, x: Expr, m: LocalizedModuleElement) -> LocalizedModuleElement:
    """Action of an expression on the localized polynomial module."""

    def act(atom: Atom, z: LocalizedModuleElement) -> LocalizedModuleElement:
        kind, args = atom.kind, atom.args
        if kind == "e":
            return z.restrict(args[0])
        if kind == "T":
            return z.apply_T(args[0], args[1])
        if kind == "X":
            k, p, i = args
            if i is not None:
                z = z.restrict(i)
            return z.mul_poly(Poly.var(M.F, M.n, k, p))
        if kind == "inv":
            r, s_, b, i = args
            return z.divide_form(r, s_, b, i)
        raise ModExprError("unknown atom %s" % (atom,))

    return apply_expr(x, m, act)


def module_panel(M: ModifiedAlgebra, size: int = 3) -> list[LocalizedModuleElement]:
    """Test vectors: a few monomials and one fraction in each component."""
    F, n = M.F, M.n
    out = []
    for i in M.seqs:
        polys = [Poly.const(F, n)]
        if n >= 1:
            polys.append(Poly.var(F, n, 1) * 2 + Poly.var(F, n, n, 2))
        if n >= 2 and size >= 3:
            polys.append(Poly.var(F, n, 1, 0 if M.plus else -1) * Poly.var(F, n, 2, 3))
        for f in polys[:size]:
            out.append(LocalizedModuleElement.basic(M, i, f))
        if n >= 2:
            frac = LocalizedModuleElement.basic(M, i, Poly.var(F, n, 2))
            out.append(frac.divide_form(1, 2, 0, i))
    return out


# -- relation suite ------------------------------------------------------------

def _relations(M: ModifiedAlgebra):
    """Yield ``(name, lhs, rhs)`` for the defining-type relations."""
    n, q = M.n, M.q
    e, T, X = M.e, M.T, M.X
    seqs = M.seqs
    deg = M.degenerate
    pows = (1,) if M.plus else (1, -1)
    tag = (lambda a, b: b) if deg else (lambda a, b: a)

    for i in seqs:
        for k in range(1, n + 1):
            for p in pows:
                yield tag("XkEi", "xkei"), X(k, p) * e(i), e(i) * X(k, p)
        for j in seqs:
            yield tag("XkEi", "xkei"), e(i) * e(j), (e(i) if i == j else Sum(()))
    for i in seqs:
        for r in range(1, n):
            if i[r - 1] == i[r]:
                continue
            lhs = e(i) * T(r) * (X(r + 1) - X(r)) * e(i)
            rhs = (e(i) if deg else (q - 1) * (e(i) * X(r + 1) * e(i)))
            yield tag("TX3", "sx3"), lhs, rhs
            yield tag("TX3", "sx3"), e(i) * T(r) * X(r) * e(i), e(i) * X(r) * T(r) * e(i)
            yield tag("TX3", "sx3"), e(i) * T(r) * X(r + 1) * e(i), e(i) * X(r + 1) * T(r) * e(i)
            if deg:
                yield "3.2c", e(i) * T(r) * e(i), M.inv(r + 1, r, 0, i)
            else:
                yield "3.2b", e(i) * T(r) * e(i), (q - 1) * (e(i) * X(r + 1) * M.inv(r + 1, r, 0, i))
    monos = [X(1)] + ([X(n, 2) * X(1)] if n > 1 else []) + ([] if M.plus else [X(1, -1)])
    for i in seqs:
        for j in seqs:
            if i != j:
                for f in monos:
                    yield tag("FEI", "fei"), e(i) * f * e(j), Sum(())
            for r in range(1, n):
                if i != j and i != act_on_seq(s(r, n), j):
                    yield tag("TREI", "sei"), e(i) * T(r) * e(j), Sum(())
    for i in seqs:
        for j in seqs:
            d = e(j) if i == j else Sum(())
            for r in range(1, n):
                if deg:
                    yield "ij5", e(i) * T(r) * T(r) * e(j), d
                    yield "ij5", e(i) * X(r + 1) * T(r) * e(j), e(i) * T(r) * X(r) * e(j) + d
                else:
                    yield "IJ5", e(i) * (T(r) - q) * (T(r) + 1) * e(j), Sum(())
                    yield "IJ5", e(i) * X(r + 1) * T(r) * e(j), \
                        e(i) * (T(r) * X(r) + (q - 1) * X(r + 1)) * e(j)
            for r in range(1, n - 1):
                yield tag("IJ5", "ij5"), e(i) * T(r) * T(r + 1) * T(r) * e(j), \
                    e(i) * T(r + 1) * T(r) * T(r + 1) * e(j)
            for r in range(1, n + 1):
                for k in range(1, n + 1):
                    for a in pows:
                        for b in pows:
                            yield tag("IJ5", "ij5"), e(i) * X(r, a) * X(k, b) * e(j), \
                                e(i) * X(k, b) * X(r, a) * e(j)
            if i == j and not M.plus:
                for k in range(1, n + 1):
                    yield "IJ5", e(i) * X(k) * X(k, -1) * e(i), e(i)
                    yield "IJ5", e(i) * X(k, -1) * X(k) * e(i), e(i)
            for a in range(1, n):
                for k in range(a + 2, n):
                    yield tag("IJ5a", "ij5a"), e(i) * T(a) * T(k) * e(j), e(i) * T(k) * T(a) * e(j)
                for k in range(1, n + 1):
                    if k not in (a, a + 1):
                        yield tag("IJ5b", "ij5b"), e(i) * T(a) * X(k) * e(j), e(i) * X(k) * T(a) * e(j)
    for i in seqs:
        for r in range(1, n):
            if i[r - 1] != i[r]:
                continue
            if deg:
                yield "newrel2", e(i) * T(r) * e(i) * T(r) * e(i), e(i)
            else:
                # T_r^-1 = q^-1 (T_r - (q-1))
                Tinv = (1 / q) * (T(r) - (q - 1) * M.ebeta)
                yield "newrel1", e(i) * T(r) * e(i) * Tinv * e(i), e(i)
                yield "newrel1", e(i) * Tinv * e(i) * T(r) * e(i), e(i)


def relation_suite(M: ModifiedAlgebra, weights=None, panel=None) -> dict:
    """Check every relation under probe evaluation and under the module action.

    Returns ``{"pass": bool, "relations": {name: {"checked", "probe", "module"}},
    "failures": [...]}``.
    """
    weights = M.probe_panel(max_dim=96) if weights is None else weights
    probes = [M.probe(w) for w in weights]
    panel = module_panel(M) if panel is None else panel
    table: dict = {}
    failures = []
    for name, lhs, rhs in _relations(M):
        row = table.setdefault(name, {"checked": 0, "probe": True, "module": True})
        row["checked"] += 1
        for P in probes:
            if P.evaluate(lhs) != P.evaluate(rhs):
                row["probe"] = False
                failures.append({"relation": name, "semantics": "probe",
                                 "weight": str(P.A.weight), "lhs": str(lhs)})
                break
        for m in panel:
            if rho_hat(M, lhs, m) != rho_hat(M, rhs, m):
                row["module"] = False
                failures.append({"relation": name, "semantics": "module", "lhs": str(lhs)})
                break
    return {"pass": not failures, "relations": table, "failures": failures}


# -- standard basis ------------------------------------------------------------

def basis_family(M: ModifiedAlgebra, A: int = 1, B: int = 1):
    """Yield ``(label, expr)`` for the standard family with bounded exponents."""
    n = M.n
    pairs = [(r, t) for r in range(1, n + 1) for t in range(r + 1, n + 1)]
    lo = 0 if M.plus else -A
    for i in M.seqs:
        live = [(r, t) for r, t in pairs if i[r - 1] != i[t - 1]]
        for w in all_perms(n):
            head = M.T_word(w, i)
            for a in product(range(lo, A + 1), repeat=n):
                for b in product(range(B + 1), repeat=len(live)):
                    if not all(_allowed(M, a, r, t) for (r, t), bb in zip(live, b) if bb):
                        continue
                    body = head
                    for k, ak in enumerate(a, start=1):
                        if ak:
                            body = body * M.X(k, ak, i)
                    for (r, t), bb in zip(live, b):
                        for _ in range(bb):
                            body = body * M.inv(r, t, 0, i)
                    yield (w, i, a, b), body


def _allowed(M: ModifiedAlgebra, a, r: int, t: int) -> bool:
    ar, at = a[r - 1], a[t - 1]
    if M.plus:
        return at == 0
    return (ar == 0 >= at) or (ar > 0 == at)


def _cleared_vector(M: ModifiedAlgebra, m: LocalizedModuleElement, common: dict) -> dict:
    vec = {}
    for i, f in m.comps.items():
        den = dict(f.den)
        scale = m._den_poly({k: common[k] - den.get(k, 0) for k in common})
        for a, c in (f.num * scale).terms.items():
            vec[(i, a)] = c
    return vec


def _basis_panel(M: ModifiedAlgebra) -> list[Poly]:
    """Source vectors separating the family: 1 and two monomials with trivial stabilizer."""
    F, n = M.F, M.n
    down = Poly.monomial(F, tuple(range(n, 0, -1)))
    up = Poly.monomial(F, tuple(2 * k for k in range(1, n + 1)))
    return [Poly.const(F, n), down, up]


def basis_independence(M: ModifiedAlgebra, A: int = 1, B: int = 1, duplicate: bool = False) -> dict:
    """Linear independence of the bounded standard family as operators on the module.

    Each member acts on a small panel of vectors in its source component and
    the results are concatenated. Denominators are cleared by their least
    common multiple and ranks are computed on the numerator coefficients.
    """
    members = list(basis_family(M, A, B))
    if duplicate and members:
        members.append(members[-1])
    panel = _basis_panel(M)
    images = [[rho_hat(M, x, LocalizedModuleElement.basic(M, label[1], f)) for f in panel]
              for label, x in members]
    common: dict = {}
    for row in images:
        for m in row:
            for f in m.comps.values():
                for form, k in f.den:
                    common[form] = max(common.get(form, 0), k)
    space = RowSpace()
    dependent = []
    for (label, _), row in zip(members, images):
        vec = {}
        for slot, m in enumerate(row):
            vec.update({(slot,) + key: c for key, c in _cleared_vector(M, m, common).items()})
        if not space.add(vec):
            dependent.append(label)
    return {"pass": not dependent, "size": len(members), "rank": len(space),
            "panel": len(panel),
            "clearing": {str(k): v for k, v in sorted(common.items())},
            "dependent": [str(d) for d in dependent]}


# -- center candidates ---------------------------------------------------------

def _coset_reps(n: int, i, a: int, b: int):
    """Minimal representatives of left cosets of the stabilizer of (i, a, b)."""
    stab = [w for w in all_perms(n)
            if act_on_seq(w, i) == tuple(i) and w[a - 1] == a - 1 and w[b - 1] == b - 1]
    seen, reps = set(), []
    for d in sorted(all_perms(n)):
        coset = frozenset(compose(d, h) for h in stab)
        if coset not in seen:
            seen.add(coset)
            reps.append(d)
    return reps


def center_candidate(M: ModifiedAlgebra, f, exponents: dict | None = None) -> Expr:
    """Central element from a symmetric tuple ``f = {i: Poly}`` and exponents ``{rep: a}``.

    The tuple must satisfy ``f[s_r i] = s_r(f[i])``.
    """
    n = M.n
    f = {tuple(i): g for i, g in f.items()}
    for i in M.seqs:
        if i not in f:
            raise ModExprError("symmetric tuple has no entry for %s" % (i,))
        for r in range(1, n):
            if f[act_on_seq(s(r, n), i)] != f[i].swap(r):
                raise ModExprError("tuple is not symmetric at %s, r=%d" % (i, r))
    body = Sum(tuple((1, _poly_expr(M, f[i], i)) for i in M.seqs))
    exponents = exponents or {}
    if not any(exponents.values()):
        return body
    prefactor = Sum(())
    for rep, ai in sorted(exponents.items()):
        if not ai:
            continue
        rep = tuple(rep)
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                if rep[a - 1] == rep[b - 1]:
                    continue
                by_target: dict = {}
                for d in _coset_reps(n, rep, a, b):
                    by_target.setdefault(act_on_seq(d, rep), []).append(d)
                for k, ds in sorted(by_target.items()):
                    term = M.e(k)
                    for d in ds:
                        for _ in range(ai):
                            term = term * M.inv(d[a - 1] + 1, d[b - 1] + 1, 0, k)
                    prefactor = prefactor + term
    return prefactor * body


def _poly_expr(M: ModifiedAlgebra, f: Poly, i) -> Expr:
    out = Sum(())
    for a, c in sorted(f.terms.items()):
        term = M.e(i)
        for k, ak in enumerate(a, start=1):
            if ak:
                term = M.X(k, ak, i) * term
        out = out + c * term
    return out


def generator_atoms(M: ModifiedAlgebra) -> list[tuple[str, Expr]]:
    out = []
    for i in M.seqs:
        out.append(("e%s" % (i,), M.e(i)))
        for r in range(1, M.n):
            out.append(("T_%d e%s" % (r, i), M.T(r, i)))
        for k in range(1, M.n + 1):
            out.append(("X_%d e%s" % (k, i), M.X(k, 1, i)))
    return out


def is_central_probe(M: ModifiedAlgebra, z: Expr, weights=None, panel=None) -> dict:
    """Commutation with every generator, at probes and on the module panel."""
    weights = M.probe_panel(max_dim=96) if weights is None else weights
    panel = module_panel(M) if panel is None else panel
    probes = [M.probe(w) for w in weights]
    for name, g in generator_atoms(M):
        for P in probes:
            if P.evaluate(z * g) != P.evaluate(g * z):
                return {"pass": False, "witness": name, "semantics": "probe",
                        "weight": str(P.A.weight)}
        for m in panel:
            if rho_hat(M, z * g, m) != rho_hat(M, g * z, m):
                return {"pass": False, "witness": name, "semantics": "module"}
    return {"pass": True, "witness": None}


def probe_coherence(M: ModifiedAlgebra, x: Expr, big: Weight, small: Weight) -> bool:
    """``pi_between(evaluate(x, big), small) == evaluate(x, small)``."""
    return pi_between(M.evaluate(x, big), quotient(M.F, M.n, small)) == M.evaluate(x, small)


__all__ += ["basis_family", "generator_atoms", "probe_coherence"]
