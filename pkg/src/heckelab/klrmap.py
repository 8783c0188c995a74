"""KLR generators inside a block of a cyclotomic Hecke algebra.

The images of ``e(i)``, ``y_r`` and ``psi_r`` are built from the explicit
formulas on the modified algebra side, evaluated in the quotient, and then
cross-checked against the power-series form ``(T_r + P_r(i)) Q_r(i)^-1 e(i)``.

>>> from heckelab.fields import FieldSpec
>>> from heckelab.cyclotomic import Weight
>>> S = KLRImageSet(FieldSpec.nondegenerate(3), 2, Weight((0,)), "0:1,1:1")
>>> verify_klr_relations(S)["pass"], theta_matches_bk(S)["pass"]
(True, True)
"""

from __future__ import annotations

import warnings
from itertools import product

from .cyclotomic import CycElement, Weight, quotient
from .expr import Atom, Expr, Sum, apply_expr
from .fields import FieldSpec, q_residue
from .linalg import RowSpace
from .modified import ModExprError, ModifiedAlgebra, ProbeEvaluator
from .perms import act_on_seq, all_perms, reduced_word, s
from .poly import Poly

__all__ = [
    "KLRImageSet", "KLRError", "y_image", "pq_polys", "qri_identity",
    "theta_expr", "theta_generator_images", "theta_matches_bk", "bk_psi",
    "eta_expr", "eta_generator_images", "mutual_inverse_check",
    "verify_klr_relations", "klr_spanning_check", "truncation_stability", "arrow",
    "case_of", "pq_series", "sign_repair", "KLREvaluator",
]


class KLRError(ArithmeticError):
    """A factor that must be a unit on an e(i)-corner is not."""


def arrow(F: FieldSpec, a: int, b: int) -> bool:
    """Edge ``a -> b`` of the quiver, i.e. ``b = a + 1`` (mod e)."""
    return F.reduce_residue(b - a - 1) == 0


class KLRImageSet:
    """Images of e(i), y_r e(i), psi_r e(i) in e(beta) H_n^Lambda.

    ``PSI`` holds the images computed from the modified-algebra formulas;
    the series form is available through :func:`bk_psi`.
    """

    def __init__(self, F: FieldSpec, n: int, weight: Weight, beta,
                 truncation: int | None = None, negate: frozenset = frozenset()):
        self.F = F
        self.negate = frozenset(negate)
        self.n = n
        self.weight = weight.reduced(F.e)
        self.M = ModifiedAlgebra(F, n, beta)
        self.beta = self.M.beta
        self.mode = F.mode
        self.A = quotient(F, n, self.weight)
        self.probe = ProbeEvaluator(self.M, self.A)
        self.seqs = self.M.seqs
        self.E = {i: self.A.idempotent(i) for i in self.seqs}
        if all(x.is_zero() for x in self.E.values()):
            raise KLRError("e(beta) is zero for beta=%s at weight %s" % (self.beta, self.weight))
        nb = self.A.nilpotency_bound()
        self.nilpotency = nb
        self.truncation = 2 * (nb - 1) if truncation is None else truncation
        self.Y = {}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for i in self.seqs:
                for r in range(1, n + 1):
                    self.Y[(r, i)] = y_image(self, r, i)
        self.PSI = {}
        for i in self.seqs:
            for r in range(1, n):
                x = self.probe.evaluate(theta_expr(self.M, ("psi", r, i)))
                self.PSI[(r, i)] = -x if case_of(F, i, r) in self.negate else x
        self._cols: dict = {}

    @property
    def ebeta(self) -> CycElement:
        out = self.A.zero
        for x in self.E.values():
            out = out + x
        return out

    @property
    def dim(self) -> int:
        return self.A.block_rank(self.ebeta)

    def nonzero_seqs(self) -> list:
        return [i for i in self.seqs if not self.E[i].is_zero()]

    def left(self, key, element: CycElement) -> list[dict]:
        cols = self._cols.get(key)
        if cols is None:
            cols = self._cols[key] = self.A.left_cols(element)
        return cols

    def apply_y(self, r: int, i, z: CycElement) -> CycElement:
        return self.A.apply_gen(self.left(("y", r, i), self.Y[(r, i)]), z)

    def apply_poly(self, f: Poly, r: int, i, z: CycElement) -> CycElement:
        """``f(y_r, y_{r+1}) z`` for z in e(i)H."""
        if not f.terms:
            return self.A.zero
        top_u = max(a for a, _ in f.terms)
        top_v = max(b for _, b in f.terms)
        powers = [z]
        for _ in range(top_v):
            powers.append(self.apply_y(r + 1, i, powers[-1]))
        acc = self.A.zero
        for a in range(top_u, -1, -1):
            acc = self.apply_y(r, i, acc)
            for (ea, eb), c in f.terms.items():
                if ea == a:
                    acc = acc + powers[eb] * c
        return acc


# -- y images ---------------------------------------------------------------

def y_image(S: KLRImageSet, r: int, i) -> CycElement:
    """``(1 - q^-i_r L_r) e(i)``, or ``(L_r - i_r) e(i)`` in degenerate mode."""
    A, F = S.A, S.F
    e = S.E[i]
    if e.is_zero():
        warnings.warn("e(%s) is zero at weight %s" % (i, S.weight))
        return A.zero
    Le = A.apply_L(r, e)
    if F.degenerate_mode:
        return Le - e * F(i[r - 1])
    return e - Le * (1 / q_residue(F, i[r - 1]))


# -- P and Q as truncated series in (u, v) = (y_r, y_{r+1}) -------------------

def case_of(F: FieldSpec, i, r: int) -> str:
    """``"same"`` (i_r = i_{r+1}), ``"down"`` (i_r = i_{r+1} + 1) or ``"other"``."""
    a, b = i[r - 1], i[r]
    if F.reduce_residue(a - b) == 0:
        return "same"
    return "down" if F.reduce_residue(a - b - 1) == 0 else "other"


def _truncate(f: Poly, degree: int) -> Poly:
    return Poly(f.F, 2, {a: c for a, c in f.terms.items() if sum(a) <= degree})


def _geometric(z: Poly, degree: int) -> Poly:
    """``sum_{k <= degree} z^k`` truncated; z has no constant term."""
    out = Poly.const(z.F, 2)
    power = Poly.const(z.F, 2)
    for _ in range(degree):
        power = _truncate(power * z, degree)
        if not power.terms:
            break
        out = out + power
    return out


def pq_series(F: FieldSpec, i, r: int, degree: int, negate=()) -> tuple[Poly, Poly]:
    """P_r(i) and Q_r(i) as polynomials in ``u = y_r``, ``v = y_{r+1}``.

    >>> F = FieldSpec.degenerate(0)
    >>> P, Q = pq_series(F, (0, 2), 1, 0)
    >>> P
    (-1/2)
    """
    one = Poly.const(F, 2)
    u, v = Poly.var(F, 2, 1), Poly.var(F, 2, 2)
    a, b = i[r - 1], i[r]
    same = F.reduce_residue(a - b) == 0
    down = F.reduce_residue(a - b - 1) == 0      # i_r = i_{r+1} + 1
    if F.degenerate_mode:
        if same:
            P = one
        else:
            d = F(a) - F(b)
            P = _geometric((u - v) * (1 / -d), degree) * (1 / d)
        if same:
            Q = one + v - u
        elif down:
            Q = _geometric(v - u, degree)
        else:
            Q = P - one
    else:
        q = F.q
        qa, qb = q_residue(F, a), q_residue(F, b)
        if same:
            P = one
        else:
            Z = (v * qb - u * qa) * (1 / (qb - qa))
            inner = (u - v) * (1 / (1 - qb / qa)) * _geometric(Z, degree)
            P = (one + _truncate(inner, degree)) * ((1 - q) / (1 - qa / qb))
        if same:
            Q = one * (1 - q) + v * q - u
        elif down:
            Q = _geometric((v - u * q) * (1 / (1 - q)), degree) * (1 / (1 - 1 / q))
        else:
            Q = P - one
    if case_of(F, i, r) in negate:
        Q = -Q
    return _truncate(P, degree), _truncate(Q, degree)


def pq_polys(S: KLRImageSet, r: int, i, degree: int | None = None) -> tuple[CycElement, CycElement]:
    """P_r(i) e(i) and Q_r(i) e(i) as elements of the quotient."""
    degree = S.truncation if degree is None else degree
    P, Q = pq_series(S.F, i, r, degree, S.negate)
    e = S.E[i]
    return S.apply_poly(P, r, i, e), S.apply_poly(Q, r, i, e)


def _scalar(f: Poly):
    return f.terms.get((0, 0), f.F.zero)


def qri_identity(S: KLRImageSet, r: int, i) -> str:
    """Which sign makes ``P_r(i) - 1 = Q_r(i) (y_r - y_{r+1})`` hold.

    Returns ``"as stated"``, ``"reversed"``, ``"both"`` (only when the
    difference vanishes) or ``"neither"``; meaningful when i_r = i_{r+1} + 1.
    """
    P, Q = pq_polys(S, r, i)
    lhs = P - S.E[i]
    diff = S.apply_y(r, i, Q) - S.apply_y(r + 1, i, Q)
    stated, reversed_ = lhs == diff, lhs == -diff
    if stated and reversed_:
        return "both"
    return "as stated" if stated else "reversed" if reversed_ else "neither"


def bk_psi(S: KLRImageSet, r: int, i, degree: int | None = None) -> CycElement:
    """``(T_r + P_r(i)) Q_r(i)^-1 e(i)`` (``s_r`` in degenerate mode)."""
    degree = S.truncation if degree is None else degree
    e = S.E[i]
    if e.is_zero():
        return S.A.zero
    Pf, Qf = pq_series(S.F, i, r, degree, S.negate)
    Q = S.apply_poly(Qf, r, i, e)
    try:
        Qinv = S.A.inverse_in_corner(Q, e, _scalar(Qf))
    except (ZeroDivisionError, ArithmeticError) as exc:
        raise KLRError("Q_%d(%s) is not a unit on its corner" % (r, i)) from exc
    return S.A.apply_T(r, Qinv) + S.apply_poly(Pf, r, i, Qinv)


# -- theta: KLR generators as modified-algebra expressions ---------------------

def theta_expr(M: ModifiedAlgebra, gen) -> Expr:
    """Expression for a KLR generator ``("e", i)``, ``("y", s, i)`` or ``("psi", r, i)``."""
    kind, *args = gen
    F = M.F
    if kind == "e":
        return M.e(args[0])
    if kind == "y":
        k, i = args
        if M.degenerate:
            return M.X(k, 1, i) - M.e(i) * F(i[k - 1])
        return M.e(i) - M.X(k, 1, i) * (1 / q_residue(F, i[k - 1]))
    r, i = args
    a, b = i[r - 1], i[r]
    same = F.reduce_residue(a - b) == 0
    down = F.reduce_residue(a - b - 1) == 0
    Tr = M.T(r, i)
    if M.degenerate:
        if same:
            return (Tr + M.e(i)) * M.inv(r + 1, r, -1, i)
        body = Tr * (M.X(r, 1, i) - M.X(r + 1, 1, i)) + M.e(i)
        return body if down else body * M.inv(r + 1, r, -1, i)
    q = M.q
    if same:
        return (Tr + M.e(i)) * M.inv(r, r + 1, 1, i) * q_residue(F, a)
    if down:
        body = Tr * (M.X(r, 1, i) - M.X(r + 1, 1, i)) + M.X(r + 1, 1, i) * (q - 1)
        return body * (1 / q_residue(F, a))
    body = Tr * (M.X(r + 1, 1, i) - M.X(r, 1, i)) + M.X(r + 1, 1, i) * (1 - q)
    return body * M.inv(r, r + 1, 1, i)


def theta_generator_images(F: FieldSpec, n: int, weight: Weight, beta) -> KLRImageSet:
    return KLRImageSet(F, n, weight, beta)


def theta_matches_bk(S: KLRImageSet) -> dict:
    """Compare both constructions of psi_r e(i) for every r and i."""
    mismatches = []
    for (r, i), x in sorted(S.PSI.items()):
        if x != bk_psi(S, r, i):
            mismatches.append({"r": r, "i": list(i)})
    return {"pass": not mismatches, "checked": len(S.PSI), "mismatches": mismatches}


# -- eta: modified-algebra atoms as KLR expressions -----------------------------

def _k(kind, *args) -> Atom:
    return Atom(kind, args)


def _kE(i) -> Atom:
    return _k("E", i)


def _ky(r, i) -> Atom:
    return _k("y", r, i)


def _kpsi(r, i) -> Atom:
    return _k("psi", r, i)


def _kinv(x: Expr, i, scalar) -> Atom:
    """Inverse of x on the e(i) corner; ``scalar`` is its constant part."""
    return _k("cinv", x, i, scalar)


def _sum(parts) -> Expr:
    parts = list(parts)
    return Sum(tuple((1, p) for p in parts))


def eta_expr(M: ModifiedAlgebra, atom: Atom) -> Expr:
    """KLR expression for one modified-algebra atom."""
    F = M.F
    kind, args = atom.kind, atom.args
    if kind == "e":
        return _kE(args[0])
    i = args[-1]
    if i is None:
        return _sum(eta_expr(M, Atom(kind, args[:-1] + (j,))) for j in M.seqs)
    if kind == "X":
        k, p = args[0], args[1]
        if p == 0:
            return _kE(i)
        one = _x_image(M, k, i, 1 if p > 0 else -1)
        out = one
        for _ in range(abs(p) - 1):
            out = out * one
        return out
    if kind == "inv":
        r, s_, b, _ = args
        if M.degenerate:
            x = _x_image(M, r, i, 1) - _x_image(M, s_, i, 1) - _kE(i) * F(b)
            scalar = F(i[r - 1]) - F(i[s_ - 1]) - F(b)
        else:
            qb = M.q ** b
            x = _x_image(M, r, i, 1) - _x_image(M, s_, i, 1) * qb
            scalar = q_residue(F, i[r - 1]) - q_residue(F, i[s_ - 1]) * qb
        return _kinv(x, i, scalar)
    if kind == "T":
        return _t_image(M, args[0], i)
    raise ModExprError("unknown atom %s" % (atom,))


def _x_image(M: ModifiedAlgebra, k: int, i, sign: int) -> Expr:
    F = M.F
    e, y = _kE(i), _ky(k, i)
    if M.degenerate:
        if sign < 0:
            raise ModExprError("degenerate x has no inverse")
        return y + e * F(i[k - 1])
    qi = q_residue(F, i[k - 1])
    if sign > 0:
        return (e - y) * qi
    return _kinv(e - y, i, F.one) * (1 / qi)


def _t_image(M: ModifiedAlgebra, r: int, i) -> Expr:
    F = M.F
    e, u, v, psi = _kE(i), _ky(r, i), _ky(r + 1, i), _kpsi(r, i)
    a, b = i[r - 1], i[r]
    same = F.reduce_residue(a - b) == 0
    down = F.reduce_residue(a - b - 1) == 0
    if M.degenerate:
        if same:
            return psi * (e + v - u) - e
        if down:
            return (psi - e) * _kinv(e - v + u, i, F.one)
        d = F(a) - F(b)
        D = e * d - v + u
        inv = _kinv(D, i, d)
        return psi * (e * (1 - d) + v - u) * inv - inv
    q = M.q
    qa, qb = q_residue(F, a), q_residue(F, b)
    if same:
        return psi * (e * (1 - q) + v * q - u) - e
    if down:
        left = psi * q - (e - v) * (q - 1)
        return left * _kinv((e - u) * q - (e - v), i, q - 1)
    D = e * (qb - qa) + u * qa - v * qb
    inv = _kinv(D, i, qb - qa)
    first = psi * (e * (qa - qb * q) - u * qa + v * (qb * q)) * inv
    return first - (e - v) * inv * ((1 - q) * qb)


class KLREvaluator:
    """Interpret KLR atoms through a table of images in the quotient."""

    def __init__(self, S: KLRImageSet, psi: dict | None = None):
        self.S = S
        self.psi = S.PSI if psi is None else psi
        self._cols: dict = {}

    def _left(self, key, build) -> list[dict]:
        cols = self._cols.get(key)
        if cols is None:
            cols = self._cols[key] = self.S.A.left_cols(build())
        return cols

    def _element(self, atom: Atom) -> CycElement:
        S = self.S
        kind, args = atom.kind, atom.args
        if kind == "E":
            return S.E[args[0]]
        if kind == "y":
            return S.Y[args]
        if kind == "psi":
            return self.psi[args]
        if kind == "cinv":
            x, i, scalar = args
            e = S.E[i]
            u = apply_expr(x, e, self.act)
            try:
                return S.A.inverse_in_corner(u, e, scalar)
            except (ZeroDivisionError, ArithmeticError) as exc:
                raise KLRError("corner inverse failed for e(%s)" % (i,)) from exc
        raise ModExprError("unknown KLR atom %s" % (atom,))

    def act(self, atom: Atom, z: CycElement) -> CycElement:
        return self.S.A.apply_gen(self._left(atom, lambda: self._element(atom)), z)

    def evaluate(self, x: Expr) -> CycElement:
        return apply_expr(x, self.S.ebeta, self.act)


def eta_generator_images(S: KLRImageSet) -> dict:
    """Evaluate eta on every Hecke-side generator; keys name the generator."""
    M, ev = S.M, KLREvaluator(S)
    out = {}
    for name, atom in _hecke_generators(S):
        out[name] = ev.evaluate(eta_expr(M, atom))
    return out


def _hecke_generators(S: KLRImageSet):
    M = S.M
    for i in S.seqs:
        tag = ",".join(map(str, i))
        yield "e(%s)" % tag, M.e(i)
        for k in range(1, S.n + 1):
            yield "X_%d e(%s)" % (k, tag), M.X(k, 1, i)
            if not M.degenerate:
                yield "X_%d^-1 e(%s)" % (k, tag), M.X(k, -1, i)
        for r in range(1, S.n):
            yield "T_%d e(%s)" % (r, tag), M.T(r, i)


def _klr_generators(S: KLRImageSet):
    for i in S.seqs:
        tag = ",".join(map(str, i))
        yield "e(%s)" % tag, ("e", i)
        for k in range(1, S.n + 1):
            yield "y_%d e(%s)" % (k, tag), ("y", k, i)
        for r in range(1, S.n):
            yield "psi_%d e(%s)" % (r, tag), ("psi", r, i)


def mutual_inverse_check(S: KLRImageSet) -> dict:
    """theta(eta(g)) = g on Hecke generators and eta(theta(g)) = g on KLR generators.

    The second composition is compared with the series-form images, so the
    two constructions of psi are tested against each other as well.
    """
    M = S.M
    klr = KLREvaluator(S)
    failures = []
    count = 0
    for name, atom in _hecke_generators(S):
        count += 1
        if klr.evaluate(eta_expr(M, atom)) != S.probe.evaluate(atom):
            failures.append("theta.eta on " + name)
    bk = {key: bk_psi(S, *key) for key in S.PSI}
    klr_bk = KLREvaluator(S, psi=bk)

    def via_eta(atom: Atom, z):
        return apply_expr(eta_expr(M, atom), z, klr_bk.act)

    for name, gen in _klr_generators(S):
        count += 1
        got = apply_expr(theta_expr(M, gen), S.ebeta, via_eta)
        kind = gen[0]
        want = (S.E[gen[1]] if kind == "e"
                else S.Y[gen[1:]] if kind == "y" else bk[gen[1:]])
        if got != want:
            failures.append("eta.theta on " + name)
    return {"pass": not failures, "checked": count, "failures": failures}


# -- KLR relations --------------------------------------------------------------

def _swap(i, r):
    return act_on_seq(s(r, len(i)), i)


def verify_klr_relations(S: KLRImageSet) -> dict:
    """Check the quiver Hecke relations and the cyclotomic relation exactly.

    Failures carry the number of nonzero coordinates of the residual. When a
    psi-squared or braid instance fails but holds with every arrow reversed,
    that is recorded under ``reversed_arrows``.
    """
    n, A = S.n, S.A
    E, Y, PSI = S.E, S.Y, S.PSI
    failures, reversed_hits = [], []
    checked = 0

    def record(name, i, residual, alt=None):
        nonlocal checked
        checked += 1
        if residual.is_zero():
            return
        if alt is not None and alt.is_zero():
            reversed_hits.append({"relation": name, "i": list(i)})
        failures.append({"relation": name, "i": list(i) if i is not None else None,
                         "residual": residual.support_size()})

    eb = S.ebeta
    record("sum e(i) = 1", None, eb * eb - eb)
    for name, g in A.generators():
        record("sum e(i) central (%s)" % name, None, eb * g - g * eb)
    for i in S.seqs:
        for j in S.seqs:
            want = E[i] if i == j else A.zero
            record("e(i)e(j)", i, E[i] * E[j] - want)
        for r in range(1, n + 1):
            record("y e(i) = e(i) y", i, E[i] * Y[(r, i)] - Y[(r, i)] * E[i])
            for t in range(r + 1, n + 1):
                record("y_r y_s", i, Y[(r, i)] * Y[(t, i)] - Y[(t, i)] * Y[(r, i)])
        for r in range(1, n):
            j = _swap(i, r)
            x = PSI[(r, i)]
            record("psi e(i) = e(s i) psi", i, E[j] * x - x)
            record("psi e(i) = psi e(i) e(i)", i, x * E[i] - x)
            delta = E[i] if i[r - 1] == i[r] else A.zero
            record("psi y_{r+1}", i, x * Y[(r + 1, i)] - Y[(r, j)] * x - delta)
            record("y_{r+1} psi", i, Y[(r + 1, j)] * x - x * Y[(r, i)] - delta)
            for t in range(1, n + 1):
                if t not in (r, r + 1):
                    record("psi_r y_s", i, x * Y[(t, i)] - Y[(t, j)] * x)
            for t in range(r + 2, n):
                lhs = PSI[(r, _swap(i, t))] * PSI[(t, i)]
                rhs = PSI[(t, j)] * PSI[(r, i)]
                record("psi_r psi_s", i, lhs - rhs)
            sq = PSI[(r, j)] * x
            record("psi^2", i, sq - _square_rhs(S, r, i, False),
                   sq - _square_rhs(S, r, i, True))
            if r + 1 < n:
                lhs, rhs = _braid_sides(S, r, i)
                record("braid", i, lhs - rhs - _braid_rhs(S, r, i, False),
                       lhs - rhs - _braid_rhs(S, r, i, True))
        if not E[i].is_zero():
            m = S.weight.multiplicity(i[0])
            record("cyclotomic", i, Y[(1, i)] ** m * E[i] if m else E[i])
    return {"pass": not failures, "checked": checked, "failures": failures,
            "reversed_arrows": reversed_hits}


def _arrows(S: KLRImageSet, a: int, b: int, flip: bool) -> tuple[bool, bool]:
    fwd, back = arrow(S.F, a, b), arrow(S.F, b, a)
    return (back, fwd) if flip else (fwd, back)


def _square_rhs(S: KLRImageSet, r: int, i, flip: bool) -> CycElement:
    a, b = i[r - 1], i[r]
    u, v = S.Y[(r, i)], S.Y[(r + 1, i)]
    if S.F.reduce_residue(a - b) == 0:
        return S.A.zero
    fwd, back = _arrows(S, a, b, flip)
    if fwd and back:
        return (v - u) * (u - v)
    if fwd:
        return v - u
    if back:
        return u - v
    return S.E[i]


def _braid_sides(S: KLRImageSet, r: int, i):
    PSI = S.PSI
    i1 = _swap(i, r)
    i2 = _swap(i1, r + 1)
    lhs = PSI[(r, i2)] * PSI[(r + 1, i1)] * PSI[(r, i)]
    j1 = _swap(i, r + 1)
    j2 = _swap(j1, r)
    rhs = PSI[(r + 1, j2)] * PSI[(r, j1)] * PSI[(r + 1, i)]
    return lhs, rhs


def _braid_rhs(S: KLRImageSet, r: int, i, flip: bool) -> CycElement:
    a, b, c = i[r - 1], i[r], i[r + 1]
    F = S.F
    if F.reduce_residue(a - c) or not F.reduce_residue(a - b):
        return S.A.zero
    fwd, back = _arrows(S, a, b, flip)
    e = S.E[i]
    if fwd and back:
        return S.Y[(r, i)] - S.Y[(r + 1, i)] * 2 + S.Y[(r + 2, i)]
    if fwd:
        return e
    if back:
        return -e
    return S.A.zero


def sign_repair(S: KLRImageSet) -> dict:
    """Relation report for S plus the single Q-sign flip that repairs it, if any.

    The candidates negate Q_r(i) on one of the three cases of
    :func:`case_of`; nothing is changed in S itself.
    """
    report = verify_klr_relations(S)
    report["repair"] = None
    if report["pass"]:
        return report
    for case in ("same", "down", "other"):
        flipped = KLRImageSet(S.F, S.n, S.weight, S.beta, S.truncation, S.negate ^ {case})
        if verify_klr_relations(flipped)["pass"]:
            report["repair"] = "negate Q_r(i) when i_r is %s" % _CASE_TEXT[case]
            report["repair_case"] = case
            break
    return report


_CASE_TEXT = {"same": "i_{r+1}", "down": "i_{r+1}+1", "other": "neither i_{r+1} nor i_{r+1}+1"}


# -- spanning -------------------------------------------------------------------

def klr_spanning_check(S: KLRImageSet, degree_bound: int | None = None) -> dict:
    """Rank of ``{psi_w y^a e(i) : a_k < degree_bound}`` against dim e(beta)H."""
    bound = S.nilpotency if degree_bound is None else degree_bound
    A = S.A
    target = S.dim
    space = RowSpace()
    tried = 0
    for i in S.nonzero_seqs():
        for a in product(range(bound), repeat=S.n):
            z = S.E[i]
            for k in range(S.n, 0, -1):
                for _ in range(a[k - 1]):
                    z = S.apply_y(k, i, z)
            if z.is_zero():
                continue
            for w in all_perms(S.n):
                x, cur = z, i
                for r in reversed(reduced_word(w)):
                    x = A.apply_gen(S.left(("psi", r, cur), S.PSI[(r, cur)]), x)
                    cur = _swap(cur, r)
                tried += 1
                space.add({k: c for k, c in enumerate(x.vec) if c})
                if len(space) == target:
                    break
            if len(space) == target:
                break
    rank = len(space)
    return {"pass": rank == target, "rank": rank, "dim": target,
            "degree_bound": bound, "vectors": tried}


def truncation_stability(S: KLRImageSet, extra=(1, 2)) -> dict:
    """P, Q and the series-form psi do not change when the truncation grows."""
    unstable = []
    for i in S.nonzero_seqs():
        for r in range(1, S.n):
            base = pq_polys(S, r, i) + (bk_psi(S, r, i),)
            for k in extra:
                deg = S.truncation + k
                other = pq_polys(S, r, i, deg) + (bk_psi(S, r, i, deg),)
                if any(x != y for x, y in zip(base, other)):
                    unstable.append({"r": r, "i": list(i), "extra": k})
    return {"pass": not unstable, "unstable": unstable}
