"""Generalized Ore localization over idempotent-indexed multiplicative sets.

A fraction ``(a, s)`` in component ``(i, j)`` has ``a`` in ``e_j A e_i`` and
``s`` in ``S_i`` and stands for ``a s^-1``. Two fractions in the same
component are equivalent when ``a t = b s``.

>>> D = integer_instance()
>>> x, y = Fraction(0, 0, 3, 2), Fraction(0, 0, 1, 4)
>>> z = fraction_add(D, x, y)
>>> (z.num, z.den), fraction_eq(D, z, Fraction(0, 0, 7, 4))
((14, 8), True)
"""

from __future__ import annotations

import operator
import random
from dataclasses import dataclass, field
from typing import Callable

from gmpy2 import mpq

from .cyclotomic import Weight
from .expr import Expr
from .modified import ModifiedAlgebra, module_panel
from .perms import act_on_seq, s as transposition

__all__ = [
    "LocalizationData", "Fraction", "FormalSum", "OreError",
    "fraction_eq", "fraction_add", "fraction_mul", "verify_O1", "verify_O2",
    "universal_map", "in_multiplicative_set", "transitivity_witness",
    "integer_instance", "zero_divisor_instance", "rational_map", "HeckeOre",
    "commutative_identities", "hecke_homomorphism_check", "negative_control",
]


class OreError(ValueError):
    """The solver could not produce an Ore pair for the given input."""


@dataclass
class LocalizationData:
    """Ring oracle plus multiplicative sets and Ore solvers.

    ``solve_left(a, s, i, j)`` returns ``(b, u)`` with ``u a = b s`` for
    ``a`` in ``e_j A e_i``, ``s`` in ``S_i``, ``u`` in ``S_j``;
    ``solve_right(a, t, i, j)`` returns ``(c, v)`` with ``a v = t c`` for
    ``t`` in ``S_j`` and ``v`` in ``S_i``.
    """

    add: Callable
    mul: Callable
    eq: Callable
    zero: object
    idempotents: dict
    generators: dict
    solve_left: Callable
    solve_right: Callable
    name: str = ""
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class Fraction:
    i: object
    j: object
    num: object
    den: object


@dataclass
class FormalSum:
    """Fractions in different components, kept apart."""

    parts: dict


def fraction_eq(D: LocalizationData, x: Fraction, y: Fraction) -> bool:
    if (x.i, x.j) != (y.i, y.j):
        zero = D.zero
        return D.eq(x.num, zero) and D.eq(y.num, zero)
    return D.eq(D.mul(x.num, y.den), D.mul(y.num, x.den))


def fraction_add(D: LocalizationData, x, y):
    """``[(a,s)] + [(b,t)] = [(at + bs, st)]``; a formal sum across components."""
    if isinstance(x, Fraction) and isinstance(y, Fraction) and (x.i, x.j) == (y.i, y.j):
        num = D.add(D.mul(x.num, y.den), D.mul(y.num, x.den))
        return Fraction(x.i, x.j, num, D.mul(x.den, y.den))
    parts: dict = {}
    for z in (x, y):
        for f in (z.parts.values() if isinstance(z, FormalSum) else [z]):
            key = (f.i, f.j)
            parts[key] = fraction_add(D, parts[key], f) if key in parts else f
    return FormalSum(parts)


def fraction_mul(D: LocalizationData, x: Fraction, y: Fraction):
    """``[(a,s)][(b,t)] = [(ac, tu)]`` where ``b u = s c``; ``None`` stands for 0.

    With ``x`` in component ``(i, j)`` and ``y`` in ``(k, l)`` the product is
    zero unless ``i == l``, and then lies in component ``(k, j)``.
    """
    if x.i != y.j:
        return None
    try:
        c, u = D.solve_right(y.num, x.den, y.i, y.j)
    except OreError as exc:
        raise OreError("no Ore pair for b=%r, s=%r" % (y.num, x.den)) from exc
    return Fraction(y.i, x.j, D.mul(x.num, c), D.mul(y.den, u))


def verify_O1(D: LocalizationData, samples) -> dict:
    """``s g = 0 => e_i g = 0`` and ``h s = 0 => h e_i = 0`` on (g, h, s, i) samples."""
    failures = []
    for g, h, s_, i in samples:
        e = D.idempotents[i]
        if D.eq(D.mul(s_, g), D.zero) and not D.eq(D.mul(e, g), D.zero):
            failures.append(("left", g, s_, i))
        if D.eq(D.mul(h, s_), D.zero) and not D.eq(D.mul(h, e), D.zero):
            failures.append(("right", h, s_, i))
    return {"pass": not failures, "checked": len(samples), "failures": failures}


def verify_O2(D: LocalizationData, samples) -> dict:
    """Run both solvers on (a, s, t, i, j) samples and check the identities."""
    failures = []
    for a, s_, t, i, j in samples:
        b, u = D.solve_left(a, s_, i, j)
        if not D.eq(D.mul(u, a), D.mul(b, s_)):
            failures.append(("ua = bs", a, s_))
        c, v = D.solve_right(a, t, i, j)
        if not D.eq(D.mul(a, v), D.mul(t, c)):
            failures.append(("av = tc", a, t))
    return {"pass": not failures, "checked": len(samples), "failures": failures}


def universal_map(D: LocalizationData, psi: Callable, inverse: Callable,
                  b_add: Callable = operator.add, b_mul: Callable = operator.mul) -> Callable:
    """``sigma([(a, s)]) = psi(a) psi(s)^-1``.

    ``inverse(s, i)`` must return ``psi(s)^-1`` in the corner of ``psi(e_i)``.
    """

    def sigma(x):
        if x is None:
            return None
        if isinstance(x, FormalSum):
            out = None
            for f in x.parts.values():
                y = sigma(f)
                out = y if out is None else b_add(out, y)
            return out
        return b_mul(psi(x.num), inverse(x.den, x.i))

    return sigma


def in_multiplicative_set(D: LocalizationData, x, i, max_len: int = 3) -> bool:
    """Search products of at most ``max_len`` generators of S_i for x."""
    level = [D.idempotents[i]]
    for _ in range(max_len + 1):
        if any(D.eq(x, y) for y in level):
            return True
        level = [D.mul(y, g) for y in level for g in D.generators[i]]
    return False


def transitivity_witness(D: LocalizationData, nums, dens, i=0, j=0):
    """Return fractions x ~ y ~ z with x not ~ z, or None."""
    fracs = [Fraction(i, j, a, s_) for a in nums for s_ in dens]
    for x in fracs:
        for y in fracs:
            if not fraction_eq(D, x, y):
                continue
            for z in fracs:
                if fraction_eq(D, y, z) and not fraction_eq(D, x, z):
                    return x, y, z
    return None


# -- commutative instances ---------------------------------------------------

def _commuting_solvers():
    def left(a, s_, i, j):
        return a, s_

    def right(a, t, i, j):
        return a, t

    return left, right


def integer_instance(base: int = 2) -> LocalizationData:
    """The integers with S = powers of ``base``; localizes to Z[1/base].

    >>> D = integer_instance()
    >>> w = fraction_mul(D, Fraction(0, 0, 3, 2), Fraction(0, 0, 5, 4))
    >>> (w.num, w.den)
    (15, 8)
    """
    left, right = _commuting_solvers()
    return LocalizationData(operator.add, operator.mul, operator.eq, 0, {0: 1}, {0: [base]},
                            left, right, name="Z[1/%d]" % base)


def zero_divisor_instance(modulus: int = 6, base: int = 2) -> LocalizationData:
    """Z/modulus with S = powers of ``base``; violates (O1) when they share a factor."""
    left, right = _commuting_solvers()
    return LocalizationData(lambda a, b: (a + b) % modulus, lambda a, b: (a * b) % modulus,
                            lambda a, b: (a - b) % modulus == 0, 0, {0: 1}, {0: [base]},
                            left, right, name="Z/%d" % modulus)


def rational_map(D: LocalizationData) -> Callable:
    """sigma into Q for :func:`integer_instance`."""
    return universal_map(D, mpq, lambda y, i: 1 / mpq(y))


def commutative_identities(count: int = 100, seed: int = 0, base: int = 2) -> dict:
    """Compare fraction arithmetic in Z[1/base] with arithmetic in Q.

    Each sample checks sum, product and the equivalence test against the
    rational values of two random fractions.

    >>> commutative_identities(20, seed=1)["pass"]
    True
    """
    D = integer_instance(base)
    sigma = rational_map(D)
    rng = random.Random(seed)
    failures = []

    def draw():
        return Fraction(0, 0, rng.randint(-20, 20), base ** rng.randint(0, 4))

    for k in range(count):
        x, y = draw(), draw()
        if sigma(fraction_add(D, x, y)) != sigma(x) + sigma(y):
            failures.append((k, "sum"))
        if sigma(fraction_mul(D, x, y)) != sigma(x) * sigma(y):
            failures.append((k, "product"))
        if fraction_eq(D, x, y) != (sigma(x) == sigma(y)):
            failures.append((k, "equivalence"))
    return {"pass": not failures, "checked": count, "failures": failures}


def negative_control(modulus: int = 6, base: int = 2) -> dict:
    """Fraction equivalence over Z/modulus fails to be transitive when (O1) fails."""
    D = zero_divisor_instance(modulus, base)
    samples = [(g, g, base ** k, 0) for g in range(modulus) for k in range(1, 3)]
    o1 = verify_O1(D, samples)
    witness = transitivity_witness(D, range(modulus), [base ** k % modulus for k in range(3)])
    return {"O1": o1["pass"], "transitive": witness is None,
            "witness": None if witness is None else [(f.num, f.den) for f in witness]}


# -- the Hecke instance ------------------------------------------------------
#
# A-elements are lists of (coeff, word); a word is a tuple of atoms read left
# to right, each atom knowing its target and source sequence:
#   ("T", r, tgt, src)   e(tgt) T_r e(src), tgt in {src, s_r src}
#   ("X", exps, i)       X^exps e(i)
#   ("D", p, k, i)       (X_p - X_k) e(i)
# S-elements are ("S", i, factors) with factors a sorted tuple of pairs p < k.

def _ends(atom) -> tuple:
    if atom[0] == "T":
        return atom[2], atom[3]
    return atom[-1], atom[-1]


def _canon(p: int, k: int) -> tuple[int, tuple]:
    return (1, (p, k)) if p < k else (-1, (k, p))


class HeckeOre:
    """Ore data for the check algebra of a block with the diagonal difference sets."""

    def __init__(self, M: ModifiedAlgebra, weights=None, panel=None):
        self.M = M
        self.F = M.F
        self.weights = M.probe_panel(levels=(1, 2), max_dim=32) if weights is None else weights
        self.panel = module_panel(M) if panel is None else panel
        self._expr_cache: dict = {}
        self.data = LocalizationData(
            self.add, self.mul, self.eq, [], {i: self.e(i) for i in M.seqs},
            {i: [self.s_elem(i, [f]) for f in self.pairs(i)] for i in M.seqs},
            self.solve_left, self.solve_right, name="Hecke block %s" % (M.beta,))

    # -- elements ------------------------------------------------------------

    def pairs(self, i) -> list:
        n = self.M.n
        return [(p, k) for p in range(1, n + 1) for k in range(p + 1, n + 1) if i[p - 1] != i[k - 1]]

    def e(self, i) -> list:
        return [(self.F.one, (("X", (0,) * self.M.n, i),))]

    def s_elem(self, i, factors) -> list:
        factors = tuple(sorted(factors))
        if not factors:
            return self.e(i)
        return [(self.F.one, tuple(("D", p, k, i) for p, k in factors))]

    def T(self, r: int, tgt, src) -> list:
        return [(self.F.one, (("T", r, tuple(tgt), tuple(src)),))]

    def X(self, exps, i) -> list:
        return [(self.F.one, (("X", tuple(exps), tuple(i)),))]

    @staticmethod
    def add(x, y):
        return list(x) + list(y)

    def mul(self, x, y):
        out = []
        for c, w in x:
            for d, v in y:
                if w and v and _ends(w[-1])[1] != _ends(v[0])[0]:
                    continue
                out.append((c * d, w + v))
        return out

    def scale(self, x, c):
        return [(c * a, w) for a, w in x]

    def expr(self, x) -> Expr:
        M = self.M
        out = None
        for c, w in x:
            term = None
            for atom in w:
                t = self._atom_expr(atom)
                term = t if term is None else term * t
            term = term * c
            out = term if out is None else out + term
        return out if out is not None else M.ebeta * 0

    def _atom_expr(self, atom) -> Expr:
        cached = self._expr_cache.get(atom)
        if cached is not None:
            return cached
        M = self.M
        if atom[0] == "T":
            _, r, tgt, src = atom
            out = M.e(tgt) * M.T(r, src)
        elif atom[0] == "X":
            _, exps, i = atom
            out = M.e(i)
            for k, p in enumerate(exps, 1):
                if p:
                    out = M.X(k, p, i) * out
        else:
            _, p, k, i = atom
            out = M.diff(p, k, i)
        self._expr_cache[atom] = out
        return out

    def eq(self, x, y) -> bool:
        return self.M.equal(self.expr(x), self.expr(y), self.weights, self.panel)

    # -- the solver -----------------------------------------------------------

    def _solve_atom(self, atom, factors, src):
        """For one atom and u-factors on its source, return (sign, extra, new_factors)."""
        if atom[0] != "T":
            return 1, (), factors
        _, r, tgt, _ = atom
        sigma = transposition(r, self.M.n)
        if tgt != src:
            sign, out = 1, []
            for p, k in factors:
                eps, f = _canon(sigma[p - 1] + 1, sigma[k - 1] + 1)
                sign *= eps
                out.append(f)
            return sign, (), tuple(sorted(out))
        if src[r - 1] != src[r]:
            return 1, (), factors
        extra, out = [], []
        for p, k in factors:
            if len({p, k} & {r, r + 1}) == 1:
                eps, f = _canon(sigma[p - 1] + 1, sigma[k - 1] + 1)
                if eps < 0:
                    raise OreError("unexpected orientation")  # sigma keeps p < k here
                extra.append(("D", f[0], f[1], src))
                out.extend([(p, k), f])
            else:
                out.append((p, k))
        return 1, tuple(extra), tuple(sorted(out))

    def _solve_word(self, w, factors, src):
        """u w = b s for one routed word; returns (coeff sign, b word, u factors, target)."""
        sign, b = 1, []
        cur = factors
        for atom in reversed(w):
            tgt, asrc = _ends(atom)
            if asrc != src:
                raise OreError("word is not routed through %s" % (src,))
            eps, extra, cur = self._solve_atom(atom, cur, asrc)
            sign *= eps
            b = [atom, *extra] + b
            src = tgt
        return sign, tuple(b), cur, src

    def _s_parts(self, s_):
        """(component, factors) of an S-element built by :meth:`s_elem`."""
        (c, w), = s_
        return _ends(w[0])[0], tuple(sorted((a[1], a[2]) for a in w if a[0] == "D"))

    def solve_left(self, a, s_, i, j):
        i_s, factors = self._s_parts(s_)
        solved = []
        for c, w in a:
            if not w or _ends(w[-1])[1] != i_s or _ends(w[0])[0] != j:
                continue
            sign, b, uf, _ = self._solve_word(w, factors, i_s)
            solved.append((c * sign, b, uf))
        if not solved:
            return [], self.e(j)
        distinct = {uf for _, _, uf in solved}
        if len(distinct) == 1:
            uf = distinct.pop()
            return [(c, b) for c, b, _ in solved], self.s_elem(j, uf)
        # common multiple: product of all u's
        all_u = [uf for _, _, uf in solved]
        b_out = []
        for k, (c, b, _) in enumerate(solved):
            others = tuple(f for m, uf in enumerate(all_u) if m != k for f in uf)
            left = self.s_elem(j, others)
            for d, v in self.mul(left, [(c, b)]):
                b_out.append((d, v))
        total = tuple(f for uf in all_u for f in uf)
        return b_out, self.s_elem(j, total)

    def star(self, x):
        out = []
        for c, w in x:
            atoms = []
            for atom in reversed(w):
                if atom[0] == "T":
                    atoms.append(("T", atom[1], atom[3], atom[2]))
                else:
                    atoms.append(atom)
            out.append((c, tuple(atoms)))
        return out

    def solve_right(self, a, t, i, j):
        b, u = self.solve_left(self.star(a), t, j, i)
        return self.star(b), u

    # -- sampling --------------------------------------------------------------

    def random_s(self, rng: random.Random, i, max_factors: int = 2) -> list:
        pairs = self.pairs(i)
        if not pairs:
            return self.e(i)
        k = rng.randint(0, max_factors)
        return self.s_elem(i, [rng.choice(pairs) for _ in range(k)])

    def random_word(self, rng: random.Random, src, length: int = 2):
        """A routed word ending in ``src``; returns (word, target)."""
        n = self.M.n
        atoms, cur = [], tuple(src)
        for _ in range(length):
            if n > 1 and rng.random() < 0.6:
                r = rng.randint(1, n - 1)
                nxt = act_on_seq(transposition(r, n), cur)
                tgt = nxt if nxt != cur and rng.random() < 0.7 else cur
                atoms.append(("T", r, tgt, cur))
                cur = tgt
            else:
                lo = 0 if self.M.plus else -1
                exps = tuple(rng.randint(lo, 1) for _ in range(n))
                atoms.append(("X", exps, cur))
        return tuple(reversed(atoms)), cur

    def random_element(self, rng: random.Random, src, tgt=None, terms: int = 2):
        """Sum of routed words from ``src``; all words end at the same target."""
        out, target = [], tgt
        tries = 0
        while len(out) < terms and tries < 50:
            tries += 1
            w, t = self.random_word(rng, src, rng.randint(1, 2))
            if target is None:
                target = t
            if t == target:
                out.append((self.F(rng.choice([1, 2, -1, 3])), w))
        if not out:
            out = self.e(src)
            target = tuple(src)
        return out, target

    def probe_sigma(self, weight: Weight) -> Callable:
        """The universal map into the cyclotomic quotient at ``weight``."""
        P = self.M.probe(weight)
        cache: dict = {}

        def psi(x):
            return P.evaluate(self.expr(x))

        def inverse(s_, i):
            comp, factors = self._s_parts(s_)
            out = P.idem(comp)
            for p, k in factors:
                key = (p, k, comp)
                if key not in cache:
                    cache[key] = P.inverse_atom(p, k, 0, comp)
                out = cache[key] * out
            return out

        return universal_map(self.data, psi, inverse)


def hecke_homomorphism_check(H: HeckeOre, weight: Weight, count: int = 100, seed: int = 0) -> dict:
    """sigma(x y) = sigma(x) sigma(y) and sigma(x + y) = sigma(x) + sigma(y) on random fractions."""
    rng = random.Random(seed)
    D = H.data
    sigma = H.probe_sigma(weight)
    seqs = H.M.seqs
    failures = []
    for k in range(count):
        src = rng.choice(seqs)
        b, mid = H.random_element(rng, src)
        a, tgt = H.random_element(rng, mid)
        y = Fraction(tuple(src), tuple(mid), b, H.random_s(rng, tuple(src)))
        x = Fraction(tuple(mid), tuple(tgt), a, H.random_s(rng, tuple(mid)))
        if sigma(fraction_mul(D, x, y)) != sigma(x) * sigma(y):
            failures.append((k, "product"))
        a2, _ = H.random_element(rng, mid, tgt=tgt)
        x2 = Fraction(tuple(mid), tuple(tgt), a2, H.random_s(rng, tuple(mid)))
        if x2.num and _ends(x2.num[0][1][0])[0] == tuple(tgt):
            if sigma(fraction_add(D, x, x2)) != sigma(x) + sigma(x2):
                failures.append((k, "sum"))
    return {"pass": not failures, "checked": count, "weight": str(weight), "failures": failures}
