"""Command line driver, JSON reports and the experiment grid.

Every subcommand prints (or writes with ``--out``) one JSON document with
sorted keys. The exit code is 0 when all checks pass, 1 when a check fails
and 2 for a bad configuration.

    heckelab dim --n 2 --weight 0 --e 3 --mode nondegenerate
    heckelab verify-klr --grid default
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import factorial

from .affine import AffineHecke, bernstein_center_check, random_element, relation_residuals, rho_action
from .centerlab import surjectivity_check
from .cyclotomic import Weight, blocks, quotient, tableau_spectrum
from .fields import FieldError, FieldSpec
from .klrmap import (KLRImageSet, klr_spanning_check, mutual_inverse_check, qri_identity,
                     sign_repair, theta_matches_bk, truncation_stability)
from .modified import ModExprError, ModifiedAlgebra, basis_independence, block_label, relation_suite
from .orelocal import (HeckeOre, commutative_identities, hecke_homomorphism_check,
                       negative_control, verify_O2)
from .poly import Poly

__all__ = [
    "RunConfig", "ConfigError", "make_field", "parse_weight", "main", "default_grid",
    "check_dimension", "check_spectrum", "check_closed_idempotents", "check_klr",
    "check_center", "affine_cross_validation", "affine_relations", "modified_suite",
    "ore_suite", "bernstein_suite", "run_point", "run_grid", "canonical",
]


class ConfigError(ValueError):
    """Inconsistent command line configuration."""


@dataclass(frozen=True)
class RunConfig:
    mode: str = "nondegenerate"
    characteristic: int = 0
    e: int = 3
    q: int | None = None
    n: int = 2
    weight: tuple = (0,)
    beta: str | None = None
    probes: tuple = (1, 2)
    bound_exp: int = 1
    bound_inv: int = 1
    fuel: int = 64
    seed: int = 0
    samples: int = 100
    out: str | None = None

    def field(self) -> FieldSpec:
        return make_field(self.mode, self.characteristic, self.e, self.q)

    def header(self) -> dict:
        return {"field": self.field().describe(), "mode": self.mode, "e": self.e,
                "n": self.n, "weight": list(self.weight)}


def make_field(mode: str, characteristic: int, e: int, q=None) -> FieldSpec:
    """Field for the given mode; degenerate mode requires ``e == char``.

    >>> make_field("degenerate", 3, 3).describe()
    'F_3'
    >>> make_field("nondegenerate", 0, 0).describe()
    'Q, q=2'
    """
    if mode == "degenerate":
        if q is not None:
            raise ConfigError("--q has no meaning in degenerate mode")
        if characteristic != e:
            raise ConfigError("degenerate mode needs char = e, got char=%d e=%d" % (characteristic, e))
        return FieldSpec.degenerate(e)
    if mode != "nondegenerate":
        raise ConfigError("unknown mode %r" % mode)
    return FieldSpec.nondegenerate(e, q, characteristic=characteristic)


def _grid_field(mode: str, e: int) -> FieldSpec:
    """The field used for grid points: char e in degenerate mode, char 0 otherwise."""
    return make_field(mode, e if mode == "degenerate" else 0, e)


def parse_weight(text: str) -> tuple:
    """``"0,0,1"`` -> ``(0, 0, 1)``.

    >>> parse_weight("0, 1")
    (0, 1)
    """
    try:
        kappa = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError("bad weight %r" % text) from exc
    if not kappa:
        raise ConfigError("weight must have at least one residue")
    return kappa


def canonical(F: FieldSpec, x) -> str:
    """String form of a coefficient: ``p/q``, ``r mod p`` or a coefficient vector."""
    x = F(x)
    if F.kind == "cyclotomic":
        return "[%s]" % ", ".join(str(c) for c in x.coeffs)
    return F.fmt(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _beta_text(beta) -> str:
    return ",".join("%d:%d" % jm for jm in beta)


# -- per-point checks -------------------------------------------------------------

def check_dimension(F: FieldSpec, n: int, weight: Weight) -> dict:
    A = quotient(F, n, weight)
    expected = weight.level ** n * factorial(n)
    return {"dim": A.dim, "expected": expected, "generated": A.generated_dimension(),
            "pass": A.dim == expected == A.generated_dimension()}


def check_spectrum(F: FieldSpec, n: int, weight: Weight) -> dict:
    A = quotient(F, n, weight)
    found, oracle = set(A.spectrum()), set(tableau_spectrum(A))
    return {"sequences": len(found), "missing": sorted(oracle - found),
            "extra": sorted(found - oracle), "pass": found == oracle}


def _j_choices(A) -> list:
    seen = sorted({x for seq in A.spectrum() for x in seq})
    if A.F.e:
        wider = list(range(A.F.e))
    else:
        wider = [seen[0] - 1] + seen + [seen[-1] + 1]
    return [seen, wider]


def check_closed_idempotents(F: FieldSpec, n: int, weight: Weight) -> dict:
    """The closed-form idempotents agree with the spectral ones for two N and two J."""
    A = quotient(F, n, weight)
    nb = A.nilpotency_bound()
    residues = A.candidate_residues()
    mismatches, checked = [], 0
    for N in (nb, nb + 2):
        for J in _j_choices(A):
            for i in product(residues, repeat=n):
                checked += 1
                if A.idempotent_closed_formula(i, N, J) != A.idempotent(i):
                    mismatches.append({"i": list(i), "N": N, "J": list(J)})
    return {"nilpotency_bound": nb, "checked": checked, "mismatches": mismatches,
            "pass": not mismatches}


def check_klr(F: FieldSpec, n: int, weight: Weight, beta=None) -> dict:
    """Relations, series comparison, mutual inverses, spanning and truncation per block."""
    A = quotient(F, n, weight)
    labels = [block_label(beta)] if beta else [b["beta"] for b in blocks(A)]
    out = {}
    for label in labels:
        S = KLRImageSet(F, n, A.weight, label)
        relations = sign_repair(S)
        qri = sorted({qri_identity(S, r, i) for i in S.nonzero_seqs() for r in range(1, n)
                      if F.reduce_residue(i[r - 1] - i[r] - 1) == 0})
        out[_beta_text(S.beta)] = {
            "relations": {"pass": relations["pass"], "checked": relations["checked"],
                          "failures": relations["failures"][:5],
                          "failure_count": len(relations["failures"]),
                          "reversed_arrows": len(relations["reversed_arrows"]),
                          "repair": relations["repair"]},
            "qri_identity": qri,
            "bk_series": theta_matches_bk(S)["pass"],
            "mutual_inverse": mutual_inverse_check(S)["pass"],
            "spanning": klr_spanning_check(S),
            "truncation_stable": truncation_stability(S)["pass"],
        }
    return out


def check_center(F: FieldSpec, n: int, weight: Weight, fuel: int | None = None) -> dict:
    return surjectivity_check(F, n, weight, max_degree=fuel).to_json()


def default_grid() -> list[tuple]:
    """``(mode, e, n, kappa)`` for both modes, e in {0,2,3}, n <= 3 and three weights."""
    return [(mode, e, n, kappa)
            for mode in ("degenerate", "nondegenerate")
            for e in (0, 2, 3)
            for n in (1, 2, 3)
            for kappa in ((0,), (0, 1), (0, 0))]


def run_point(point, criteria=("1", "2", "3", "4", "5", "6", "10")) -> dict:
    """All per-point checks for one grid point, keyed by criterion."""
    mode, e, n, kappa = point
    F = _grid_field(mode, e)
    weight = Weight(kappa).reduced(e)
    out = {"field": F.describe(), "mode": mode, "e": e, "n": n, "weight": list(kappa)}
    if "1" in criteria:
        out["1"] = check_dimension(F, n, weight)
    if "2" in criteria:
        out["2"] = check_spectrum(F, n, weight)
    if "3" in criteria and n <= 2:
        out["3"] = check_closed_idempotents(F, n, weight)
    if {"4", "5", "6"} & set(criteria):
        out["klr"] = check_klr(F, n, weight)
    if "10" in criteria:
        out["10"] = check_center(F, n, weight)
    return out


def _threads() -> int:
    value = os.environ.get("HECKE_LAB_THREADS")
    if value:
        return max(1, int(value))
    return os.cpu_count() or 1


def _map(func, items, *args):
    workers = min(_threads(), len(items))
    if workers <= 1:
        return [func(x, *args) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, *[[a] * len(items) for a in args]))


# -- global checks ----------------------------------------------------------------

def _affine_fields():
    return [FieldSpec.nondegenerate(0), FieldSpec.nondegenerate(2), FieldSpec.nondegenerate(3),
            FieldSpec.degenerate(0), FieldSpec.degenerate(3)]


def _monomial_panel(F: FieldSpec, n: int, rng: random.Random, size: int, laurent: bool) -> list:
    lo = -2 if laurent else 0
    return [Poly.monomial(F, tuple(rng.randint(lo, 2) for _ in range(n)))
            for _ in range(size)]


def affine_cross_validation(pairs: int = 200, seed: int = 0, exp_range=(-2, 2)) -> dict:
    """Products in normal form act on a monomial panel like the composed actions."""
    rng = random.Random(seed)
    fields = _affine_fields()
    failures = []
    for k in range(pairs):
        F = fields[k % len(fields)]
        n = 1 + k % 3
        H = AffineHecke(F, n)
        u = random_element(H, rng, exp_range=exp_range)
        v = random_element(H, rng, exp_range=exp_range)
        uv = u * v
        for f in _monomial_panel(F, n, rng, 10, not H.degenerate):
            if rho_action(uv, f) != rho_action(u, rho_action(v, f)):
                failures.append({"pair": k, "field": F.describe(), "n": n})
                break
    return {"pass": not failures, "pairs": pairs, "failures": failures}


def affine_relations() -> dict:
    """Every defining relation, per field and n <= 3; the misprinted variant is reported."""
    table, ok = {}, True
    for F in _affine_fields():
        for n in (1, 2, 3):
            res = relation_residuals(AffineHecke(F, n))
            printed = res.pop("(7a) printed", None)
            ok = ok and all(res.values())
            table["%s n=%d" % (F.describe(), n)] = {
                "all_hold": all(res.values()), "failed": sorted(k for k, v in res.items() if not v),
                "(7a) printed holds": printed}
    return {"pass": ok, "table": table}


def _modified_points():
    return [(FieldSpec.nondegenerate(3), 2, "0:1,1:1"), (FieldSpec.nondegenerate(3), 2, "0:2"),
            (FieldSpec.nondegenerate(2), 2, "0:1,1:1"), (FieldSpec.degenerate(0), 2, "0:1,1:1"),
            (FieldSpec.degenerate(3), 2, "0:2"), (FieldSpec.degenerate(2), 2, "0:1,1:1")]


def modified_suite(probes=(1, 2), bound_exp: int = 1, bound_inv: int = 1) -> dict:
    """Relation suites under both semantics and the bounded basis independence at n = 2."""
    out, ok = {}, True
    for F, n, beta in _modified_points():
        M = ModifiedAlgebra(F, n, beta)
        suite = relation_suite(M, M.probe_panel(levels=probes, max_dim=96))
        basis = basis_independence(M, bound_exp, bound_inv)
        ok = ok and suite["pass"] and basis["pass"]
        out["%s n=%d beta=%s" % (F.describe(), n, beta)] = {
            "relations": suite["pass"], "relation_failures": suite["failures"][:5],
            "basis": {k: basis[k] for k in ("pass", "size", "rank", "dependent")}}
    return {"pass": ok, "table": out}


def ore_suite(count: int = 100, seed: int = 0) -> dict:
    """Commutative identities, the Hecke homomorphism, solver identities and the negative control."""
    commutative = commutative_identities(count, seed)
    M = ModifiedAlgebra(FieldSpec.nondegenerate(3), 2, "0:1,1:1")
    H = HeckeOre(M)
    hom = hecke_homomorphism_check(H, Weight((0, 1)), count, seed)
    rng = random.Random(seed)
    samples = []
    for _ in range(20):
        src = rng.choice(M.seqs)
        a, tgt = H.random_element(rng, src)
        samples.append((a, H.random_s(rng, src), H.random_s(rng, tgt), src, tgt))
    o2 = verify_O2(H.data, samples)
    control = negative_control()
    return {"pass": commutative["pass"] and hom["pass"] and o2["pass"] and not control["transitive"],
            "commutative": commutative, "hecke_homomorphism": hom, "O2": o2,
            "negative_control": control,
            "orientation": "[(a,s)][(b,t)] = [(ac, tu)] with b u = s c; zero unless x.i = y.j"}


def bernstein_suite(max_n: int = 3, powers=(1, 2, 3)) -> dict:
    """Power sums of the X (or x) generators are central in the affine algebra."""
    out, ok = {}, True
    for F in _affine_fields():
        for n in range(1, max_n + 1):
            H = AffineHecke(F, n)
            ks = list(powers) + ([] if H.degenerate else [-1])
            for k in ks:
                f = Poly(F, n)
                for m in range(1, n + 1):
                    f = f + Poly.var(F, n, m, k)
                res = bernstein_center_check(H, f)
                ok = ok and res["pass"]
                out["%s n=%d p_%d" % (F.describe(), n, k)] = res["pass"]
    return {"pass": ok, "table": out}


# -- grid aggregation ----------------------------------------------------------------

def _criterion_verdicts(points: list[dict]) -> dict:
    verdict = {c: True for c in ("1", "2", "3", "4", "5", "6", "10")}
    repairs = set()
    for p in points:
        for c in ("1", "2", "3", "10"):
            if c in p and not p[c]["pass"]:
                if c != "10" or p[c]["scope"] != "exploratory, outside proven scope":
                    verdict[c] = False
        for block in p.get("klr", {}).values():
            if not block["relations"]["pass"]:
                verdict["4"] = False
                if block["relations"]["repair"]:
                    repairs.add(block["relations"]["repair"])
            verdict["5"] = verdict["5"] and block["mutual_inverse"]
            verdict["6"] = verdict["6"] and block["spanning"]["pass"]
    return {"criteria": verdict, "repairs": sorted(repairs)}


def run_grid(points=None, criteria=("1", "2", "3", "4", "5", "6", "10")) -> dict:
    points = default_grid() if points is None else points
    results = _map(run_point, points, tuple(criteria))
    return {"points": results, **_criterion_verdicts(results)}


# -- subcommands -------------------------------------------------------------------

def _cmd_dim(cfg: RunConfig) -> dict:
    return check_dimension(cfg.field(), cfg.n, Weight(cfg.weight))


def _cmd_blocks(cfg: RunConfig) -> dict:
    A = quotient(cfg.field(), cfg.n, Weight(cfg.weight))
    rows = [{"beta": {str(j): m for j, m in b["beta"]}, "dim": b["dim"],
             "idempotent_rank": A.block_rank(b["idempotent"]),
             "sequences": [list(i) for i in b["sequences"]]} for b in blocks(A)]
    return {"blocks": rows, "pass": sum(r["dim"] for r in rows) == A.dim}


def _cmd_idem(cfg: RunConfig) -> dict:
    F, w = cfg.field(), Weight(cfg.weight)
    out = {"spectrum": check_spectrum(F, cfg.n, w)}
    out["closed_formula"] = check_closed_idempotents(F, cfg.n, w)
    out["pass"] = out["spectrum"]["pass"] and out["closed_formula"]["pass"]
    return out


def _cmd_verify_affine(cfg: RunConfig) -> dict:
    cross = affine_cross_validation(2 * cfg.samples, cfg.seed, (-2 * cfg.bound_exp, 2 * cfg.bound_exp))
    rel = affine_relations()
    return {"cross_validation": cross, "relations": rel, "pass": cross["pass"] and rel["pass"]}


def _klr_command(cfg: RunConfig, keys) -> dict:
    F, w = cfg.field(), Weight(cfg.weight)
    res = check_klr(F, cfg.n, w, cfg.beta)
    ok = True
    for block in res.values():
        for key in keys:
            v = block[key]
            ok = ok and (v["pass"] if isinstance(v, dict) else bool(v))
    return {"blocks": res, "pass": ok}


def _cmd_verify_bk(cfg: RunConfig) -> dict:
    return _klr_command(cfg, ("bk_series", "mutual_inverse", "truncation_stable"))


def _cmd_verify_klr(cfg: RunConfig) -> dict:
    return _klr_command(cfg, ("relations",))


def _cmd_verify_basis(cfg: RunConfig) -> dict:
    out = _klr_command(cfg, ("spanning",))
    if cfg.n <= 2 and cfg.beta:
        basis = basis_independence(ModifiedAlgebra(cfg.field(), cfg.n, cfg.beta),
                                   cfg.bound_exp, cfg.bound_inv)
        out["standard_basis"] = basis
        out["pass"] = out["pass"] and basis["pass"]
    return out


def _cmd_verify_modified(cfg: RunConfig) -> dict:
    if cfg.beta:
        M = ModifiedAlgebra(cfg.field(), cfg.n, cfg.beta)
        suite = relation_suite(M, M.probe_panel(levels=cfg.probes, max_dim=96))
        return {"relations": suite, "pass": suite["pass"]}
    return modified_suite(cfg.probes, cfg.bound_exp, cfg.bound_inv)


def _cmd_center(cfg: RunConfig) -> dict:
    report = check_center(cfg.field(), cfg.n, Weight(cfg.weight), cfg.fuel)
    return {"center": report, "pass": report["pass"]}


def _cmd_ore_demo(cfg: RunConfig) -> dict:
    return ore_suite(cfg.samples, cfg.seed)


def _cmd_structure(cfg: RunConfig) -> dict:
    F = cfg.field()
    A = quotient(F, cfg.n, Weight(cfg.weight))
    rows = ["%d %d -> [%s]" % (i, j, ", ".join("(%d, %s)" % (k, canonical(F, c)) for k, c in terms))
            for i, j, terms in A.structure_rows()]
    basis = ["L^%s T_%s" % (list(a), list(w)) for a, w in A.basis]
    return {"dim": A.dim, "basis": basis, "rows": rows, "pass": True}


def _cmd_grid(cfg: RunConfig) -> dict:
    out = run_grid()
    out["7"] = {"cross_validation": affine_cross_validation(200, cfg.seed), "relations": affine_relations()}
    out["8"] = modified_suite(cfg.probes, cfg.bound_exp, cfg.bound_inv)
    out["9"] = ore_suite(cfg.samples, cfg.seed)
    out["10_bernstein"] = bernstein_suite()
    crit = out["criteria"]
    crit["7"] = out["7"]["cross_validation"]["pass"] and out["7"]["relations"]["pass"]
    crit["8"] = out["8"]["pass"]
    crit["9"] = out["9"]["pass"]
    crit["10"] = crit["10"] and out["10_bernstein"]["pass"]
    out["pass"] = all(crit.values())
    return out


COMMANDS = {
    "dim": _cmd_dim, "blocks": _cmd_blocks, "idem": _cmd_idem,
    "verify-affine": _cmd_verify_affine, "verify-bk": _cmd_verify_bk,
    "verify-klr": _cmd_verify_klr, "verify-modified": _cmd_verify_modified,
    "verify-basis": _cmd_verify_basis, "center": _cmd_center,
    "ore-demo": _cmd_ore_demo, "structure": _cmd_structure, "grid": _cmd_grid,
}

# commands that accept ``--grid default`` and then run once per grid point
_PER_POINT = {"dim", "blocks", "idem", "verify-bk", "verify-klr", "verify-basis", "center"}


def _grid_item(point, command: str) -> dict:
    mode, e, n, kappa = point
    cfg = RunConfig(mode=mode, characteristic=e if mode == "degenerate" else 0, e=e, n=n,
                    weight=kappa)
    if command == "idem" and n > 2:
        return {**cfg.header(), "skipped": "n > 2", "pass": True}
    return {**cfg.header(), **COMMANDS[command](cfg)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckelab", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--mode", default="nondegenerate", choices=["degenerate", "nondegenerate"])
    parser.add_argument("--char", type=int, default=None,
                        help="field characteristic (default: e in degenerate mode, else 0)")
    parser.add_argument("--e", type=int, default=3)
    parser.add_argument("--q", type=int, default=None)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--weight", default="0", help='residues of Lambda, e.g. "0,0,1"')
    parser.add_argument("--beta", default=None, help='block, e.g. "0:1,1:1"')
    parser.add_argument("--probes", default="1,2", help="probe levels for modified-algebra checks")
    parser.add_argument("--bound-exp", type=int, default=1)
    parser.add_argument("--bound-inv", type=int, default=1)
    parser.add_argument("--fuel", type=int, default=64, help="degree budget of the symmetric span search")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--grid", default=None, choices=["default"])
    parser.add_argument("--out", default=None)
    return parser


def config_from_args(args) -> RunConfig:
    char = args.char
    if char is None:
        char = args.e if args.mode == "degenerate" else 0
    if args.fuel <= 0:
        raise ConfigError("--fuel must be positive")
    if args.n < 1:
        raise ConfigError("--n must be at least 1")
    cfg = RunConfig(mode=args.mode, characteristic=char, e=args.e, q=args.q, n=args.n,
                    weight=parse_weight(args.weight), beta=args.beta,
                    probes=tuple(int(x) for x in args.probes.split(",")),
                    bound_exp=args.bound_exp, bound_inv=args.bound_inv, fuel=args.fuel,
                    seed=args.seed, samples=args.samples, out=args.out)
    cfg.field()
    return cfg


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.grid and args.command in _PER_POINT:
            items = _map(_grid_item, default_grid(), args.command)
            doc = {"grid": "default", "points": items, "pass": all(x["pass"] for x in items)}
        else:
            body = COMMANDS[args.command](cfg)
            doc = {**cfg.header(), **body} if args.command != "grid" else body
    except (ConfigError, FieldError, ModExprError) as exc:
        _emit({"error": str(exc)}, args.out)
        return 2
    _emit(doc, cfg.out)
    return 0 if doc.get("pass", True) else 1


if __name__ == "__main__":
    sys.exit(main())
