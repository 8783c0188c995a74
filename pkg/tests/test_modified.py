import pytest
from hypothesis import given, strategies as st

from heckelab.cyclotomic import Weight, quotient
from heckelab.fields import FieldSpec
from heckelab.modified import (LocalizedModuleElement, ModExprError, ModifiedAlgebra,
                               basis_independence, center_candidate, evaluate,
                               is_central_probe, probe_coherence, relation_suite, rho_hat)
from heckelab.poly import Poly

NONDEG3 = FieldSpec.nondegenerate(3)


def _label(x):
    return x.describe() if isinstance(x, FieldSpec) else str(x)


@pytest.fixture(scope="module")
def M():
    return ModifiedAlgebra(NONDEG3, 2, "0:1,1:1")


def test_idempotent_evaluates_to_spectral_idempotent(M):
    A = quotient(NONDEG3, 2, Weight((0,)))
    assert evaluate(M, M.e((0, 1)), Weight((0,))) == A.idempotent((0, 1))


def test_inverse_atom_inverts_difference(M):
    i = (0, 1)
    x = M.inv(1, 2, 0, i) * (M.X(1, 1, i) - M.X(2, 1, i))
    assert M.equal(x, M.e(i))


def test_inverse_side_condition(M):
    with pytest.raises(ModExprError):
        M.inv(2, 1, 1, (0, 1))   # i_2 = 1 + i_1


def test_module_action_examples(M):
    i = (1, 0)
    f = Poly.var(NONDEG3, 2, 2)
    m = LocalizedModuleElement.basic(M, i, f)
    t1f = LocalizedModuleElement.basic(M, i, Poly.var(NONDEG3, 2, 1) * f)
    assert rho_hat(M, M.X(1, 1, i), m) == t1f
    assert rho_hat(M, M.e(i), m) == m
    assert rho_hat(M, M.e((0, 1)), m).comps == {}


@pytest.mark.parametrize("F,beta", [(NONDEG3, "0:1,1:1"), (NONDEG3, "0:2"),
                                    (FieldSpec.degenerate(0), "0:1,1:1"),
                                    (FieldSpec.degenerate(3), "0:2"),
                                    (FieldSpec.nondegenerate(2), "0:1,1:1")], ids=_label)
def test_relation_suite_both_semantics(F, beta):
    M = ModifiedAlgebra(F, 2, beta)
    res = relation_suite(M, M.probe_panel(levels=(1, 2), max_dim=96))
    assert res["pass"], res["failures"][:3]
    names = set(res["relations"])
    assert names


def test_relation_suite_n3_degenerate():
    M = ModifiedAlgebra(FieldSpec.degenerate(3), 3, "0:1,1:1,2:1")
    res = relation_suite(M, M.probe_panel(levels=(1,), max_dim=96))
    assert res["pass"], res["failures"][:3]


def test_basis_independence_examples():
    assert basis_independence(ModifiedAlgebra(NONDEG3, 1, "0:1"), 1, 1)["pass"]
    res = basis_independence(ModifiedAlgebra(NONDEG3, 2, "0:1,1:1"), 1, 1)
    assert res["pass"] and res["rank"] == res["size"]
    dup = basis_independence(ModifiedAlgebra(NONDEG3, 2, "0:1,1:1"), 1, 1, duplicate=True)
    assert not dup["pass"] and len(dup["dependent"]) == 1


@pytest.mark.parametrize("F,beta", [(FieldSpec.degenerate(0), "0:1,1:1"),
                                    (FieldSpec.degenerate(3), "0:2")], ids=_label)
def test_basis_independence_degenerate(F, beta):
    assert basis_independence(ModifiedAlgebra(F, 2, beta), 1, 1)["pass"]


def test_power_sum_is_central(M):
    F = M.F
    p1 = Poly.var(F, 2, 1) + Poly.var(F, 2, 2)
    z = center_candidate(M, {i: p1 for i in M.seqs})
    assert is_central_probe(M, z)["pass"]


def test_single_x_is_not_central(M):
    F = M.F
    x1 = M.X(1, 1)
    res = is_central_probe(M, x1)
    assert not res["pass"] and res["witness"].startswith("T_1")
    with pytest.raises(ModExprError):
        center_candidate(M, {i: Poly.var(F, 2, 1) for i in M.seqs})


def test_n1_everything_commutes():
    M = ModifiedAlgebra(NONDEG3, 1, "0:1")
    assert is_central_probe(M, M.X(1, 1))["pass"]


@given(st.sampled_from([(1, 0, 0), (1, 1, 0), (2, 0, 1), (2, 1, 1)]))
def test_probe_coherence(spec):
    k, p, idx = spec
    M = ModifiedAlgebra(NONDEG3, 2, "0:1,1:1")
    i = M.seqs[idx]
    x = M.X(k, p, i) * M.T(1, i) + M.inv(1, 2, 0, i)
    assert probe_coherence(M, x, Weight((0, 0, 1, 1)), Weight((0, 1)))
