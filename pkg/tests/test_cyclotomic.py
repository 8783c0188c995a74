from math import factorial

import pytest
from hypothesis import given, strategies as st

from heckelab.affine import AffineHecke, random_element
from heckelab.cyclotomic import (CyclotomicQuotient, Weight, blocks, pi_between, project,
                                 quotient, tableau_spectrum)
from heckelab.fields import FieldSpec

NONDEG3 = FieldSpec.nondegenerate(3)
DEG2 = FieldSpec.degenerate(2)

SMALL = [(FieldSpec.nondegenerate(3), 2, (0, 1)), (FieldSpec.nondegenerate(2), 2, (0, 0)),
         (FieldSpec.nondegenerate(0), 3, (0,)), (FieldSpec.degenerate(0), 2, (0, 1)),
         (FieldSpec.degenerate(2), 3, (0,)), (FieldSpec.degenerate(3), 2, (0, 0))]


def _label(x):
    return x.describe() if isinstance(x, FieldSpec) else str(x)


def test_level_one_n_one_is_the_field():
    A = quotient(FieldSpec.nondegenerate(3), 1, Weight((0,)))
    assert A.dim == 1
    assert A.L(1) == A.one


def test_degenerate_jm_element_is_the_transposition():
    A = quotient(DEG2, 2, Weight((0,)))
    assert A.L(1).is_zero()
    assert A.L(2) == A.T(1)


@pytest.mark.parametrize("F,n,kappa", SMALL, ids=_label)
def test_dimension_law_and_relations(F, n, kappa):
    A = quotient(F, n, Weight(kappa))
    assert A.dim == len(kappa) ** n * factorial(n)
    assert A.generated_dimension() == A.dim
    assert all(A.check_relations().values())


def test_spectrum_examples():
    assert quotient(NONDEG3, 2, Weight((0,))).spectrum() == {(0, 1), (0, 2)}
    assert quotient(DEG2, 2, Weight((0,))).spectrum() == {(0, 1)}
    assert quotient(FieldSpec.nondegenerate(0), 1, Weight((4,))).spectrum() == {(4,)}


@pytest.mark.parametrize("F,n,kappa", SMALL, ids=_label)
def test_spectrum_matches_tableaux(F, n, kappa):
    A = quotient(F, n, Weight(kappa))
    assert A.spectrum() == tableau_spectrum(A)


@pytest.mark.parametrize("F,n,kappa", SMALL, ids=_label)
def test_idempotents_orthogonal_and_complete(F, n, kappa):
    A = quotient(F, n, Weight(kappa))
    seqs = sorted(A.spectrum())
    total = A.zero
    for i in seqs:
        ei = A.idempotent(i)
        total = total + ei
        for j in seqs:
            assert ei * A.idempotent(j) == (ei if i == j else A.zero)
    assert total == A.one


def test_n1_idempotents():
    A = quotient(NONDEG3, 1, Weight((0,)))
    assert A.idempotent((0,)) == A.one
    assert A.idempotent((1,)).is_zero()


def test_closed_formula_small_example():
    A = quotient(NONDEG3, 2, Weight((0,)))
    for i in [(0, 1), (0, 2), (1, 1), (0, 0)]:
        assert A.idempotent_closed_formula(i, 3) == A.idempotent(i)


def test_blocks_example():
    A = quotient(NONDEG3, 2, Weight((0,)))
    rows = blocks(A)
    assert [b["beta"] for b in rows] == [((0, 1), (1, 1)), ((0, 1), (2, 1))]
    assert [b["dim"] for b in rows] == [1, 1]
    assert [b["beta"] for b in blocks(quotient(DEG2, 2, Weight((0,))))] == [((0, 1), (1, 1))]


@pytest.mark.parametrize("F,n,kappa", SMALL, ids=_label)
def test_block_dims_sum_to_total(F, n, kappa):
    A = quotient(F, n, Weight(kappa))
    assert sum(b["dim"] for b in blocks(A)) == A.dim


def test_pi_between_examples():
    big = quotient(NONDEG3, 2, Weight((0, 1)))
    small = quotient(NONDEG3, 2, Weight((0,)))
    x = big.T(1) * big.L(2)
    assert pi_between(x, big) == x
    for i in sorted(big.spectrum()):
        assert pi_between(big.idempotent(i), small) == small.idempotent(i)
    double = quotient(NONDEG3, 1, Weight((0, 0)))
    single = quotient(NONDEG3, 1, Weight((0,)))
    assert pi_between(double.L(1), single) == single.one


@given(st.integers(0, 10 ** 6))
def test_projection_is_a_homomorphism(seed):
    import random
    rng = random.Random(seed)
    F, n, kappa = SMALL[rng.randrange(len(SMALL))]
    A = quotient(F, n, Weight(kappa))
    H = AffineHecke(F, n)
    u, v = random_element(H, rng, terms=2), random_element(H, rng, terms=2)
    assert project(u * v, A) == project(u, A) * project(v, A)
    assert project(u + v, A) == project(u, A) + project(v, A)


@given(st.integers(0, 10 ** 6))
def test_pi_between_is_a_homomorphism(seed):
    import random
    rng = random.Random(seed)
    big = quotient(NONDEG3, 2, Weight((0, 1)))
    small = quotient(NONDEG3, 2, Weight((0,)))
    x = big.vector({rng.randrange(big.dim): NONDEG3(rng.randint(-2, 2)) for _ in range(3)})
    y = big.vector({rng.randrange(big.dim): NONDEG3(rng.randint(-2, 2)) for _ in range(3)})
    assert pi_between(x * y, small) == pi_between(x, small) * pi_between(y, small)


def test_quotient_rejects_empty_weight():
    with pytest.raises(ValueError):
        CyclotomicQuotient(NONDEG3, 2, Weight(()))
