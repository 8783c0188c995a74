import pytest
from hypothesis import given, strategies as st

from heckelab.centerlab import (EXPLORATORY, PROVEN, center_basis, in_scope, monomial_symmetric,
                                partitions, surjectivity_check, symmetric_jm_span)
from heckelab.cyclotomic import Weight, blocks, quotient
from heckelab.fields import FieldSpec
from heckelab.linalg import rank

DEG0 = FieldSpec.degenerate(0)


def _rank(A, elems):
    return rank(A.F, [list(z.vec) for z in elems])


def test_group_algebra_of_s2():
    A = quotient(DEG0, 2, Weight((0,)))
    Z = center_basis(A)
    assert len(Z) == 2
    S = symmetric_jm_span(A)
    assert S.dim == 2
    # L_1 + L_2 is the transposition at level one
    assert A.L(1) + A.L(2) == A.T(1)


@pytest.mark.parametrize("F", [DEG0, FieldSpec.nondegenerate(3), FieldSpec.degenerate(2)],
                         ids=lambda F: F.describe())
def test_level_one_rank_one_is_scalars(F):
    A = quotient(F, 1, Weight((0,)))
    assert len(center_basis(A)) == 1


def test_rank_one_level_two_is_commutative():
    A = quotient(DEG0, 1, Weight((0, 1)))
    assert A.dim == 2 and len(center_basis(A)) == 2


def test_partitions_and_monomials():
    assert list(partitions(4, 2)) == [(4,), (3, 1), (2, 2)]
    assert list(partitions(0, 3)) == [()]
    assert monomial_symmetric(DEG0, 1, (1, 1)).is_zero()
    assert len(monomial_symmetric(DEG0, 3, (2, 1)).terms) == 6


CASES = [(DEG0, 2, (0, 1)), (FieldSpec.nondegenerate(3), 2, (0, 1)),
         (FieldSpec.degenerate(3), 3, (0,)), (FieldSpec.nondegenerate(0), 2, (0, 0)),
         (FieldSpec.degenerate(2), 2, (0, 0))]


@pytest.mark.parametrize("case", CASES, ids=lambda c: "%s n=%d %s" % (c[0].describe(), c[1], c[2]))
def test_blocks_and_symmetric_span_are_central(case):
    F, n, kappa = case
    A = quotient(F, n, Weight(kappa))
    Z = center_basis(A)
    base = _rank(A, Z)
    for block in blocks(A):
        assert _rank(A, Z + [block["idempotent"]]) == base
    S = symmetric_jm_span(A)
    assert _rank(A, Z + S.elements) == base
    assert S.saturation_degree < S.degrees_tried


@pytest.mark.parametrize("case", CASES, ids=lambda c: "%s n=%d %s" % (c[0].describe(), c[1], c[2]))
def test_surjectivity_in_scope(case):
    F, n, kappa = case
    report = surjectivity_check(F, n, Weight(kappa))
    assert report.scope == PROVEN
    assert report.surjective and report.passed, report.to_json()
    assert sum(report.block_dims.values()) == report.center_dim


def test_scope_labels():
    assert in_scope(DEG0, 5)
    assert in_scope(FieldSpec.nondegenerate(3), 2)
    assert not in_scope(FieldSpec.nondegenerate(3), 3)
    report = surjectivity_check(FieldSpec.nondegenerate(2), 3, Weight((0,)), klr=False)
    assert report.scope == EXPLORATORY


def test_degree_cap_can_undercount():
    A = quotient(DEG0, 2, Weight((0, 1)))
    capped = symmetric_jm_span(A, max_degree=0)
    assert capped.dim == 1 < len(center_basis(A))


@given(st.sampled_from(CASES), st.integers(0, 10 ** 6))
def test_central_elements_commute_with_random_elements(case, seed):
    import random
    F, n, kappa = case
    A = quotient(F, n, Weight(kappa))
    rng = random.Random(seed)
    x = A.vector({k: F(rng.randint(-3, 3)) for k in range(A.dim)})
    for z in center_basis(A):
        assert z * x == x * z
