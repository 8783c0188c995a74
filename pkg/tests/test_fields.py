import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from heckelab.fields import CycNum, FieldError, FieldSpec, ModP, q_residue, quantum_integer


def test_quantum_integer_vanishes_at_e():
    F = FieldSpec.nondegenerate(2)
    assert quantum_integer(F, 2) == 0
    assert quantum_integer(F, 1) == 1


def test_quantum_integer_in_f5_with_q_4():
    F = FieldSpec.nondegenerate(2, q=4, characteristic=5)
    assert F.e == 2
    assert quantum_integer(F, 2) == 0


def test_q_residue_examples():
    assert q_residue(FieldSpec.nondegenerate(3), 0) == 1
    assert q_residue(FieldSpec.degenerate(3), 5) == FieldSpec.degenerate(3)(2)
    assert q_residue(FieldSpec.nondegenerate(2), 1) == -1


def test_q_residue_is_well_defined_on_residues():
    F = FieldSpec.nondegenerate(3)
    assert q_residue(F, 1) == q_residue(F, 4) == q_residue(F, -2)


@pytest.mark.parametrize("e", [4, 6])
def test_degenerate_rejects_composite_e(e):
    with pytest.raises(FieldError):
        FieldSpec.degenerate(e)


def test_nondegenerate_rejects_wrong_e():
    with pytest.raises(FieldError):
        FieldSpec.nondegenerate(3, q=2, characteristic=5)   # 2 has order 4 mod 5


def test_compute_e_matches_declared():
    for F in (FieldSpec.nondegenerate(0), FieldSpec.nondegenerate(2), FieldSpec.nondegenerate(3),
              FieldSpec.nondegenerate(4), FieldSpec.nondegenerate(3, characteristic=7)):
        assert F.compute_e() == F.e


def test_cyclotomic_root_has_order_e():
    F = FieldSpec.nondegenerate(5)
    assert F.q ** 5 == 1
    assert all(F.q ** k != 1 for k in range(1, 5))


small = st.integers(-30, 30)
cyc3 = st.tuples(small, small).map(lambda c: CycNum([mpq(c[0]), mpq(c[1])], FieldSpec.nondegenerate(3).modulus))
cyc5 = st.lists(small, min_size=4, max_size=4).map(
    lambda c: CycNum([mpq(x) for x in c], FieldSpec.nondegenerate(5).modulus))
modp = st.integers(0, 6).map(lambda v: ModP(v, 7))


@given(st.one_of(st.tuples(cyc3, cyc3, cyc3), st.tuples(cyc5, cyc5, cyc5), st.tuples(modp, modp, modp)))
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0 * a
    if a:
        assert a * (1 / a) == 1


@given(cyc5, st.integers(-3, 3))
def test_scalar_fast_paths_agree(x, k):
    F = FieldSpec.nondegenerate(5)
    assert x + k == x + F(k)
    assert x * k == x * F(k)
    assert k * x == F(k) * x


def test_fmt_forms():
    assert FieldSpec.nondegenerate(0).fmt(mpq(3, 2)) == "3/2"
    assert FieldSpec.degenerate(3).fmt(5) == "2 mod 3"
