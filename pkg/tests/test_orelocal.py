import random

from hypothesis import given, strategies as st

from heckelab.cyclotomic import Weight
from heckelab.fields import FieldSpec
from heckelab.modified import ModifiedAlgebra
from heckelab.orelocal import (Fraction, FormalSum, HeckeOre, commutative_identities,
                               fraction_add, fraction_eq, fraction_mul, hecke_homomorphism_check,
                               in_multiplicative_set, integer_instance, negative_control,
                               rational_map, verify_O1, verify_O2, zero_divisor_instance)

Z2 = integer_instance()


def test_integer_examples():
    assert fraction_eq(Z2, Fraction(0, 0, 1, 2), Fraction(0, 0, 2, 4))
    w = fraction_mul(Z2, Fraction(0, 0, 3, 2), Fraction(0, 0, 5, 4))
    assert (w.num, w.den) == (15, 8)
    z = fraction_add(Z2, Fraction(0, 0, 3, 2), Fraction(0, 0, 1, 4))
    assert (z.num, z.den) == (14, 8)
    assert fraction_eq(Z2, z, Fraction(0, 0, 7, 4))
    assert not fraction_eq(Z2, z, Fraction(0, 0, 7, 8))


def test_multiplicative_set_membership():
    assert in_multiplicative_set(Z2, 8, 0)
    assert not in_multiplicative_set(Z2, 6, 0)


def test_mismatched_components():
    x, y = Fraction(0, 1, 3, 2), Fraction(1, 1, 1, 2)
    assert fraction_mul(Z2, x, y) is None
    assert fraction_mul(Z2, y, x).i == 0
    s = fraction_add(Z2, x, y)
    assert isinstance(s, FormalSum) and set(s.parts) == {(0, 1), (1, 1)}


def test_commutative_identities():
    assert commutative_identities(100, seed=3)["pass"]


def test_negative_control_breaks_transitivity():
    res = negative_control()
    assert res == {"O1": False, "transitive": False, "witness": [(0, 1), (0, 2), (3, 1)]}
    D = zero_divisor_instance()
    a, b, c = (Fraction(0, 0, *p) for p in res["witness"])
    assert fraction_eq(D, a, b) and fraction_eq(D, b, c) and not fraction_eq(D, a, c)


def test_coprime_modulus_satisfies_o1():
    D = zero_divisor_instance(modulus=9, base=2)
    samples = [(g, g, 2 ** k, 0) for g in range(9) for k in range(1, 4)]
    assert verify_O1(D, samples)["pass"]


fracs = st.builds(lambda a, k: Fraction(0, 0, a, 2 ** k), st.integers(-50, 50), st.integers(0, 6))


@given(fracs, fracs, fracs)
def test_integer_fraction_ring_axioms(x, y, z):
    sigma = rational_map(Z2)
    assert sigma(fraction_mul(Z2, fraction_mul(Z2, x, y), z)) == sigma(x) * sigma(y) * sigma(z)
    lhs = fraction_mul(Z2, x, fraction_add(Z2, y, z))
    rhs = fraction_add(Z2, fraction_mul(Z2, x, y), fraction_mul(Z2, x, z))
    assert fraction_eq(Z2, lhs, rhs)


def _hecke():
    return HeckeOre(ModifiedAlgebra(FieldSpec.nondegenerate(3), 2, "0:1,1:1"))


def test_hecke_ore_solvers():
    H = _hecke()
    rng = random.Random(5)
    samples = []
    for _ in range(10):
        src = rng.choice(H.M.seqs)
        a, tgt = H.random_element(rng, src)
        samples.append((a, H.random_s(rng, src), H.random_s(rng, tgt), src, tgt))
    assert verify_O2(H.data, samples)["pass"]


def test_hecke_homomorphism_small():
    res = hecke_homomorphism_check(_hecke(), Weight((0, 1)), count=15, seed=2)
    assert res["pass"], res["failures"]
