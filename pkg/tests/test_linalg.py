from hypothesis import given, strategies as st

from heckelab.fields import FieldSpec
from heckelab.linalg import invert, kernel, matmul, matvec, minpoly, rank, solve

Q = FieldSpec.degenerate(0)
F7 = FieldSpec.degenerate(7)


def test_minpoly_examples():
    assert minpoly(Q, [[1, 0], [0, 1]]) == [-1, 1]
    assert minpoly(Q, [[0, 1], [1, 0]]) == [-1, 0, 1]


def matrices(field, rows=3, cols=3):
    return st.lists(st.lists(st.integers(-3, 3).map(field), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


@given(st.sampled_from([Q, F7]).flatmap(lambda F: st.tuples(st.just(F), matrices(F, 3, 4))))
def test_rank_nullity(pair):
    F, M = pair
    K = kernel(F, M)
    assert rank(F, M) + len(K) == 4
    for v in K:
        assert all(x == 0 for x in matvec(M, v))


@given(st.sampled_from([Q, F7]).flatmap(lambda F: st.tuples(st.just(F), matrices(F))))
def test_inverse_or_singular(pair):
    F, M = pair
    if rank(F, M) < 3:
        return
    inv = invert(F, M)
    one = [[F.one if i == j else F.zero for j in range(3)] for i in range(3)]
    assert matmul(M, inv) == one


@given(matrices(Q))
def test_minpoly_annihilates(M):
    coeffs = minpoly(Q, M)
    acc = [[Q.zero] * 3 for _ in range(3)]
    power = [[Q.one if i == j else Q.zero for j in range(3)] for i in range(3)]
    for c in coeffs:
        acc = [[a + c * p for a, p in zip(ra, rp)] for ra, rp in zip(acc, power)]
        power = matmul(power, M)
    assert all(x == 0 for row in acc for x in row)
    assert coeffs[-1] == 1


@given(matrices(Q), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_consistent_system(M, x):
    b = matvec(M, [Q(v) for v in x])
    y = solve(Q, M, b)
    assert y is not None and matvec(M, y) == b
