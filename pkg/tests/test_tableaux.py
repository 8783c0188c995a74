from math import factorial

import pytest

from heckelab.tableaux import multipartitions, standard_tableaux, tableau_residues


def test_residue_sets_small():
    assert tableau_residues(2, (0,), 3) == {(0, 1), (0, 2)}
    assert tableau_residues(2, (0,), 2) == {(0, 1)}
    assert tableau_residues(1, (4,), 0) == {(4,)}


def _shape(nodes, level):
    rows = [{} for _ in range(level)]
    for comp, r, _ in nodes:
        rows[comp][r] = rows[comp].get(r, 0) + 1
    return tuple(tuple(rows[comp][r] for r in sorted(rows[comp])) for comp in range(level))


@pytest.mark.parametrize("n,level", [(1, 1), (2, 2), (3, 2), (3, 3)])
def test_sum_of_squares_of_tableau_counts(n, level):
    # sum over shapes of (#standard tableaux)^2 is the algebra dimension
    counts = {}
    for nodes in standard_tableaux(n, level):
        shape = _shape(nodes, level)
        counts[shape] = counts.get(shape, 0) + 1
    assert sum(c * c for c in counts.values()) == level ** n * factorial(n)
    assert set(counts) == set(multipartitions(n, level))
