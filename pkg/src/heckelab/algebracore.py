"""Exact fields, polynomials and dense linear algebra in one namespace.

>>> F = FieldSpec.nondegenerate(2, characteristic=5)
>>> F.fmt(quantum_integer(F, 2))
'0 mod 5'
>>> rank(F, [[1, 2], [2, 4]])
1
"""

from .fields import (CycNum, FieldError, FieldSpec, ModP, cyclotomic_coefficients,
                     q_residue, quantum_integer)
from .linalg import (ExactMatrix, RowSpace, SingularMatrixError, invert, kernel,
                     matmul, matvec, minpoly, rank, rref, solve)
from .poly import Poly, divided_difference, sym_act

__all__ = [
    "FieldSpec", "FieldError", "ModP", "CycNum", "cyclotomic_coefficients",
    "q_residue", "quantum_integer", "Poly", "sym_act", "divided_difference",
    "ExactMatrix", "RowSpace", "SingularMatrixError", "invert", "kernel",
    "matmul", "matvec", "minpoly", "rank", "rref", "solve",
]
