"""Exact rational linear algebra helpers.

Thin wrappers around sympy's DomainMatrix over QQ (gmpy2-backed when present)
so the rest of the package can hand in nested lists of Fractions or ints.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix


def _qq(x) -> object:
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def to_dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    return DomainMatrix([[_qq(v) for v in r] for r in rows], (nrows, ncols), QQ)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    if ncols == 0 or (ncols is None and not rows[0]):
        return 0
    return to_dm(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0}, as lists of Fractions."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = to_dm(rows, ncols).nullspace()
    return [[_frac(v) for v in r] for r in ns.to_list()]


def rref(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Nonzero rows of the reduced row echelon form."""
    if not rows:
        return []
    m, pivots = to_dm(rows, ncols).rref()
    return [[_frac(v) for v in r] for r in m.to_list()[: len(pivots)]]


def smith(int_rows: Sequence[Sequence[int]], ncols: int):
    """Smith decomposition D = U A V over the integers.

    Returns (diag, U, V) with diag the list of invariant factors (length
    min(rows, cols), zeros trailing) and U, V as nested int lists.
    """
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_decomp

    nrows = len(int_rows)
    a = Matrix(nrows, ncols, lambda i, j: int_rows[i][j])
    d, u, v = smith_normal_decomp(a, domain=ZZ)
    diag = [int(d[k, k]) for k in range(min(nrows, ncols))]
    return diag, [[int(x) for x in u.row(i)] for i in range(nrows)], [
        [int(x) for x in v.row(i)] for i in range(ncols)
    ]
