"""Small exact linear algebra kit over ``Fraction``.

Matrices are lists of rows. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Scalar = int | Fraction
Vector = tuple[Scalar, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact number, got {type(x).__name__}")


def simplify(x: Fraction) -> Scalar:
    """Return an ``int`` when the fraction is integral."""
    x = as_fraction(x)
    return x.numerator if x.denominator == 1 else x


def dot(x: Sequence[Scalar], y: Sequence[Scalar]) -> Fraction:
    if len(x) != len(y):
        raise ValueError("length mismatch")
    return sum((as_fraction(a) * b for a, b in zip(x, y)), Fraction(0))


def mat_vec(a: Sequence[Sequence[Scalar]], x: Sequence[Scalar]) -> list[Fraction]:
    return [dot(row, x) for row in a]


def bilinear(g: Sequence[Sequence[Scalar]], x: Sequence[Scalar], y: Sequence[Scalar]) -> Fraction:
    return dot(x, mat_vec(g, y))


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[as_fraction(v) for v in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def independent_rows(rows: Sequence[Sequence[Scalar]]) -> list[int]:
    """Greedy (first-come) indices of a maximal independent set of rows."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for i, row in enumerate(rows):
        if rank(basis + [list(row)]) > len(basis):
            basis.append(list(row))
            chosen.append(i)
    return chosen


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> list[Fraction]:
    """Unique solution of a square nonsingular system."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def determinant(a: Sequence[Sequence[Scalar]]) -> Fraction:
    m = [[as_fraction(v) for v in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def content(v: Sequence[Scalar]) -> Fraction:
    """Positive rational ``r`` with ``v / r`` a primitive integer vector."""
    fr = [as_fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no content")
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    num = reduce(gcd, (abs(x.numerator * (den // x.denominator)) for x in fr), 0)
    return Fraction(num, den)


def primitive(v: Sequence[Scalar]) -> tuple[int, ...]:
    """Positive rescaling of ``v`` to a primitive integer vector."""
    c = content(v)
    out = []
    for x in v:
        q = as_fraction(x) / c
        assert q.denominator == 1
        out.append(q.numerator)
    return tuple(out)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]
