"""Exact symmetric bilinear forms: Gram matrices, inertia, definiteness and the
squared-cosh surrogate for hyperbolic distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DimensionMismatch, InvalidConfiguration, ZeroNormError
from .linalg import Scalar


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric matrix of intersection numbers; entry ``(i, j)`` is ``E_i . E_j``.

    Entries are exact (``int`` or ``Fraction``). Curve configurations use
    integers; generic pairings in cone computations may be rational.
    """

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(linalg.simplify(linalg.as_fraction(v)) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n < 1:
            raise InvalidConfiguration("Gram matrix must have dimension >= 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvalidConfiguration(f"Gram matrix row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InvalidConfiguration(
                        f"Gram matrix is not symmetric: entry ({i},{j}) = {rows[i][j]} "
                        f"but ({j},{i}) = {rows[j][i]}"
                    )

    @classmethod
    def identity(cls, n: int) -> "GramMatrix":
        return cls(tuple(tuple(r) for r in linalg.identity(n)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    def restrict(self, indices: Sequence[int]) -> "GramMatrix":
        """Principal submatrix on ``indices`` (in the given order)."""
        return GramMatrix(tuple(tuple(self.entries[i][j] for j in indices) for i in indices))

    def rank(self) -> int:
        return linalg.rank(self.entries)

    def pair(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Fraction:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} against a form of dim {self.dim}")
        return linalg.bilinear(self.entries, x, y)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for row in self.entries for v in row)


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_zero: int
    n_minus: int

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_zero + self.n_minus

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)

    def __str__(self) -> str:
        return f"({self.n_plus},{self.n_zero},{self.n_minus})"


class Definiteness(str, Enum):
    NEGATIVE_DEFINITE = "negative-definite"
    NEGATIVE_SEMIDEFINITE = "negative-semidefinite-degenerate"
    HAS_POSITIVE = "has-positive-direction"


def signature(g: GramMatrix) -> Signature:
    """Inertia of ``g`` by exact symmetric congruence reduction.

    A nonzero diagonal entry is used as a 1x1 pivot. When every remaining
    diagonal entry vanishes but some off-diagonal ``a_ij`` does not, the block
    ``[[0, a_ij], [a_ij, 0]]`` is split off as a hyperbolic pair, which
    contributes one positive and one negative square.
    """
    a = [[Fraction(v) for v in row] for row in g.entries]
    active = list(range(g.dim))
    plus = minus = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is not None:
            p = a[piv][piv]
            if p > 0:
                plus += 1
            else:
                minus += 1
            rest = [k for k in active if k != piv]
            col = {k: a[k][piv] for k in rest}
            for k in rest:
                if col[k]:
                    f = col[k] / p
                    for m in rest:
                        a[k][m] -= f * a[piv][m]
            active = rest
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = a[i][j]
        plus += 1
        minus += 1
        rest = [k for k in active if k not in (i, j)]
        ci = {k: a[k][i] for k in rest}
        cj = {k: a[k][j] for k in rest}
        for k in rest:
            for m in rest:
                a[k][m] -= (ci[k] * cj[m] + cj[k] * ci[m]) / b
        active = rest
    return Signature(plus, len(active), minus)


def definiteness(g: GramMatrix) -> Definiteness:
    s = signature(g)
    if s.n_plus > 0:
        return Definiteness.HAS_POSITIVE
    if s.n_zero > 0:
        return Definiteness.NEGATIVE_SEMIDEFINITE
    return Definiteness.NEGATIVE_DEFINITE


def nondegenerate_part(g: GramMatrix) -> tuple[list[int], GramMatrix]:
    """Indices of a maximal independent set of rows and the principal submatrix on them.

    For a symmetric matrix such a principal submatrix is nonsingular, so it is the
    Gram matrix of the numerical classes (the quotient by the radical).
    """
    idx = linalg.independent_rows(g.entries)
    if not idx:
        raise InvalidConfiguration("the form is identically zero")
    return idx, g.restrict(idx)


def numerical_signature(g: GramMatrix) -> Signature:
    """Signature of the form induced on the quotient by its kernel."""
    return signature(nondegenerate_part(g)[1])


def norm_and_pairing(x: Sequence[Scalar], y: Sequence[Scalar], g: GramMatrix) -> tuple[Fraction, Fraction, Fraction]:
    """``(x^2, x.y, y^2)``."""
    return g.pair(x, x), g.pair(x, y), g.pair(y, y)


def in_light_cone(x: Sequence[Scalar], g: GramMatrix) -> bool:
    return g.pair(x, x) > 0


@dataclass(frozen=True)
class DistanceSurrogate:
    """``(x.y)^2 / (x^2 y^2)``; for two points of the positive cone this is cosh^2 of their distance."""

    value: Fraction

    def cosh(self) -> float:
        return math.sqrt(self.value)

    def distance(self) -> float:
        """Hyperbolic distance, meaningful only when both rays lie in V+. Reporting only."""
        return math.acosh(max(1.0, self.cosh()))


def distance_surrogate(x: Sequence[Scalar], y: Sequence[Scalar], g: GramMatrix) -> DistanceSurrogate:
    xx, xy, yy = norm_and_pairing(x, y, g)
    if xx == 0 or yy == 0:
        raise ZeroNormError("distance surrogate needs x^2 != 0 and y^2 != 0")
    return DistanceSurrogate(xy * xy / (xx * yy))
