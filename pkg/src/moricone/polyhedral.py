"""Exact double description for cones ``{x : A x >= 0}``.

Rays come back as primitive integer vectors in sorted order, so the output
is bit-for-bit reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import linalg
from .linalg import Scalar


@dataclass(frozen=True)
class ConeHull:
    rays: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...]
    dim: int  # dimension of the cone itself (rays plus lineality)


def _integer_row(row: Sequence[Scalar]) -> list[int]:
    fr = [linalg.as_fraction(v) for v in row]
    den = lcm(*(v.denominator for v in fr)) if fr else 1
    return [int(v * den) for v in fr]


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _pointed_rays(a: list[list[int]], r: int) -> list[tuple[int, ...]]:
    """Double description for ``a`` with ``r`` columns and column rank ``r``."""
    basis_rows = linalg.independent_rows(a)
    assert len(basis_rows) == r
    k = [a[i] for i in basis_rows]
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []
    for j in range(r):
        e = [0] * r
        e[j] = 1
        rays.append(linalg.primitive(linalg.solve(k, e)))
        zeros.append(sum(1 << i for i in basis_rows if i != basis_rows[j]))

    for idx, row in enumerate(a):
        if idx in basis_rows:
            continue
        vals = [_idot(row, v) for v in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        if not neg:
            bit = 1 << idx
            zeros = [z | bit if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        bit = 1 << idx
        new_rays: list[tuple[int, ...]] = []
        new_zeros: list[int] = []
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if bin(common).count("1") < r - 2:
                    continue
                if any(
                    q != p and q != n and (zeros[q] & common) == common
                    for q in range(len(rays))
                ):
                    continue
                sp, sn = vals[p], vals[n]
                comb = [sp * x - sn * y for x, y in zip(rays[n], rays[p])]
                new_rays.append(linalg.primitive(comb))
                new_zeros.append(common | bit)
        keep = [i for i, s in enumerate(vals) if s >= 0]
        rays = [rays[i] for i in keep] + new_rays
        zeros = [zeros[i] | bit if vals[i] == 0 else zeros[i] for i in keep] + new_zeros
    return rays


def extreme_rays(constraints: Sequence[Sequence[Scalar]], ambient_dim: int | None = None) -> ConeHull:
    """Extreme rays and lineality space of ``{x in Q^n : row . x >= 0 for every row}``.

    When the rows do not span ``Q^n`` the cone contains the lineality space
    ``ker A``; the rays returned then span the pointed part inside ``row(A)``.
    """
    if not constraints:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required when there are no constraints")
        n = ambient_dim
        basis = [tuple(r) for r in linalg.identity(n)]
        return ConeHull((), tuple(basis), n)
    n = len(constraints[0])
    a = [_integer_row(row) for row in constraints]
    red, _ = linalg.rref(a)
    r = len(red)
    lineality = tuple(sorted(linalg.primitive(v) for v in linalg.nullspace(a, n))) if r < n else ()
    if r == 0:
        return ConeHull((), lineality, n)
    # parametrize row(A) as x = B^T w with B the reduced row basis
    b = red
    a_w = [_integer_row([sum((Fraction(row[c]) * b[j][c] for c in range(n)), Fraction(0)) for j in range(r)]) for row in a]
    w_rays = _pointed_rays(a_w, r)
    rays = set()
    for w in w_rays:
        x = [sum((b[j][c] * w[j] for j in range(r)), Fraction(0)) for c in range(n)]
        rays.add(linalg.primitive(x))
    out = tuple(sorted(rays))
    dim = linalg.rank(out) + len(lineality) if out else len(lineality)
    return ConeHull(out, lineality, dim)
