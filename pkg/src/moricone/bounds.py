"""Diagram-method constants ``d, C1, C2`` and the resulting Picard-number bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Sequence

from .config import Configuration, DistanceMode, Verdict, build_graph, enumerate_subsets
from .errors import InvalidConfiguration
from .linalg import Scalar, as_fraction
from .oriented import OrientedDiagram, elliptic_by_face, is_pattern_e_set, is_pattern_elliptic, oriented_distance


def lemma2_bound(c1: Scalar, c2: Scalar) -> Fraction:
    """Surfaces: ``rho < 96 (C1 + C2/3) + 68``."""
    c1, c2 = as_fraction(c1), as_fraction(c2)
    if c1 < 0 or c2 < 0:
        raise InvalidConfiguration("C1 and C2 must be nonnegative")
    return 96 * (c1 + c2 / 3) + 68


def lemma3_bound(c1: Scalar, c2: Scalar) -> Fraction:
    """3-folds: ``rho <= (16/3) C1 + 4 C2 + 6``."""
    c1, c2 = as_fraction(c1), as_fraction(c2)
    if c1 < 0 or c2 < 0:
        raise InvalidConfiguration("C1 and C2 must be nonnegative")
    return Fraction(16, 3) * c1 + 4 * c2 + 6


@dataclass(frozen=True)
class DiameterResult:
    d: int
    witness: tuple[int, ...] | None
    vacuous: bool
    complete: bool


def _subset_diameter(obj, subset: Sequence[int], mode: DistanceMode) -> float:
    if isinstance(obj, OrientedDiagram):
        nodes = list(subset) if mode is DistanceMode.INDUCED else list(range(obj.size))
        dist = oriented_distance(obj, nodes)
        pos = {v: i for i, v in enumerate(nodes)}
        vals = [dist.matrix[pos[a]][pos[b]] for a in subset for b in subset if a != b]
        return max(vals, default=0)
    return build_graph(obj).diameter(subset, mode)


def compute_d(
    c: Configuration | OrientedDiagram,
    minimal_subsets: Sequence[Sequence[int]],
    complete: bool = True,
    mode: DistanceMode = DistanceMode.INDUCED,
) -> DiameterResult:
    """Largest diameter over the Lanner subsets (surfaces) or E-sets (3-folds).

    A disconnected subset has infinite diameter and is reported as an error,
    since minimal non-elliptic subsets are connected.
    """
    best, witness = 0, None
    for s in minimal_subsets:
        diam = _subset_diameter(c, s, mode)
        if diam == inf:
            raise InvalidConfiguration(f"subset {tuple(s)} is disconnected; its diameter is infinite")
        if witness is None or diam > best:
            best, witness = int(diam), tuple(s)
    return DiameterResult(int(best), witness, not minimal_subsets, complete)


@dataclass(frozen=True)
class CountingConstants:
    c1: Fraction
    c2: Fraction
    c1_witness: tuple[int, ...] | None
    c2_witness: tuple[int, ...] | None
    ordered_pairs: bool
    vacuous: bool
    complete: bool


def _pair_distances(c, subset: Sequence[int], mode: DistanceMode, ordered: bool) -> list[float]:
    if isinstance(c, OrientedDiagram):
        nodes = list(subset) if mode is DistanceMode.INDUCED else list(range(c.size))
        dist = oriented_distance(c, nodes)
        pos = {v: i for i, v in enumerate(nodes)}
        pairs = itertools.permutations(subset, 2) if ordered else itertools.combinations(subset, 2)
        return [dist.matrix[pos[a]][pos[b]] for a, b in pairs]
    table = build_graph(c).distances(list(subset), mode)
    pairs = itertools.permutations(subset, 2) if ordered else itertools.combinations(subset, 2)
    return [table[p] for p in pairs]


def compute_counting_constants(
    c: Configuration | OrientedDiagram,
    d: int,
    elliptic_subsets: Sequence[Sequence[int]],
    ordered_pairs: bool | None = None,
    complete: bool = True,
    mode: DistanceMode = DistanceMode.INDUCED,
) -> CountingConstants:
    """Smallest ``C1, C2`` satisfying both pair-count inequalities over the given
    elliptic subsets: pairs at distance in ``[1, d]`` and in ``[d+1, 2d+1]``.

    Pairs are unordered for surfaces and ordered for 3-folds unless overridden.
    """
    if d < 0:
        raise InvalidConfiguration("d must be >= 0")
    if ordered_pairs is None:
        ordered_pairs = isinstance(c, OrientedDiagram)
    c1 = c2 = Fraction(0)
    w1 = w2 = None
    for s in elliptic_subsets:
        dists = _pair_distances(c, s, mode, ordered_pairs)
        r1 = Fraction(sum(1 for x in dists if 1 <= x <= d), len(s))
        r2 = Fraction(sum(1 for x in dists if d + 1 <= x <= 2 * d + 1), len(s))
        if w1 is None or r1 > c1:
            c1, w1 = r1, tuple(s)
        if w2 is None or r2 > c2:
            c2, w2 = r2, tuple(s)
    return CountingConstants(c1, c2, w1, w2, ordered_pairs, not elliptic_subsets, complete)


@dataclass(frozen=True)
class BoundReport:
    mode: str  # "surface" | "cy3"
    d: int
    d_source: str  # "computed" | "override"
    d_witness: tuple[int, ...] | None
    c1: Fraction
    c2: Fraction
    constants_source: str
    lemma2_bound: Fraction
    lemma3_bound: Fraction
    applicable_bound: str
    rho: int | None
    consistent: bool | None
    minimal_count: int
    elliptic_count: int
    complete: bool
    definition: str
    distance_mode: DistanceMode
    caveats: tuple[str, ...]


def bound_report(
    c: Configuration | OrientedDiagram,
    max_size: int = 5,
    d_override: int | None = None,
    c1_override: Scalar | None = None,
    c2_override: Scalar | None = None,
    mode: DistanceMode = DistanceMode.INDUCED,
) -> BoundReport:
    """Enumerate subsets, measure ``d, C1, C2`` and evaluate both bounds.

    Surfaces compare ``rho`` against ``96(C1 + C2/3) + 68`` (strict); 3-folds
    against ``(16/3)C1 + 4C2 + 6``.
    """
    caveats = []
    if isinstance(c, OrientedDiagram):
        kind = "cy3"
        top = min(max_size, c.size)
        complete = max_size >= c.size
        if c.rays is not None:
            fe = elliptic_by_face(c, max_size=top)
            elliptic = [s for s, ok in fe.elliptic.items() if ok]
            minimal = list(fe.e_sets)
            definition = "face containment in the realized cone"
        else:
            elliptic, minimal = [], []
            for k in range(1, top + 1):
                for s in itertools.combinations(range(c.size), k):
                    if is_pattern_elliptic(c, s):
                        elliptic.append(s)
                    elif is_pattern_e_set(c, s):
                        minimal.append(s)
            definition = "diagram patterns (classical Dynkin / Lanner shapes without single arrows)"
            if c.single_arrows():
                caveats.append("single arrows present: pattern tables cover only diagrams without single arrows")
        rho = c.meta.get("rho")
        if rho is None and c.rays is not None:
            from .linalg import rank

            rho = rank(c.rays)
        caveats.append("3-fold pair counts use ordered pairs (R1, R2); surface counts use unordered pairs")
    else:
        kind = "surface"
        enum = enumerate_subsets(c, None, max_size)
        complete = enum.complete
        elliptic = [x.subset for x in enum.items if x.verdict is Verdict.ELLIPTIC]
        minimal = [x.subset for x in enum.items if x.verdict is Verdict.LANNER]
        definition = "negative definiteness of the induced intersection form"
        rho = c.gram.rank()

    if d_override is not None:
        dres = DiameterResult(d_override, None, False, complete)
        d_source = "override"
    else:
        dres = compute_d(c, minimal, complete, mode)
        d_source = "computed"
        if dres.vacuous:
            caveats.append(f"no minimal non-elliptic subsets of size <= {max_size}: d = 0 is vacuous")
    consts = compute_counting_constants(c, dres.d, elliptic, complete=complete, mode=mode)
    c1, c2 = consts.c1, consts.c2
    source = "computed"
    if c1_override is not None or c2_override is not None:
        source = "override"
        c1 = as_fraction(c1_override) if c1_override is not None else c1
        c2 = as_fraction(c2_override) if c2_override is not None else c2
    if not complete:
        caveats.append(
            f"subset enumeration capped at size {max_size}: d, C1, C2 are lower estimates of the true constants"
        )
    if consts.vacuous:
        caveats.append("no elliptic subsets enumerated: C1 = C2 = 0 is vacuous")
    b2, b3 = lemma2_bound(c1, c2), lemma3_bound(c1, c2)
    if kind == "surface":
        applicable = "lemma2"
        consistent = None if rho is None else rho < b2
    else:
        applicable = "lemma3"
        consistent = None if rho is None else rho <= b3
    return BoundReport(
        mode=kind,
        d=dres.d,
        d_source=d_source,
        d_witness=dres.witness,
        c1=c1,
        c2=c2,
        constants_source=source,
        lemma2_bound=b2,
        lemma3_bound=b3,
        applicable_bound=applicable,
        rho=rho,
        consistent=consistent,
        minimal_count=len(minimal),
        elliptic_count=len(elliptic),
        complete=complete,
        definition=definition,
        distance_mode=mode,
        caveats=tuple(caveats),
    )
