"""Exceptional-curve configurations: graphs, surface invariants, subset
classification, the narrow-parts search and integer ample candidates.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import inf
from typing import Iterable, Sequence

import networkx as nx

from . import linalg
from .errors import Infeasible, InvalidConfiguration, NoSpanningSubset
from .lattice import Definiteness, GramMatrix, Signature, signature
from .linalg import Scalar
from .polyhedral import extreme_rays

log = logging.getLogger(__name__)

NARROW_PARTS_RATIO_BOUND = 3844  # 62 ** 2


class Kind(str, Enum):
    SURFACE = "surface"
    CY3 = "cy3"


@dataclass(frozen=True, eq=True)
class Configuration:
    """Labeled curve classes with their intersection matrix.

    ``canonical`` holds the pairings ``K . E_i`` when known. For surfaces every
    curve is exceptional (``E^2 < 0``) and distinct curves meet nonnegatively.
    """

    labels: tuple[str, ...]
    gram: GramMatrix
    canonical: tuple[int, ...] | None = None
    kind: Kind = Kind.SURFACE
    name: str = ""
    k_squared: int | None = None
    meta: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "kind", Kind(self.kind))
        n = self.gram.dim
        if len(self.labels) != n:
            raise InvalidConfiguration(f"{len(self.labels)} labels for a Gram matrix of dim {n}")
        if len(set(self.labels)) != n:
            raise InvalidConfiguration("curve labels must be distinct")
        for i in range(n):
            for j in range(n):
                if i != j and self.gram[i, j] < 0:
                    raise InvalidConfiguration(
                        f"gram[{i}][{j}] = {self.gram[i, j]}: distinct curves must satisfy E.E' >= 0"
                    )
        if self.kind is Kind.SURFACE:
            for i in range(n):
                if self.gram[i, i] >= 0:
                    raise InvalidConfiguration(
                        f"gram[{i}][{i}] = {self.gram[i, i]}: an exceptional curve needs E^2 < 0"
                    )
        if self.canonical is not None:
            object.__setattr__(self, "canonical", tuple(self.canonical))
            if len(self.canonical) != n:
                raise InvalidConfiguration(f"{len(self.canonical)} canonical pairings for {n} curves")

    @property
    def dim(self) -> int:
        return self.gram.dim

    def self_intersection(self, i: int) -> Scalar:
        return self.gram[i, i]


# --- graph -------------------------------------------------------------------


class DistanceMode(str, Enum):
    INDUCED = "induced"
    AMBIENT = "ambient"


@dataclass(frozen=True)
class CurveGraph:
    """Undirected graph on curve indices with an edge iff ``E_i . E_j > 0``."""

    graph: nx.Graph

    def components(self, subset: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        g = self.graph if subset is None else self.graph.subgraph(subset)
        return sorted(tuple(sorted(c)) for c in nx.connected_components(g))

    def is_connected(self, subset: Iterable[int] | None = None) -> bool:
        return len(self.components(subset)) <= 1

    def distance(self, i: int, j: int, within: Iterable[int] | None = None) -> float:
        """Shortest-path length (``inf`` if unreachable), optionally in an induced subgraph."""
        g = self.graph if within is None else self.graph.subgraph(within)
        try:
            return nx.shortest_path_length(g, i, j)
        except nx.NetworkXNoPath:
            return inf

    def distances(self, subset: Sequence[int], mode: DistanceMode = DistanceMode.INDUCED) -> dict[tuple[int, int], float]:
        g = self.graph.subgraph(subset) if mode is DistanceMode.INDUCED else self.graph
        lengths = dict(nx.all_pairs_shortest_path_length(g))
        return {(a, b): lengths[a].get(b, inf) for a in subset for b in subset}

    def diameter(self, subset: Sequence[int] | None = None, mode: DistanceMode = DistanceMode.INDUCED) -> float:
        nodes = sorted(self.graph.nodes) if subset is None else list(subset)
        if len(nodes) <= 1:
            return 0
        return max(self.distances(nodes, mode).values())


def build_graph(c: Configuration) -> CurveGraph:
    g = nx.Graph()
    for i, label in enumerate(c.labels):
        g.add_node(i, label=label, self_intersection=c.gram[i, i])
    for i in range(c.dim):
        for j in range(i + 1, c.dim):
            if c.gram[i, j] > 0:
                g.add_edge(i, j, weight=c.gram[i, j])
    return CurveGraph(g)


# --- invariants --------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceInvariants:
    rho: int
    delta: Scalar
    p: int | None
    per_curve_genus: tuple[int, ...] | None


def arithmetic_genus(self_int: Scalar, k_pairing: Scalar) -> Fraction:
    """Adjunction: ``p_a(E) = (E^2 + K.E)/2 + 1``."""
    return (Fraction(self_int) + Fraction(k_pairing)) / 2 + 1


def surface_invariants(c: Configuration, with_genus: bool | None = None) -> SurfaceInvariants:
    """``rho`` (rank of the span), ``delta = max(-E^2)`` and, given ``K``, the genera.

    ``with_genus=None`` computes genera only when canonical pairings are present;
    ``True`` makes their absence an error.
    """
    if c.kind is not Kind.SURFACE:
        raise InvalidConfiguration("surface invariants need a surface configuration")
    rho = c.gram.rank()
    delta = max(-c.gram[i, i] for i in range(c.dim))
    if with_genus is None:
        with_genus = c.canonical is not None
    if not with_genus:
        return SurfaceInvariants(rho, delta, None, None)
    if c.canonical is None:
        raise InvalidConfiguration("arithmetic genus requested but canonical pairings K.E are missing")
    genera = []
    for i in range(c.dim):
        pa = arithmetic_genus(c.gram[i, i], c.canonical[i])
        if pa.denominator != 1 or pa < 0:
            raise InvalidConfiguration(
                f"curve {c.labels[i]}: p_a = {pa} is not a nonnegative integer (E^2 + K.E must be even and >= -2)"
            )
        genera.append(int(pa))
    return SurfaceInvariants(rho, delta, max(genera), tuple(genera))


# --- subset classification ---------------------------------------------------


class Verdict(str, Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LANNER = "lanner"
    HYPERBOLIC = "hyperbolic-non-minimal"


@dataclass(frozen=True)
class SubsetClassification:
    subset: tuple[int, ...]
    verdict: Verdict
    signature: Signature
    connected: bool
    witness: tuple[tuple[int, ...], ...] = ()


def _check_subset(c: Configuration, subset: Iterable[int]) -> tuple[int, ...]:
    s = tuple(sorted(set(subset)))
    if not s:
        raise InvalidConfiguration("subset must be nonempty")
    if s[0] < 0 or s[-1] >= c.dim:
        raise InvalidConfiguration(f"subset {s} out of range for {c.dim} curves")
    return s


def _verdict(sig: Signature, proper_plus: Iterable[int]) -> Verdict:
    if sig.n_plus == 0:
        return Verdict.ELLIPTIC if sig.n_zero == 0 else Verdict.PARABOLIC
    return Verdict.LANNER if all(p == 0 for p in proper_plus) else Verdict.HYPERBOLIC


def classify_subset(c: Configuration, subset: Iterable[int], graph: CurveGraph | None = None) -> SubsetClassification:
    """Verdict from the induced form.

    A hyperbolic subset is Lanner when every maximal proper subset is free of
    positive directions; by interlacing that covers all proper subsets.
    """
    s = _check_subset(c, subset)
    graph = graph or build_graph(c)
    sig = signature(c.gram.restrict(s))
    witness: tuple[tuple[int, ...], ...] = ()
    proper_plus: list[int] = []
    if sig.n_plus > 0 and len(s) > 1:
        witness = tuple(itertools.combinations(s, len(s) - 1))
        proper_plus = [signature(c.gram.restrict(w)).n_plus for w in witness]
    return SubsetClassification(s, _verdict(sig, proper_plus), sig, graph.is_connected(s), witness)


@dataclass(frozen=True)
class SubsetEnumeration:
    items: tuple[SubsetClassification, ...]
    max_size: int
    complete: bool


def enumerate_subsets(
    c: Configuration,
    verdicts: Iterable[Verdict | str] | None = None,
    max_size: int = 5,
) -> SubsetEnumeration:
    """All subsets of size ``<= max_size`` whose verdict is in ``verdicts``.

    Ordered by size, then lexicographically. ``complete`` is true only when
    every subset of the configuration was examined.
    """
    if max_size < 1:
        raise InvalidConfiguration("max_size must be >= 1")
    wanted = None if verdicts is None else {Verdict(v) for v in verdicts}
    graph = build_graph(c)
    top = min(max_size, c.dim)
    n_plus: dict[tuple[int, ...], int] = {}
    out = []
    for k in range(1, top + 1):
        for s in itertools.combinations(range(c.dim), k):
            sig = signature(c.gram.restrict(s))
            n_plus[s] = sig.n_plus
            if sig.n_plus > 0 and k > 1:
                witness = tuple(itertools.combinations(s, k - 1))
                verdict = _verdict(sig, (n_plus[w] for w in witness))
            else:
                witness = ()
                verdict = _verdict(sig, ())
            if wanted is None or verdict in wanted:
                out.append(SubsetClassification(s, verdict, sig, graph.is_connected(s), witness))
    return SubsetEnumeration(tuple(out), max_size, max_size >= c.dim)


# --- narrow parts ------------------------------------------------------------


@dataclass(frozen=True)
class NarrowPartsResult:
    success: bool
    chosen: tuple[int, ...]
    max_ratio: Fraction
    connected: bool
    spans: bool
    rho: int
    failed_clauses: tuple[str, ...] = ()
    candidates_examined: int = 0
    exhaustive: bool = True
    warnings: tuple[str, ...] = ()


def pair_ratio(c: Configuration, i: int, j: int) -> Fraction:
    """``4 (E_i.E_j)^2 / (E_i^2 E_j^2)``."""
    return Fraction(4 * c.gram[i, j] ** 2) / (c.gram[i, i] * c.gram[j, j])


def max_pair_ratio(c: Configuration, subset: Sequence[int]) -> Fraction:
    return max((pair_ratio(c, i, j) for i, j in itertools.combinations(subset, 2)), default=Fraction(0))


def spans(c: Configuration, subset: Sequence[int], rho: int | None = None) -> bool:
    """Whether the classes in ``subset`` generate the span of all curves."""
    if rho is None:
        rho = c.gram.rank()
    return linalg.rank([c.gram.entries[i] for i in subset]) == rho


def narrow_parts_search(c: Configuration, rho: int | None = None, max_candidates: int = 200_000) -> NarrowPartsResult:
    """Look for ``rho`` curves that span, are connected and have every pair ratio below 62^2.

    Spanning subsets are ranked by ``(max_ratio, indices)``; the first one that
    satisfies all three conditions wins. On failure the best-ranked spanning
    subset is returned with the clauses it violates.
    """
    if c.kind is not Kind.SURFACE:
        raise InvalidConfiguration("narrow-parts search applies to surface configurations")
    span_rank = c.gram.rank()
    if rho is None:
        rho = span_rank
    if rho < 1 or rho > span_rank:
        raise NoSpanningSubset(f"the curves span rank {span_rank}, cannot generate rank {rho}")
    warnings = []
    if rho < 3:
        warnings.append(f"rho = {rho} < 3: outside the usual range of the narrow-parts lemma")
    graph = build_graph(c)
    candidates = []
    examined = 0
    exhaustive = True
    for s in itertools.combinations(range(c.dim), rho):
        if examined >= max_candidates:
            exhaustive = False
            break
        examined += 1
        if not spans(c, s, span_rank):
            continue
        ratio = max_pair_ratio(c, s)
        candidates.append((ratio, s, graph.is_connected(s)))
    if not candidates:
        raise NoSpanningSubset("no examined subset spans the configuration")
    candidates.sort(key=lambda t: (t[0], t[1]))
    good = [t for t in candidates if t[2] and t[0] < NARROW_PARTS_RATIO_BOUND]
    if not exhaustive:
        warnings.append(f"candidate cap {max_candidates} reached; search is not exhaustive")
    if good:
        ratio, s, _ = good[0]
        return NarrowPartsResult(True, s, ratio, True, True, rho, (), examined, exhaustive, tuple(warnings))
    ratio, s, conn = candidates[0]
    failed = []
    if ratio >= NARROW_PARTS_RATIO_BOUND:
        failed.append("pair ratio 4(Ei.Ej)^2/(Ei^2 Ej^2) < 3844")
    if not conn:
        failed.append("connected diagram")
    return NarrowPartsResult(False, s, ratio, conn, True, rho, tuple(failed), examined, exhaustive, tuple(warnings))


def verify_narrow_parts(c: Configuration, result: NarrowPartsResult) -> dict[str, bool]:
    """Recheck the three certificates of a search result from scratch."""
    s = result.chosen
    ratios = [Fraction(4 * c.gram[i, j] ** 2, 1) / (c.gram[i, i] * c.gram[j, j]) for i in s for j in s if i != j]
    seen = {s[0]}
    frontier = [s[0]]
    while frontier:
        i = frontier.pop()
        for j in s:
            if j not in seen and c.gram[i, j] > 0:
                seen.add(j)
                frontier.append(j)
    return {
        "spans": len(s) == c.gram.rank() and linalg.rank([c.gram.entries[i] for i in s]) == c.gram.rank(),
        "ratio": all(r < NARROW_PARTS_RATIO_BOUND for r in ratios) and max(ratios, default=0) == result.max_ratio,
        "connected": len(seen) == len(s),
    }


# --- ample candidate ---------------------------------------------------------


@dataclass(frozen=True)
class AmpleCandidate:
    basis: tuple[int, ...]
    coefficients: tuple[int, ...]
    h_squared: int
    pairings: tuple[Scalar, ...]


def build_ample_candidate(c: Configuration, basis: Sequence[int]) -> AmpleCandidate:
    """Positive integers ``a_i`` with ``H = sum a_i E_i`` meeting every curve positively.

    The cone ``{a >= 0, (G a)_k >= 0 for all curves k}`` is computed exactly;
    the sum of its primitive extreme rays, made primitive, is the candidate.
    It is accepted only if every inequality holds strictly. This certifies
    numerical positivity against the listed curves, nothing more.
    """
    basis = tuple(basis)
    if not basis:
        raise InvalidConfiguration("basis must be nonempty")
    if not spans(c, basis):
        raise NoSpanningSubset(f"basis {basis} does not span the configuration")
    m = len(basis)
    rows = [[int(i == j) for j in range(m)] for i in range(m)]
    rows += [[c.gram[k, b] for b in basis] for k in range(c.dim)]
    hull = extreme_rays(rows)
    if hull.lineality or not hull.rays:
        raise Infeasible("no strictly positive combination of the basis meets every curve positively")
    total = [sum(r[i] for r in hull.rays) for i in range(m)]
    if any(v == 0 for v in total):
        raise Infeasible("no strictly positive combination of the basis meets every curve positively")
    a = linalg.primitive(total)
    pairings = tuple(linalg.simplify(sum((Fraction(c.gram[k, b]) * ai for b, ai in zip(basis, a)), Fraction(0))) for k in range(c.dim))
    if any(p <= 0 for p in pairings):
        raise Infeasible("no strictly positive combination of the basis meets every curve positively")
    h2 = sum(ai * pairings[b] for ai, b in zip(a, basis))
    return AmpleCandidate(basis, a, int(h2), pairings)


# --- indices -----------------------------------------------------------------


@dataclass(frozen=True)
class EpsilonResult:
    epsilon: Fraction
    warnings: tuple[str, ...] = ()


def epsilon_invariant(c: Configuration | None, first_kind: Sequence[int], pullback_k_pairings: Sequence[Scalar]) -> EpsilonResult:
    """Minimum of the supplied values ``-E . pi^*K`` over curves of the first kind."""
    if not first_kind:
        raise InvalidConfiguration("first_kind must be nonempty")
    if len(first_kind) != len(pullback_k_pairings):
        raise InvalidConfiguration("one value of -E.pi*K is needed per curve of the first kind")
    if c is not None and any(i < 0 or i >= c.dim for i in first_kind):
        raise InvalidConfiguration("first_kind index out of range")
    values = [linalg.as_fraction(v) for v in pullback_k_pairings]
    bad = [v for v in values if v <= 0]
    if bad:
        raise InvalidConfiguration(f"nonpositive value {bad[0]}: every -E.pi*K must be > 0")
    eps = min(values)
    warnings = () if eps <= 1 else (f"epsilon = {eps} > 1 is inconsistent with 0 < epsilon <= 1",)
    return EpsilonResult(eps, warnings)


def fractional_index(k_vector: Sequence[Scalar]) -> tuple[Fraction, tuple[int, ...]]:
    """``K = r H`` with ``r > 0`` and ``H`` primitive."""
    if not k_vector or all(linalg.as_fraction(v) == 0 for v in k_vector):
        raise InvalidConfiguration("fractional index of the zero vector is undefined")
    r = linalg.content(k_vector)
    return r, linalg.primitive(k_vector)
