"""Oriented diagrams of divisorial extremal rays on 3-folds.

``t[i][j] = R_i . D(R_j)`` for ``i != j``; an arrow ``R_i -> R_j`` exists iff
``t[i][j] > 0``. Diagonal entries are carried along but ignored by every
graph operation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Iterable, Sequence

import networkx as nx

from . import linalg
from .errors import InvalidConfiguration, MoriConeError
from .linalg import Scalar

SHOKUROV_K_RANGE = (1, 2, 3)


@dataclass(frozen=True)
class OrientedDiagram:
    labels: tuple[str, ...]
    divisor_ids: tuple[str, ...]
    t: tuple[tuple[Fraction, ...], ...]
    self_k: tuple[int, ...]
    name: str = ""
    rays: tuple[tuple[Fraction, ...], ...] | None = None  # optional realization in a rational cone
    meta: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "divisor_ids", tuple(self.divisor_ids))
        object.__setattr__(self, "self_k", tuple(self.self_k))
        t = tuple(tuple(linalg.as_fraction(v) for v in row) for row in self.t)
        object.__setattr__(self, "t", t)
        m = len(self.labels)
        if m < 1:
            raise InvalidConfiguration("a diagram needs at least one ray")
        if len(set(self.labels)) != m:
            raise InvalidConfiguration("ray labels must be distinct")
        if len(t) != m or any(len(row) != m for row in t):
            raise InvalidConfiguration(f"t must be a {m}x{m} matrix")
        if len(self.divisor_ids) != m:
            raise InvalidConfiguration(f"{len(self.divisor_ids)} divisor ids for {m} rays")
        if len(self.self_k) != m:
            raise InvalidConfiguration(f"{len(self.self_k)} self_k values for {m} rays")
        for i in range(m):
            for j in range(m):
                if i != j and t[i][j] < 0:
                    raise InvalidConfiguration(f"t[{i}][{j}] = {t[i][j]}: off-diagonal weights must be >= 0")
        for i, k in enumerate(self.self_k):
            if k not in SHOKUROV_K_RANGE:
                raise InvalidConfiguration(f"self_k[{i}] = {k}: a curve C in R with C.D(R) = -k needs 1 <= k <= 3")
        if self.rays is not None:
            rays = tuple(tuple(linalg.as_fraction(v) for v in r) for r in self.rays)
            if len(rays) != m:
                raise InvalidConfiguration(f"{len(rays)} ray vectors for {m} rays")
            if len({len(r) for r in rays}) != 1:
                raise InvalidConfiguration("ray vectors have inconsistent lengths")
            object.__setattr__(self, "rays", rays)

    @property
    def size(self) -> int:
        return len(self.labels)

    def arrow(self, i: int, j: int) -> bool:
        return i != j and self.t[i][j] > 0

    def product(self, i: int, j: int) -> Fraction:
        return self.t[i][j] * self.t[j][i]

    def single_arrows(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in range(self.size) if self.arrow(i, j) and not self.arrow(j, i)]

    def restrict(self, subset: Sequence[int]) -> "OrientedDiagram":
        s = list(subset)
        return OrientedDiagram(
            labels=tuple(self.labels[i] for i in s),
            divisor_ids=tuple(self.divisor_ids[i] for i in s),
            t=tuple(tuple(self.t[i][j] for j in s) for i in s),
            self_k=tuple(self.self_k[i] for i in s),
            rays=None if self.rays is None else tuple(self.rays[i] for i in s),
        )

    def permuted(self, perm: Sequence[int]) -> "OrientedDiagram":
        """Relabeled copy whose ray ``k`` is the original ray ``perm[k]``."""
        d = self.restrict(perm)
        return OrientedDiagram(d.labels, d.divisor_ids, d.t, d.self_k, self.name, d.rays, dict(self.meta))


def digraph(d: OrientedDiagram) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(d.size))
    for i in range(d.size):
        for j in range(d.size):
            if d.arrow(i, j):
                g.add_edge(i, j, weight=d.t[i][j])
    return g


# --- Step A ------------------------------------------------------------------


@dataclass(frozen=True)
class StepAResult:
    injective: bool
    collisions: tuple[tuple[int, int], ...]


def step_a_check(d: OrientedDiagram) -> StepAResult:
    """Distinct rays must have distinct divisors."""
    pairs = tuple(
        (i, j) for i, j in itertools.combinations(range(d.size), 2) if d.divisor_ids[i] == d.divisor_ids[j]
    )
    return StepAResult(not pairs, pairs)


# --- distances ---------------------------------------------------------------


@dataclass(frozen=True)
class OrientedDistances:
    matrix: tuple[tuple[float, ...], ...]
    diameter: float
    strongly_connected: bool
    unreachable: tuple[tuple[int, int], ...]


def oriented_distance(d: OrientedDiagram, subset: Sequence[int] | None = None) -> OrientedDistances:
    """Directed shortest-path lengths along arrows; ``inf`` where unreachable.

    The diameter is taken over finite off-diagonal entries; ``strongly_connected``
    says whether any entry was infinite.
    """
    nodes = list(range(d.size)) if subset is None else list(subset)
    g = digraph(d).subgraph(nodes)
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    matrix = tuple(tuple(lengths[a].get(b, inf) for b in nodes) for a in nodes)
    finite = [matrix[i][j] for i in range(len(nodes)) for j in range(len(nodes)) if i != j and matrix[i][j] != inf]
    missing = tuple(
        (nodes[i], nodes[j]) for i in range(len(nodes)) for j in range(len(nodes)) if matrix[i][j] == inf
    )
    return OrientedDistances(matrix, max(finite, default=0), not missing, missing)


# --- recognition -------------------------------------------------------------


@dataclass(frozen=True)
class DiagramVerdict:
    verdict: str  # "elliptic-family" | "e-set" | "unclassified"
    name: str | None = None
    reason: str = ""
    source: str = "pattern"  # "pattern" (diagram tables) or "face" (cone realization)


def _undirected(d: OrientedDiagram) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(d.size))
    for i, j in itertools.combinations(range(d.size), 2):
        if d.arrow(i, j):
            g.add_edge(i, j, product=d.product(i, j))
    return g


def _path_order(g: nx.Graph, nodes: Sequence[int]) -> list[int]:
    if len(nodes) == 1:
        return list(nodes)
    ends = sorted(v for v in nodes if g.degree(v) == 1)
    order = [ends[0]]
    while len(order) < len(nodes):
        nxt = [w for w in g.neighbors(order[-1]) if w not in order]
        order.append(nxt[0])
    return order


def _family_of_component(d: OrientedDiagram, g: nx.Graph, nodes: list[int]) -> str | None:
    k = len(nodes)
    if k == 1:
        return "A1"
    sub = g.subgraph(nodes)
    if sub.number_of_edges() != k - 1:
        return None
    prods = {frozenset(e): sub.edges[e]["product"] for e in sub.edges}
    if any(p not in (1, 2, 3) for p in prods.values()):
        return None
    degrees = [sub.degree(v) for v in nodes]
    heavy = [e for e, p in prods.items() if p != 1]
    if max(degrees) <= 2:
        order = _path_order(sub, nodes)
        if not heavy:
            return f"A{k}"
        if len(heavy) > 1:
            return None
        (e,) = heavy
        p = prods[e]
        pos = min(order.index(v) for v in e)
        if p == 3:
            return "G2" if k == 2 else None
        if k == 2:
            return "B2"
        if k == 4 and pos == 1:
            return "F4"
        if pos in (0, k - 2):
            leaf = order[0] if pos == 0 else order[-1]
            nbr = order[1] if pos == 0 else order[-2]
            return f"B{k}" if d.t[nbr][leaf] > d.t[leaf][nbr] else f"C{k}"
        return None
    if heavy or max(degrees) > 3 or degrees.count(3) != 1:
        return None
    center = nodes[degrees.index(3)]
    arms = []
    for start in sub.neighbors(center):
        length, prev, cur = 1, center, start
        while sub.degree(cur) == 2:
            prev, cur = cur, next(w for w in sub.neighbors(cur) if w != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{arms[2] + 3}"
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(tuple(arms))


_FAMILY_ORDER = "ABCDEFG"


def recognize_elliptic_family(d: OrientedDiagram) -> DiagramVerdict:
    """Match the mutual-arrow graph (edge weight = ``t_ij t_ji``) against the
    classical Dynkin shapes; disjoint unions are matched component by component.
    """
    if d.single_arrows():
        return DiagramVerdict("unclassified", reason="single arrow present")
    g = _undirected(d)
    names = []
    for comp in sorted(sorted(c) for c in nx.connected_components(g)):
        name = _family_of_component(d, g, comp)
        if name is None:
            return DiagramVerdict("unclassified", reason="not a classical Dynkin shape")
        names.append(name)
    names.sort(key=lambda s: (_FAMILY_ORDER.index(s[0]), -int(s[1:]), s))
    return DiagramVerdict("elliptic-family", " + ".join(names))


def _cycle_order(g: nx.Graph, nodes: Sequence[int]) -> list[int] | None:
    sub = g.subgraph(nodes)
    if sub.number_of_edges() != len(nodes) or any(sub.degree(v) != 2 for v in nodes) or not nx.is_connected(sub):
        return None
    order = [min(nodes)]
    while len(order) < len(nodes):
        order.append(next(w for w in sorted(sub.neighbors(order[-1])) if w not in order))
    return order


def _points_forward(d: OrientedDiagram, order: list[int], pos: int) -> bool:
    """Whether the heavier arrow on cycle edge ``(order[pos], order[pos+1])`` follows the cycle."""
    a, b = order[pos], order[(pos + 1) % len(order)]
    return d.t[a][b] > d.t[b][a]


def recognize_e_set(d: OrientedDiagram) -> DiagramVerdict:
    """The minimal non-elliptic diagrams without single arrows, with their printed
    strict inequalities (a product equal to 4, or a triangle sum equal to 3, fails).
    """
    if d.single_arrows():
        return DiagramVerdict("unclassified", reason="single arrow present")
    g = _undirected(d)
    m = d.size
    if m < 2 or not nx.is_connected(g):
        return DiagramVerdict("unclassified", reason="not a connected diagram of size >= 2")
    prods = [g.edges[e]["product"] for e in g.edges]
    if m == 2:
        if prods and prods[0] > 4:
            return DiagramVerdict("e-set", "pair")
        return DiagramVerdict("unclassified", reason="pair with t12*t21 <= 4")
    if m == 3:
        if not all(0 < p < 4 for p in prods):
            return DiagramVerdict("unclassified", reason="a product outside (0, 4)")
        if len(prods) == 2 and sum(prods) > 4:
            return DiagramVerdict("e-set", "chain3")
        if len(prods) == 3 and sum(prods) > 3:
            return DiagramVerdict("e-set", "triangle3")
        return DiagramVerdict("unclassified", reason="product sum below the threshold")
    order = _cycle_order(g, list(range(m)))
    if order is None:
        return DiagramVerdict("unclassified", reason="no matching pattern")
    cyc = [d.product(order[i], order[(i + 1) % m]) for i in range(m)]
    twos = [i for i, p in enumerate(cyc) if p == 2]
    if any(p not in (1, 2) for p in cyc):
        return DiagramVerdict("unclassified", reason="no matching pattern")
    if m == 4 and len(twos) == 1:
        return DiagramVerdict("e-set", "square-2")
    if m == 4 and len(twos) == 2 and twos[1] - twos[0] == 2:
        same_way = _points_forward(d, order, twos[0]) == _points_forward(d, order, twos[1])
        # opposite sides drawn with both weighted arrows pointing one way in the plane
        # run in opposite senses around the cycle
        return DiagramVerdict("e-set", "square-22-opposed" if same_way else "square-22-aligned")
    if m == 5 and len(twos) == 1:
        return DiagramVerdict("e-set", "pentagon-2")
    return DiagramVerdict("unclassified", reason="no matching pattern")


def is_pattern_elliptic(d: OrientedDiagram, subset: Sequence[int]) -> bool:
    return recognize_elliptic_family(d.restrict(subset)).verdict == "elliptic-family"


def is_pattern_e_set(d: OrientedDiagram, subset: Sequence[int]) -> bool:
    return recognize_e_set(d.restrict(subset)).verdict == "e-set"


# --- geometric realization ---------------------------------------------------


@dataclass(frozen=True)
class FaceEllipticity:
    elliptic: dict[tuple[int, ...], bool]
    e_sets: tuple[tuple[int, ...], ...]
    max_size: int
    complete: bool


def elliptic_by_face(
    d: OrientedDiagram,
    subsets: Iterable[Sequence[int]] | None = None,
    max_size: int | None = None,
) -> FaceEllipticity:
    """Ellipticity as containment in a proper face of the cone spanned by ``d.rays``.

    E-sets are the non-elliptic subsets whose maximal proper subsets are all
    elliptic (ellipticity is inherited by subsets).
    """
    from .cone import cone_over, subset_in_proper_face

    if d.rays is None:
        raise MoriConeError("elliptic_by_face needs ray vectors realizing the diagram")
    ne = cone_over(d.rays)
    top = d.size if max_size is None else min(max_size, d.size)
    verdicts: dict[tuple[int, ...], bool] = {}
    for k in range(1, top + 1):
        for s in itertools.combinations(range(d.size), k):
            verdicts[s] = subset_in_proper_face(ne, s)
    e_sets = tuple(
        s for s, ell in verdicts.items()
        if not ell and all(verdicts[w] for w in itertools.combinations(s, len(s) - 1) if w)
    )
    if subsets is not None:
        wanted = {tuple(sorted(s)) for s in subsets}
        for s in wanted:
            if s not in verdicts:
                verdicts[s] = subset_in_proper_face(ne, s)
        verdicts = {s: verdicts[s] for s in sorted(wanted, key=lambda x: (len(x), x))}
    return FaceEllipticity(verdicts, e_sets, top, top >= d.size)


# --- conditional bounds for Fano and Calabi-Yau 3-folds ----------------------


@dataclass(frozen=True)
class TheoremFlags:
    fano_bound: int
    fano_applicable: bool
    fano_exceptions: tuple[str, ...]
    cy_bound: int
    cy_applicable: bool
    cy_exceptions: tuple[str, ...]


FANO3_RHO_BOUND = 7
CY3_RHO_BOUND = 40


def theorem45_exception_flags(
    has_small_ray: bool = False,
    has_low_kodaira_face: bool = False,
    has_nef_d_with_d3_zero: bool = False,
    cone_finite: bool = True,
) -> TheoremFlags:
    """Which of the conditional Picard bounds (7 for Fano, 40 for Calabi-Yau 3-folds) apply.

    The flags are geometric facts supplied by the caller.
    """
    fano_ex = []
    if has_low_kodaira_face:
        fano_ex.append("(1) a face of NE of Kodaira dimension <= 2")
    if has_small_ray:
        fano_ex.append("(2) a small extremal ray")
    cy_ex = []
    if has_nef_d_with_d3_zero:
        cy_ex.append("(1) a rational nef element D with D^3 = 0")
    elif has_low_kodaira_face:
        # the contraction of such a face pulls back a nef D with D^3 = 0
        cy_ex.append("(1) a rational nef element D with D^3 = 0 (from a face of Kodaira dimension <= 2)")
    if has_small_ray:
        cy_ex.append("(2) a small extremal ray")
    if not cone_finite:
        cy_ex.append("(3) the Mori cone is not finite polyhedral")
    return TheoremFlags(
        FANO3_RHO_BOUND, not fano_ex, tuple(fano_ex), CY3_RHO_BOUND, not cy_ex, tuple(cy_ex)
    )
