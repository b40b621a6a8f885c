"""Mori and nef cones with exact rational descriptions, and the combinatorics
of the projectivized nef cone ``M = NEF / R+``.

``M`` is never given coordinates. Hyperbolic statements reduce to the sign of
``v^2`` for extreme rays ``v``, and faces are sets of rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import linalg
from .config import Configuration, DistanceMode, Verdict, build_graph, classify_subset
from .errors import DimensionCapExceeded, InvalidConfiguration, MoriConeError
from .lattice import GramMatrix, nondegenerate_part
from .linalg import Scalar
from .polyhedral import extreme_rays

DEFAULT_DIMENSION_CAP = 12


@dataclass(frozen=True)
class ConeDescription:
    """A cone given by both its generators and its facet normals.

    ``pairing`` evaluates ``normal . generator``; a point ``x`` lies in the cone
    iff ``pairing(normal, x) >= 0`` for every normal.
    """

    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]
    facet_normals: tuple[tuple[int, ...], ...]
    pairing: GramMatrix
    normal_labels: tuple[str, ...] = ()
    lineality: tuple[tuple[int, ...], ...] = ()
    redundant_normals: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return linalg.rank(self.generators) + len(self.lineality) if self.generators else len(self.lineality)

    @property
    def pointed(self) -> bool:
        return not self.lineality

    def value(self, normal: Sequence[Scalar], x: Sequence[Scalar]) -> Fraction:
        return self.pairing.pair(normal, x)


def _irredundant(normals, rays, pairing, cone_dim):
    """Split normals into facet-defining ones (deduplicated) and the rest."""
    keep, drop = [], []
    seen = set()
    for idx, nrm in enumerate(normals):
        zero = frozenset(i for i, r in enumerate(rays) if pairing.pair(nrm, r) == 0)
        rk = linalg.rank([rays[i] for i in sorted(zero)]) if zero else 0
        if len(zero) == len(rays) or rk != cone_dim - 1 or zero in seen:
            drop.append(idx)
            continue
        seen.add(zero)
        keep.append(idx)
    return keep, drop


def dual_cone(
    generators: Sequence[Sequence[Scalar]],
    pairing: GramMatrix | Sequence[Sequence[Scalar]] | None = None,
    labels: Sequence[str] | None = None,
) -> ConeDescription:
    """``{x : x . g >= 0 for every generator g}`` by exact double description.

    The result's generators are its primitive extreme rays in sorted order; its
    facet normals are the input generators that define facets, made primitive.
    """
    gens = [tuple(linalg.as_fraction(v) for v in g) for g in generators]
    if not gens or all(all(v == 0 for v in g) for g in gens):
        raise MoriConeError("degenerate input: no nonzero generator")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise MoriConeError("generators have inconsistent lengths")
    if pairing is None:
        pairing = GramMatrix.identity(n)
    elif not isinstance(pairing, GramMatrix):
        pairing = GramMatrix(tuple(tuple(r) for r in pairing))
    if pairing.dim != n:
        raise MoriConeError(f"pairing of dim {pairing.dim} for generators of length {n}")
    labels = tuple(labels) if labels is not None else tuple(f"g{i + 1}" for i in range(len(gens)))
    nonzero = [i for i, g in enumerate(gens) if any(g)]
    rows = [linalg.mat_vec(pairing.entries, gens[i]) for i in nonzero]
    hull = extreme_rays(rows, n)
    normals = [linalg.primitive(gens[i]) for i in nonzero]
    if hull.rays:
        keep, drop = _irredundant(normals, hull.rays, pairing, hull.dim - len(hull.lineality))
    else:
        keep, drop = list(range(len(normals))), []
    zero_gens = [labels[i] for i in range(len(gens)) if i not in nonzero]
    return ConeDescription(
        ambient_dim=n,
        generators=hull.rays,
        facet_normals=tuple(normals[k] for k in keep),
        pairing=pairing,
        normal_labels=tuple(labels[nonzero[k]] for k in keep),
        lineality=hull.lineality,
        redundant_normals=tuple(labels[nonzero[k]] for k in drop) + tuple(zero_gens),
    )


def cone_over(
    generators: Sequence[Sequence[Scalar]],
    pairing: GramMatrix | Sequence[Sequence[Scalar]] | None = None,
) -> ConeDescription:
    """Cone spanned by ``generators`` (kept in input order, made primitive) with
    the dual's extreme rays as facet normals.
    """
    if any(all(linalg.as_fraction(v) == 0 for v in g) for g in generators):
        raise InvalidConfiguration("a cone generator must be a nonzero vector")
    dual = dual_cone(generators, pairing)
    return ConeDescription(
        ambient_dim=dual.ambient_dim,
        generators=tuple(linalg.primitive(g) for g in generators),
        facet_normals=dual.generators,
        pairing=dual.pairing,
        normal_labels=tuple(f"f{i + 1}" for i in range(len(dual.generators))),
    )


@dataclass(frozen=True)
class ConfigurationCones:
    """Mori and nef cones of a surface configuration in a basis of curve classes."""

    basis: tuple[int, ...]
    classes: tuple[tuple[Fraction, ...], ...]  # each curve in basis coordinates
    nef: ConeDescription
    mori: ConeDescription


def configuration_cones(c: Configuration) -> ConfigurationCones:
    """Coordinates come from a maximal independent set ``B`` of curves: a class is
    determined by its pairings with ``B`` because the form on ``span(B)`` is
    nondegenerate.
    """
    basis, gb = nondegenerate_part(c.gram)
    classes = []
    for k in range(c.dim):
        rhs = [c.gram[b, k] for b in basis]
        classes.append(tuple(linalg.solve(gb.entries, rhs)))
    nef = dual_cone(classes, gb, c.labels)
    mori = ConeDescription(
        ambient_dim=len(basis),
        generators=tuple(linalg.primitive(v) for v in classes),
        facet_normals=nef.generators,
        pairing=gb,
        normal_labels=tuple(f"v{i + 1}" for i in range(len(nef.generators))),
    )
    return ConfigurationCones(tuple(basis), tuple(classes), nef, mori)


# --- vertex kinds ------------------------------------------------------------


class VertexKind(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class VertexKinds:
    norms: tuple[Fraction, ...]
    kinds: tuple[VertexKind, ...]
    finite_volume: bool
    all_finite: bool


def kind_of_norm(v2: Scalar) -> VertexKind:
    if v2 > 0:
        return VertexKind.FINITE
    if v2 == 0:
        return VertexKind.INFINITE
    return VertexKind.OUTSIDE


def vertex_kinds(nef: ConeDescription, gram: GramMatrix | None = None) -> VertexKinds:
    """Sign of ``v^2`` for each extreme ray; rays with ``v^2 < 0`` are outside the hyperbolic model."""
    g = gram or nef.pairing
    norms = tuple(g.pair(v, v) for v in nef.generators)
    kinds = tuple(kind_of_norm(x) for x in norms)
    return VertexKinds(
        norms,
        kinds,
        finite_volume=all(k is not VertexKind.OUTSIDE for k in kinds),
        all_finite=all(k is VertexKind.FINITE for k in kinds),
    )


# --- face lattice ------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    rays: tuple[int, ...]
    normals: tuple[int, ...]  # indices of facet normals vanishing on the face


@dataclass(frozen=True)
class FaceLattice:
    """Faces of a pointed cone, graded by cone dimension ``0..d``.

    A face of cone dimension ``k`` is a ``(k-1)``-face of ``M``, so
    ``alpha[i] = len(faces[i + 1])`` for ``i = 0..n-1`` with ``n = d - 1``.
    """

    cone_dim: int
    faces: tuple[tuple[Face, ...], ...]
    covers: tuple[tuple[int, int, int], ...]  # (k, index in faces[k], index in faces[k+1])

    @property
    def n(self) -> int:
        return self.cone_dim - 1

    @property
    def cone_face_counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.faces)

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(len(self.faces[i + 1]) for i in range(self.n))


def face_lattice(cone: ConeDescription, cap: int = DEFAULT_DIMENSION_CAP) -> FaceLattice:
    """All faces of a pointed cone, built top-down from the facets.

    Each facet of a face ``F`` is ``F`` cut by a facet of the cone, so the
    ``(k-1)``-faces are the rank-``(k-1)`` intersections of ``k``-faces with facets.
    """
    if not cone.pointed:
        raise InvalidConfiguration("face lattice needs a pointed cone (lineality space present)")
    rays = cone.generators
    d = linalg.rank(rays) if rays else 0
    if d > cap:
        raise DimensionCapExceeded(f"cone dimension {d} exceeds the face-lattice cap {cap}")
    if d == 0:
        return FaceLattice(0, ((Face((), tuple(range(len(cone.facet_normals)))),),), ())
    m = len(rays)
    facet_masks = []
    for nrm in cone.facet_normals:
        facet_masks.append(sum(1 << i for i, r in enumerate(rays) if cone.value(nrm, r) == 0))

    rank_cache: dict[int, int] = {}

    def rk(mask: int) -> int:
        if mask not in rank_cache:
            idx = [i for i in range(m) if mask >> i & 1]
            rank_cache[mask] = linalg.rank([rays[i] for i in idx]) if idx else 0
        return rank_cache[mask]

    full = (1 << m) - 1
    levels: dict[int, list[int]] = {d: [full]}
    for k in range(d, 0, -1):
        below = set()
        for f in levels[k]:
            for fm in facet_masks:
                g = f & fm
                if g != f and rk(g) == k - 1:
                    below.add(g)
        levels[k - 1] = sorted(below, key=lambda x: [i for i in range(m) if x >> i & 1])

    faces = []
    for k in range(d + 1):
        level = []
        for mask in levels[k]:
            idx = tuple(i for i in range(m) if mask >> i & 1)
            act = tuple(j for j, fm in enumerate(facet_masks) if mask & fm == mask)
            level.append(Face(idx, act))
        faces.append(tuple(level))
    covers = []
    for k in range(d):
        for a, lo in enumerate(levels[k]):
            for b, hi in enumerate(levels[k + 1]):
                if lo & hi == lo:
                    covers.append((k, a, b))
    return FaceLattice(d, tuple(faces), tuple(covers))


@dataclass(frozen=True)
class SimplicialityReport:
    simple_at_vertices: bool
    simplicial_in_edges: bool
    acute: bool | None
    bad_vertices: tuple[int, ...] = ()
    bad_edges: tuple[tuple[int, ...], ...] = ()


def simpliciality_report(fl: FaceLattice, cone: ConeDescription | None = None) -> SimplicialityReport:
    """Vertices of ``M`` on exactly ``n`` facets, edges on exactly ``n - 1``, and
    acuteness (distinct facet normals pair nonnegatively; needs ``cone``).
    """
    n = fl.n
    bad_v = tuple(f.rays[0] for f in fl.faces[1] if len(f.normals) != n) if fl.cone_dim >= 1 else ()
    bad_e = tuple(f.rays for f in fl.faces[2] if len(f.normals) != n - 1) if fl.cone_dim >= 2 else ()
    acute = None
    if cone is not None:
        norms = cone.facet_normals
        acute = all(
            cone.pairing.pair(norms[i], norms[j]) >= 0 for i in range(len(norms)) for j in range(i + 1, len(norms))
        )
    return SimplicialityReport(not bad_v, not bad_e, acute, bad_v, bad_e)


# --- face polynomial and averages --------------------------------------------


@dataclass(frozen=True)
class FacePolynomial:
    n: int
    alpha: tuple[int, ...]
    coefficients: tuple[int, ...]  # ascending powers of s
    reversible: bool
    positive_coeffs: bool
    advisory: bool = False

    def __str__(self) -> str:
        terms = []
        for p in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[p]
            if c == 0:
                continue
            mono = "" if p == 0 else ("s" if p == 1 else f"s^{p}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def face_polynomial_from_counts(alpha: Sequence[int], advisory: bool = False) -> FacePolynomial:
    """Expand ``alpha_0 + alpha_1 (s-1) + ... + alpha_{n-1} (s-1)^{n-1} + (s-1)^n``."""
    n = len(alpha)
    coeffs = [0] * (n + 1)
    terms = list(alpha) + [1]
    for i, a in enumerate(terms):
        # (s - 1)^i = sum_k C(i, k) s^k (-1)^(i-k)
        binom = 1
        for k in range(i + 1):
            coeffs[k] += a * binom * (-1) ** (i - k)
            binom = binom * (i - k) // (k + 1)
    coeffs_t = tuple(coeffs)
    return FacePolynomial(
        n=n,
        alpha=tuple(alpha),
        coefficients=coeffs_t,
        reversible=coeffs_t == coeffs_t[::-1],
        positive_coeffs=all(c > 0 for c in coeffs_t),
        advisory=advisory,
    )


def face_polynomial(fl: FaceLattice, all_vertices_finite: bool = True) -> FacePolynomial:
    """``R(s)`` of ``M``. Flagged advisory when the caller reports vertices at infinity."""
    return face_polynomial_from_counts(fl.alpha, advisory=not all_vertices_finite)


@dataclass(frozen=True)
class FaceAverages:
    n: int
    a02: Fraction
    a23: Fraction | None
    bound02: Fraction
    bound23: Fraction | None
    satisfied02: bool
    satisfied23: bool | None


def face_averages(fl: FaceLattice) -> FaceAverages:
    """Average vertex count of 2-faces and average 2-face count of 3-faces of ``M``,
    against ``4 + 4/(n-2)`` and ``6 + 12/(n-2)``.
    """
    n = fl.n
    if n < 3:
        raise InvalidConfiguration(f"face averages need n >= 3 (got n = {n})")
    two = fl.faces[3]
    a02 = Fraction(sum(len(f.rays) for f in two), len(two))
    b02 = 4 + Fraction(4, n - 2)
    a23 = b23 = None
    sat23 = None
    if n >= 4:
        three = fl.faces[4]
        two_sets = [set(f.rays) for f in two]
        counts = [sum(1 for t in two_sets if t <= set(f.rays)) for f in three]
        a23 = Fraction(sum(counts), len(three))
        b23 = 6 + Fraction(12, n - 2)
        sat23 = a23 <= b23
    return FaceAverages(n, a02, a23, b02, b23, a02 <= b02, sat23)


# --- plane angles and faces of NE -------------------------------------------


@dataclass(frozen=True)
class PlaneAngle:
    subset: tuple[int, ...]
    pair: tuple[int, int]
    distance: float
    threshold: int
    combinatorially_right: bool
    mode: DistanceMode


def plane_angle_classification(
    c: Configuration,
    subset: Sequence[int],
    pair: tuple[int, int],
    d: int,
    mode: DistanceMode = DistanceMode.INDUCED,
) -> PlaneAngle:
    """The angle at ``E`` spanned by ``pair`` is combinatorially right iff the pair
    is farther apart than ``2d + 1`` (unreachable counts as infinitely far).
    """
    s = tuple(sorted(set(subset)))
    e1, e2 = pair
    if e1 == e2 or e1 not in s or e2 not in s:
        raise InvalidConfiguration(f"pair {pair} must be two distinct members of {s}")
    if classify_subset(c, s).verdict is not Verdict.ELLIPTIC:
        raise InvalidConfiguration(f"subset {s} is not elliptic")
    graph = build_graph(c)
    dist = graph.distance(e1, e2, within=s if mode is DistanceMode.INDUCED else None)
    return PlaneAngle(s, (e1, e2), dist, 2 * d + 1, dist > 2 * d + 1, mode)


def subset_in_proper_face(ne: ConeDescription, subset: Sequence[int]) -> bool:
    """Whether some supporting functional vanishes on ``subset`` but not on the whole cone.

    Any such functional is a nonnegative combination of facet normals that all
    vanish on the subset, so summing those normals decides the question.
    """
    gens = ne.generators
    s = set(subset)
    if any(i < 0 or i >= len(gens) for i in s):
        raise InvalidConfiguration("generator index out of range")
    vanishing = [f for f in ne.facet_normals if all(ne.value(f, gens[i]) == 0 for i in s)]
    if not vanishing:
        return False
    total = [sum(f[k] for f in vanishing) for k in range(ne.ambient_dim)]
    return any(ne.value(total, g) > 0 for g in gens)
