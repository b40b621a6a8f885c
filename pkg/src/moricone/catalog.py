"""Built-in configurations, oriented diagrams and reference constants.

Figure readings that the drawings leave open are stored in each entry's
``meta["inferred"]`` list; ``meta["expected"]`` holds the properties the
golden tests re-verify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import Configuration, Kind, NARROW_PARTS_RATIO_BOUND
from .errors import MoriConeError
from .lattice import GramMatrix
from .oriented import CY3_RHO_BOUND, FANO3_RHO_BOUND, SHOKUROV_K_RANGE, OrientedDiagram

DELPEZZO_DUVAL_RHO_BOUND = 9
K3_COUNTS_RHO = tuple(range(3, 21))  # the last column means rho >= 20
K3_COUNTS = (27, 17, 10, 10, 9, 12, 10, 9, 4, 4, 3, 3, 1, 1, 1, 1, 1, 0)
# named only; no closed form is available, so they are never evaluated
UNEVALUATED_CONSTANTS = (
    ("A(n)", "rho bound for log-terminal del Pezzo surfaces, in terms of the maximal singularity index n"),
    ("B(n)", "rho bound for log-terminal del Pezzo surfaces, in terms of the maximal singularity multiplicity n"),
    ("C", "absolute constant with rho < C / epsilon"),
)


@dataclass(frozen=True)
class ReferenceConstants:
    narrow_parts_ratio_bound: int = NARROW_PARTS_RATIO_BOUND
    fano3fold_rho_bound: int = FANO3_RHO_BOUND
    cy3_rho_bound: int = CY3_RHO_BOUND
    delpezzo_duval_rho_bound: int = DELPEZZO_DUVAL_RHO_BOUND
    k3_counts_rho: tuple[int, ...] = K3_COUNTS_RHO
    k3_counts: tuple[int, ...] = K3_COUNTS
    shokurov_k_range: tuple[int, ...] = SHOKUROV_K_RANGE
    unevaluated: tuple[tuple[str, str], ...] = UNEVALUATED_CONSTANTS


REFERENCE = ReferenceConstants()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "surface" | "cy3" | "reference"
    payload: Configuration | OrientedDiagram | ReferenceConstants

    @property
    def provenance(self) -> str:
        return getattr(self.payload, "meta", {}).get("provenance", "reference constants")

    @property
    def inferred(self) -> tuple[str, ...]:
        return tuple(getattr(self.payload, "meta", {}).get("inferred", ()))

    @property
    def expected(self) -> dict:
        return dict(getattr(self.payload, "meta", {}).get("expected", {}))


# --- surface graphs ------------------------------------------------------------

_SURFACE_INFERRED = [
    "white vertices read as (-1)-curves, black as (-2)-curves",
    "every drawn edge read as intersection number 1",
    "K pairings from adjunction with p_a = 0: K.E = 0 for E^2 = -2, K.E = -1 for E^2 = -1",
]


def _surface(name: str, n: int, white: Sequence[int], edges: Sequence[tuple[int, int]], provenance: str,
             extra_inferred: Sequence[str] = (), expected: dict | None = None) -> Configuration:
    """Curves ``E1..En`` (1-based in ``white`` and ``edges``)."""
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -1 if i + 1 in white else -2
    for a, b in edges:
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    canonical = tuple(-1 if i + 1 in white else 0 for i in range(n))
    meta = {
        "provenance": provenance,
        "inferred": list(_SURFACE_INFERRED) + list(extra_inferred),
        "expected": expected or {},
    }
    return Configuration(tuple(f"E{i + 1}" for i in range(n)), GramMatrix(g), canonical, Kind.SURFACE, name, None, meta)


def _he8() -> Configuration:
    edges = [(10, 9), (9, 8), (8, 7), (7, 6), (6, 5), (5, 4), (4, 3), (3, 2), (4, 1)]
    return _surface(
        "HE8~", 10, [10], edges,
        "surface graph HE8~ for rho = 10; black vertices are (-2)-curves",
        expected={"curves": 10, "white": 1, "rank": 10, "signature": "(1,0,9)",
                  "numerical_signature": "(1,0,9)", "connected": True, "genus": 0},
    )


def _hd8() -> Configuration:
    edges = [(11, 10), (10, 7), (7, 5), (5, 3), (3, 2), (2, 6), (6, 8), (8, 9), (7, 1), (6, 4)]
    return _surface(
        "HD8~", 11, [9, 11], edges,
        "surface graph HD8~ for rho = 10; black vertices are (-2)-curves",
        extra_inferred=["11 curves drawn although rho = 10; the rank computation confirms span rank 10"],
        expected={"curves": 11, "white": 2, "rank": 10, "signature": "(1,1,9)",
                  "numerical_signature": "(1,0,9)", "connected": True, "genus": 0},
    )


def _ha8() -> Configuration:
    cycle = [4, 1, 9, 6, 3, 8, 5, 2, 7]
    edges = [(cycle[i], cycle[(i + 1) % 9]) for i in range(9)] + [(12, 9), (11, 8), (10, 7)]
    return _surface(
        "HA8~", 12, [10, 11, 12], edges,
        "surface graph HA8~ for rho = 10; black vertices are (-2)-curves",
        extra_inferred=["white curves attached to every third vertex of the 9-cycle (Z/3-symmetric reading)"],
        expected={"curves": 12, "white": 3, "rank": 10, "signature": "(1,2,9)",
                  "numerical_signature": "(1,0,9)", "connected": True, "genus": 0},
    )


# --- oriented diagrams -----------------------------------------------------------

_DIAGRAM_INFERRED = [
    "unlabeled double arrows read as t_ij = t_ji = 1",
    "a numeral k on a double arrow read as t_ij * t_ji = k, placed on the arrow it annotates",
    "every ray given self_k = 1 and its own divisor",
]


def _diagram(name: str, m: int, weights: dict[tuple[int, int], tuple[int, int]], provenance: str,
             expected: dict, extra_inferred: Sequence[str] = ()) -> OrientedDiagram:
    """Rays ``R1..Rm``; ``weights[(i, j)] = (t_ij, t_ji)`` with 1-based indices."""
    t = [[0] * m for _ in range(m)]
    for (i, j), (a, b) in weights.items():
        t[i - 1][j - 1], t[j - 1][i - 1] = a, b
    meta = {"provenance": provenance, "inferred": list(_DIAGRAM_INFERRED) + list(extra_inferred), "expected": expected}
    return OrientedDiagram(
        tuple(f"R{i + 1}" for i in range(m)), tuple(f"D{i + 1}" for i in range(m)), t, (1,) * m, name, None, meta
    )


def _chain(m: int, special: dict[int, tuple[int, int]] | None = None) -> dict[tuple[int, int], tuple[int, int]]:
    w = {(i, i + 1): (1, 1) for i in range(1, m)}
    for i, pair in (special or {}).items():
        w[(i, i + 1)] = pair
    return w


def _tree(arms: Sequence[int]) -> tuple[int, dict[tuple[int, int], tuple[int, int]]]:
    """Star with center R1 and arms of the given lengths."""
    w, nxt = {}, 2
    for length in arms:
        prev = 1
        for _ in range(length):
            w[(prev, nxt)] = (1, 1)
            prev, nxt = nxt, nxt + 1
    return nxt - 1, w


_T1 = "elliptic oriented diagram with mutual arrows only, Dynkin type {}"
_T43 = "minimal non-elliptic oriented diagram with mutual arrows only: {}"


def _table1() -> list[OrientedDiagram]:
    out = []
    for n in range(1, 9):
        out.append(_diagram(f"table1-A{n}", n, _chain(n), _T1.format("A"), {"family": f"A{n}"}))
    for n in range(2, 5):
        out.append(_diagram(f"table1-B{n}", n, _chain(n, {1: (1, 2)}), _T1.format("B"), {"family": f"B{n}"},
                            ["the weight 2 sits on the arrow from R2 to the end ray R1"]))
    for n in range(3, 5):
        out.append(_diagram(f"table1-C{n}", n, _chain(n, {1: (2, 1)}), _T1.format("C"), {"family": f"C{n}"},
                            ["the weight 2 sits on the arrow from the end ray R1 to R2"]))
    for n in (4, 5):
        m, w = _tree((1, 1, n - 3))
        out.append(_diagram(f"table1-D{n}", m, w, _T1.format("D"), {"family": f"D{n}"},
                            ["vertical doubled pairs matched by shape only"]))
    for n, arms in ((6, (1, 2, 2)), (7, (1, 2, 3)), (8, (1, 2, 4))):
        m, w = _tree(arms)
        out.append(_diagram(f"table1-E{n}", m, w, _T1.format("E"), {"family": f"E{n}"},
                            ["vertical doubled pairs matched by shape only"]))
    out.append(_diagram("table1-F4", 4, _chain(4, {2: (2, 1)}), _T1.format("F4"), {"family": "F4"}))
    out.append(_diagram("table1-G2", 2, {(1, 2): (3, 1)}, _T1.format("G2"), {"family": "G2"}))
    return out


def _table43() -> list[OrientedDiagram]:
    sq = [(1, 2), (2, 3), (3, 4), (4, 1)]
    return [
        _diagram("table43-pair", 2, {(1, 2): (5, 1)}, _T43.format("pair, t12 t21 > 4"), {"pattern": "pair"}),
        _diagram("table43-chain3", 3, {(1, 2): (3, 1), (2, 3): (2, 1)}, _T43.format("chain of three"),
                 {"pattern": "chain3"}),
        _diagram("table43-triangle3", 3, {(1, 2): (1, 1), (2, 3): (1, 1), (3, 1): (2, 1)},
                 _T43.format("triangle"), {"pattern": "triangle3"}),
        _diagram("table43-square-2", 4, {**{e: (1, 1) for e in sq}, (1, 2): (2, 1)},
                 _T43.format("square with one weight-2 side"), {"pattern": "square-2"},
                 ["the weight-2 side taken as t12 * t21 = 2"]),
        # opposite sides (1,2) and (3,4): planar direction agrees iff the senses around the cycle differ
        _diagram("table43-square-22-aligned", 4, {**{e: (1, 1) for e in sq}, (1, 2): (2, 1), (3, 4): (1, 2)},
                 _T43.format("square with two opposite weight-2 sides drawn the same way"),
                 {"pattern": "square-22-aligned"}, ["the two weight-2 arrows read as parallel in the plane"]),
        _diagram("table43-square-22-opposed", 4, {**{e: (1, 1) for e in sq}, (1, 2): (2, 1), (3, 4): (2, 1)},
                 _T43.format("square with two opposite weight-2 sides drawn opposite ways"),
                 {"pattern": "square-22-opposed"}, ["the two weight-2 arrows read as antiparallel in the plane"]),
        _diagram("table43-pentagon-2", 5,
                 {(1, 2): (2, 1), (2, 3): (1, 1), (3, 4): (1, 1), (4, 5): (1, 1), (5, 1): (1, 1)},
                 _T43.format("pentagon with one weight-2 side"), {"pattern": "pentagon-2"}),
    ]


def _build() -> dict[str, CatalogEntry]:
    entries: dict[str, CatalogEntry] = {}
    for c in (_he8(), _hd8(), _ha8()):
        entries[c.name] = CatalogEntry(c.name, "surface", c)
    for d in _table1() + _table43():
        entries[d.name] = CatalogEntry(d.name, "cy3", d)
    entries["k3-counts"] = CatalogEntry("k3-counts", "reference", REFERENCE)
    return entries


_CATALOG = _build()


def catalog_names() -> list[str]:
    return list(_CATALOG)


def load_catalog(name: str) -> CatalogEntry:
    try:
        return _CATALOG[name]
    except KeyError:
        raise MoriConeError(f"unknown catalog entry {name!r}; known: {', '.join(_CATALOG)}") from None
