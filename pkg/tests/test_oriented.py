import itertools
import random
from math import inf

import pytest
from hypothesis import given, strategies as st

from moricone.catalog import catalog_names, load_catalog
from moricone.errors import InvalidConfiguration, MoriConeError
from moricone.oriented import (
    OrientedDiagram,
    elliptic_by_face,
    oriented_distance,
    recognize_e_set,
    recognize_elliptic_family,
    step_a_check,
    theorem45_exception_flags,
)


def diagram(t, divisors=None, rays=None, self_k=None):
    m = len(t)
    return OrientedDiagram(
        tuple(f"R{i + 1}" for i in range(m)),
        tuple(divisors or (f"D{i + 1}" for i in range(m))),
        t,
        tuple(self_k or (1,) * m),
        rays=rays,
    )


def chain(m, special=None):
    t = [[0] * m for _ in range(m)]
    for i in range(m - 1):
        t[i][i + 1] = t[i + 1][i] = 1
    for (i, j), v in (special or {}).items():
        t[i][j] = v
    return diagram(t)


# --- construction --------------------------------------------------------------


def test_rejects_negative_weight():
    with pytest.raises(InvalidConfiguration, match=">= 0"):
        diagram([[0, -1], [1, 0]])


@pytest.mark.parametrize("k", [0, 4])
def test_rejects_self_k_out_of_range(k):
    with pytest.raises(InvalidConfiguration, match="1 <= k <= 3"):
        diagram([[0]], self_k=[k])


def test_diagonal_is_ignored():
    d = diagram([[-7, 1], [1, 5]])
    assert recognize_elliptic_family(d).name == "A2"


# --- Step A and distances --------------------------------------------------------


def test_step_a():
    assert step_a_check(diagram([[0, 1], [1, 0]])).injective
    res = step_a_check(diagram([[0, 1], [1, 0]], divisors=["D", "D"]))
    assert not res.injective and res.collisions == ((0, 1),)
    res = step_a_check(diagram([[0] * 3] * 3, divisors=["D", "E", "D"]))
    assert res.collisions == ((0, 2),)


def test_directed_distances():
    dist = oriented_distance(diagram([[0, 1], [0, 0]]))
    assert dist.matrix[0][1] == 1 and dist.matrix[1][0] == inf
    assert not dist.strongly_connected
    dist = oriented_distance(diagram([[0, 1], [1, 0]]))
    assert dist.matrix == ((0, 1), (1, 0))
    assert oriented_distance(chain(3)).diameter == 2


@given(st.integers(2, 6), st.data())
def test_distance_symmetric_for_symmetric_t(m, data):
    t = [[0] * m for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        t[i][j] = t[j][i] = data.draw(st.integers(0, 2))
    dist = oriented_distance(diagram(t)).matrix
    assert all(dist[i][j] == dist[j][i] for i in range(m) for j in range(m))


# --- Dynkin families -------------------------------------------------------------


@pytest.mark.parametrize(
    "d, name",
    [
        (diagram([[0, 1], [1, 0]]), "A2"),
        (diagram([[0, 3], [1, 0]]), "G2"),
        (chain(4, {(1, 2): 2}), "F4"),
        (chain(3, {(1, 0): 2}), "B3"),
        (chain(3, {(0, 1): 2}), "C3"),
        (diagram([[0]]), "A1"),
        (diagram([[0, 0], [0, 0]]), "A1 + A1"),
    ],
)
def test_family_examples(d, name):
    v = recognize_elliptic_family(d)
    assert v.verdict == "elliptic-family" and v.name == name


def test_single_arrow_is_unclassified():
    v = recognize_elliptic_family(diagram([[0, 1], [0, 0]]))
    assert v.verdict == "unclassified" and v.reason == "single arrow present"
    assert recognize_e_set(diagram([[0, 5], [0, 0]])).verdict == "unclassified"


@pytest.mark.parametrize(
    "d",
    [
        diagram([[0, 1, 1], [1, 0, 1], [1, 1, 0]]),  # a cycle
        diagram([[0, 5], [1, 0]]),  # product too large
        chain(4, {(0, 1): 2, (2, 3): 2}),  # two weighted edges
    ],
)
def test_non_dynkin_shapes(d):
    assert recognize_elliptic_family(d).verdict == "unclassified"


# --- E-set patterns ----------------------------------------------------------------


@pytest.mark.parametrize(
    "t, expected",
    [
        ([[0, 5], [1, 0]], "pair"),
        ([[0, 2], [2, 0]], None),
        ([[0, 1, 1], [1, 0, 1], [1, 1, 0]], None),
        ([[0, 2, 1], [1, 0, 1], [1, 1, 0]], "triangle3"),
        ([[0, 3, 0], [1, 0, 2], [0, 1, 0]], "chain3"),
        ([[0, 2, 0], [1, 0, 2], [0, 1, 0]], None),  # sum 4 is not > 4
        ([[0, 4, 0], [1, 0, 1], [0, 1, 0]], None),  # product 4 is outside (0, 4)
    ],
)
def test_e_set_boundaries(t, expected):
    v = recognize_e_set(diagram(t))
    if expected is None:
        assert v.verdict == "unclassified"
    else:
        assert v.verdict == "e-set" and v.name == expected


def _random_perm_check(d, rnd, attr):
    base = attr(d)
    for _ in range(20):
        perm = list(range(d.size))
        rnd.shuffle(perm)
        assert attr(d.permuted(perm)) == base


@pytest.mark.parametrize("name", [n for n in catalog_names() if n.startswith("table")])
def test_recognition_invariant_under_relabeling(name):
    d = load_catalog(name).payload
    rnd = random.Random(name)
    _random_perm_check(d, rnd, lambda x: (recognize_elliptic_family(x).verdict, recognize_elliptic_family(x).name))
    _random_perm_check(d, rnd, lambda x: (recognize_e_set(x).verdict, recognize_e_set(x).name))


@given(st.integers(1, 5), st.data())
def test_family_and_e_set_are_disjoint(m, data):
    t = [[0] * m for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        if data.draw(st.booleans()):
            t[i][j] = data.draw(st.integers(1, 3))
            t[j][i] = data.draw(st.integers(1, 2))
    d = diagram(t)
    fam, eset = recognize_elliptic_family(d), recognize_e_set(d)
    assert not (fam.verdict == "elliptic-family" and eset.verdict == "e-set")


# --- geometric realization ---------------------------------------------------------


def test_elliptic_by_face_simplicial_cone():
    d = diagram([[0, 1, 1], [1, 0, 1], [1, 1, 0]], rays=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    fe = elliptic_by_face(d)
    assert fe.elliptic[(0,)] and fe.elliptic[(0, 1)]
    assert not fe.elliptic[(0, 1, 2)]
    assert fe.e_sets == ((0, 1, 2),)


def test_elliptic_by_face_square_cone():
    rays = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
    d = diagram([[0] * 4 for _ in range(4)], rays=rays)
    fe = elliptic_by_face(d)
    assert fe.elliptic[(0, 1)] and not fe.elliptic[(0, 2)]
    assert set(fe.e_sets) == {(0, 2), (1, 3)}


def test_elliptic_by_face_needs_rays():
    with pytest.raises(MoriConeError):
        elliptic_by_face(diagram([[0]]))


# --- conditional bounds ------------------------------------------------------------


def test_theorem_flags_all_clear():
    f = theorem45_exception_flags()
    assert f.fano_applicable and f.cy_applicable
    assert (f.fano_bound, f.cy_bound) == (7, 40)


def test_small_ray_blocks_both():
    f = theorem45_exception_flags(has_small_ray=True)
    assert not f.fano_applicable and not f.cy_applicable
    assert any(e.startswith("(2)") for e in f.fano_exceptions)
    assert any(e.startswith("(2)") for e in f.cy_exceptions)


def test_nef_d3_zero_blocks_cy_only():
    f = theorem45_exception_flags(has_nef_d_with_d3_zero=True)
    assert f.fano_applicable and not f.cy_applicable
    assert f.cy_exceptions[0].startswith("(1)")


def test_low_kodaira_face_and_infinite_cone():
    f = theorem45_exception_flags(has_low_kodaira_face=True)
    assert not f.fano_applicable and not f.cy_applicable
    f = theorem45_exception_flags(cone_finite=False)
    assert f.fano_applicable and not f.cy_applicable
    assert f.cy_exceptions[0].startswith("(3)")
