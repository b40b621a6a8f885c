import itertools
from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from moricone.bounds import (
    bound_report,
    compute_counting_constants,
    compute_d,
    lemma2_bound,
    lemma3_bound,
)
from moricone.catalog import load_catalog
from moricone.config import DistanceMode, Verdict, enumerate_subsets
from moricone.errors import InvalidConfiguration
from moricone.oriented import OrientedDiagram

from conftest import make_config, surface_configurations

rationals = st.fractions(min_value=0, max_value=50, max_denominator=12)


def bfs(adj, nodes, a):
    seen = {a: 0}
    q = deque([a])
    while q:
        u = q.popleft()
        for v in nodes:
            if v not in seen and adj(u, v):
                seen[v] = seen[u] + 1
                q.append(v)
    return seen


@pytest.mark.parametrize(
    "c1, c2, b2, b3",
    [
        (0, 0, 68, 6),
        (1, 1, 196, Fraction(46, 3)),
        (Fraction(1, 2), Fraction(1, 3), Fraction(380, 3), 10),
        (3, 3, 452, 34),
        (Fraction(3, 2), 0, 212, 14),
    ],
)
def test_bound_formulas(c1, c2, b2, b3):
    assert lemma2_bound(c1, c2) == b2
    assert lemma3_bound(c1, c2) == b3


def test_bounds_reject_negative():
    with pytest.raises(InvalidConfiguration):
        lemma2_bound(-1, 0)
    with pytest.raises(InvalidConfiguration):
        lemma3_bound(0, Fraction(-1, 2))


@given(rationals, rationals, rationals)
def test_bounds_monotone(a, b, eps):
    for f in (lemma2_bound, lemma3_bound):
        assert f(a + eps, b) >= f(a, b)
        assert f(a, b + eps) >= f(a, b)


def test_d_examples():
    c = make_config([[-2, 3], [3, -2]])
    assert compute_d(c, [(0, 1)]).d == 1
    res = compute_d(c, [])
    assert res.d == 0 and res.vacuous
    t = load_catalog("table43-chain3").payload
    assert compute_d(t, [(0, 1, 2)]).d == 2


def test_d_rejects_disconnected_subset():
    c = make_config([[-1, 0], [0, -1]])
    with pytest.raises(InvalidConfiguration):
        compute_d(c, [(0, 1)])


def test_counting_constants_examples(chain_a3):
    singles = compute_counting_constants(chain_a3, 1, [(0,)])
    assert (singles.c1, singles.c2) == (0, 0)
    pair = compute_counting_constants(chain_a3, 1, [(0, 1)])
    assert pair.c1 == Fraction(1, 2)
    full = compute_counting_constants(chain_a3, 1, [(0, 1, 2)])
    assert (full.c1, full.c2) == (Fraction(2, 3), Fraction(1, 3))
    vac = compute_counting_constants(chain_a3, 1, [])
    assert vac.vacuous and (vac.c1, vac.c2) == (0, 0)


def test_ordered_pairs_double_the_count(chain_a3):
    unordered = compute_counting_constants(chain_a3, 1, [(0, 1, 2)])
    ordered = compute_counting_constants(chain_a3, 1, [(0, 1, 2)], ordered_pairs=True)
    assert ordered.c1 == 2 * unordered.c1


@given(surface_configurations(max_dim=5), st.integers(0, 3))
def test_counting_constants_minimal_and_attained(c, d):
    subsets = [x.subset for x in enumerate_subsets(c, [Verdict.ELLIPTIC], 5).items]
    res = compute_counting_constants(c, d, subsets)
    adj = lambda u, v: c.gram[u, v] > 0  # noqa: E731
    counts = []
    for s in subsets:
        dist = {a: bfs(adj, s, a) for a in s}
        pairs = [dist[a].get(b) for a, b in itertools.combinations(s, 2)]
        n1 = sum(1 for x in pairs if x is not None and 1 <= x <= d)
        n2 = sum(1 for x in pairs if x is not None and d + 1 <= x <= 2 * d + 1)
        counts.append((n1, n2, len(s)))
    for n1, n2, size in counts:
        assert n1 <= res.c1 * size and n2 <= res.c2 * size
    if counts:
        assert any(n1 == res.c1 * size for n1, _, size in counts)
        assert any(n2 == res.c2 * size for _, n2, size in counts)


@given(st.integers(2, 5), st.data())
def test_surface_c1_at_most_half_of_ordered(m, data):
    rows = [[-2] * m for _ in range(m)]
    t = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                rows[i][j] = 0
    for i, j in itertools.combinations(range(m), 2):
        w = data.draw(st.integers(0, 1))
        rows[i][j] = rows[j][i] = w
        t[i][j] = t[j][i] = w
    c = make_config(rows)
    d = OrientedDiagram(tuple(f"R{i}" for i in range(m)), tuple(f"D{i}" for i in range(m)), t, (1,) * m)
    subsets = [x.subset for x in enumerate_subsets(c, [Verdict.ELLIPTIC], m).items]
    surf = compute_counting_constants(c, 1, subsets)
    cy = compute_counting_constants(d, 1, subsets)
    assert surf.c1 * 2 <= cy.c1


def test_report_on_vacuous_configuration():
    rep = bound_report(make_config([[-1, 0], [0, -1]]))
    assert rep.d == 0
    assert (rep.c1, rep.c2) == (0, 0)
    assert (rep.lemma2_bound, rep.lemma3_bound) == (68, 6)
    assert any("vacuous" in c for c in rep.caveats)


def test_report_on_catalog_surface():
    rep = bound_report(load_catalog("HE8~").payload)
    assert rep.rho == 10
    assert rep.consistent
    assert rep.rho < rep.lemma2_bound
    assert not rep.complete
    assert any("lower estimates" in c for c in rep.caveats)
    assert rep.lemma2_bound == lemma2_bound(rep.c1, rep.c2)
    assert rep.lemma3_bound == lemma3_bound(rep.c1, rep.c2)


def test_report_on_oriented_a3():
    rep = bound_report(load_catalog("table1-A3").payload)
    assert rep.mode == "cy3"
    assert rep.elliptic_count == 7  # every nonempty subset of A3 is elliptic
    assert rep.c1 > 0 or rep.c2 > 0
    assert any("ordered pairs" in c for c in rep.caveats)


def test_report_overrides():
    rep = bound_report(make_config([[-1, 0], [0, -1]]), d_override=2, c1_override=1, c2_override=1)
    assert rep.d == 2 and rep.d_source == "override"
    assert rep.lemma2_bound == 196


def test_report_ambient_mode_label():
    rep = bound_report(load_catalog("HE8~").payload, max_size=3, mode=DistanceMode.AMBIENT)
    assert rep.distance_mode is DistanceMode.AMBIENT
