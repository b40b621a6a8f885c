import itertools
from fractions import Fraction
from math import inf

import pytest
from hypothesis import given, strategies as st

from moricone.config import (
    Configuration,
    DistanceMode,
    Kind,
    Verdict,
    build_ample_candidate,
    build_graph,
    classify_subset,
    enumerate_subsets,
    epsilon_invariant,
    fractional_index,
    narrow_parts_search,
    surface_invariants,
    verify_narrow_parts,
)
from moricone.errors import Infeasible, InvalidConfiguration, NoSpanningSubset
from moricone.lattice import GramMatrix

import oracles
from conftest import make_config, surface_configurations


# --- construction ------------------------------------------------------------


def test_rejects_negative_off_diagonal():
    with pytest.raises(InvalidConfiguration, match="E.E' >= 0"):
        make_config([[-2, -1], [-1, -2]])


def test_rejects_nonnegative_self_intersection_on_surfaces():
    with pytest.raises(InvalidConfiguration, match="E\\^2 < 0"):
        make_config([[0]])


def test_cy3_kind_allows_any_diagonal():
    c = Configuration(("R1",), GramMatrix([[3]]), kind=Kind.CY3)
    assert c.dim == 1


def test_rejects_label_mismatch_and_duplicates():
    with pytest.raises(InvalidConfiguration):
        Configuration(("a",), GramMatrix([[-1, 0], [0, -1]]))
    with pytest.raises(InvalidConfiguration):
        Configuration(("a", "a"), GramMatrix([[-1, 0], [0, -1]]))


# --- graph -------------------------------------------------------------------


def test_graph_edges_and_components():
    g = build_graph(make_config([[-1, 0], [0, -1]]))
    assert g.graph.number_of_edges() == 0
    assert len(g.components()) == 2
    g = build_graph(make_config([[-1, 1], [1, -1]]))
    assert g.graph.number_of_edges() == 1
    assert g.diameter() == 1


def test_induced_versus_ambient_distance():
    # 4-cycle 0-1-2-3-0: curves 0 and 2 are 2 apart, but disconnected inside {0, 2}
    rows = [[-2, 1, 0, 1], [1, -2, 1, 0], [0, 1, -2, 1], [1, 0, 1, -2]]
    g = build_graph(make_config(rows))
    assert g.distance(0, 2, within=[0, 2]) == inf
    assert g.distances([0, 2], DistanceMode.AMBIENT)[(0, 2)] == 2
    assert g.diameter([0, 1, 2]) == 2


# --- invariants --------------------------------------------------------------


def test_invariants_single_curves():
    inv = surface_invariants(make_config([[-2]], canonical=(0,)))
    assert (inv.rho, inv.delta, inv.p) == (1, 2, 0)
    inv = surface_invariants(make_config([[-4]], canonical=(2,)))
    assert inv.per_curve_genus == (0,)


def test_invariants_genus_needs_canonical():
    with pytest.raises(InvalidConfiguration, match="canonical"):
        surface_invariants(make_config([[-2]]), with_genus=True)
    assert surface_invariants(make_config([[-2]])).p is None


def test_invariants_reject_odd_adjunction():
    with pytest.raises(InvalidConfiguration, match="p_a"):
        surface_invariants(make_config([[-2]], canonical=(1,)))


# --- classification ----------------------------------------------------------


@pytest.mark.parametrize(
    "rows, verdict",
    [
        ([[-1]], Verdict.ELLIPTIC),
        ([[-2, 2], [2, -2]], Verdict.PARABOLIC),
        ([[-2, 3], [3, -2]], Verdict.LANNER),
        ([[-2, 1, 0], [1, -2, 1], [0, 1, -2]], Verdict.ELLIPTIC),
    ],
)
def test_classify_examples(rows, verdict):
    c = make_config(rows)
    assert classify_subset(c, range(c.dim)).verdict is verdict


def test_classify_rejects_empty_subset():
    with pytest.raises(InvalidConfiguration):
        classify_subset(make_config([[-1]]), [])


def test_lanner_witness_lists_maximal_proper_subsets():
    c = make_config([[-2, 3], [3, -2]])
    assert classify_subset(c, [0, 1]).witness == ((0,), (1,))


def test_hyperbolic_non_minimal():
    # the pair (0, 1) is already hyperbolic, so the triple is not minimal
    c = make_config([[-1, 3, 0], [3, -1, 0], [0, 0, -1]])
    assert classify_subset(c, [0, 1, 2]).verdict is Verdict.HYPERBOLIC


@given(surface_configurations(max_dim=5))
def test_classification_matches_minor_oracle(c):
    rows = c.gram.rows()
    for k in range(1, c.dim + 1):
        for s in itertools.combinations(range(c.dim), k):
            assert classify_subset(c, s).verdict.value == oracles.minor_verdict(rows, s)


@given(surface_configurations(max_dim=6))
def test_lanner_subsets_are_connected(c):
    for item in enumerate_subsets(c, [Verdict.LANNER], max_size=6).items:
        assert item.connected


@given(surface_configurations(max_dim=5), st.integers(-4, -1), st.lists(st.integers(0, 3), min_size=5, max_size=5))
def test_adding_a_curve_keeps_existing_verdicts(c, diag, col):
    n = c.dim
    rows = [r + [col[i]] for i, r in enumerate(c.gram.rows())] + [col[:n] + [diag]]
    bigger = make_config(rows)
    for k in range(1, n + 1):
        for s in itertools.combinations(range(n), k):
            assert classify_subset(c, s).verdict is classify_subset(bigger, s).verdict


def test_enumeration_order_and_completeness(chain_a3):
    enum = enumerate_subsets(chain_a3, None, max_size=3)
    assert [x.subset for x in enum.items][:4] == [(0,), (1,), (2,), (0, 1)]
    assert enum.complete
    assert not enumerate_subsets(chain_a3, None, max_size=2).complete
    singles = enumerate_subsets(chain_a3, ["elliptic"], max_size=1)
    assert [x.subset for x in singles.items] == [(0,), (1,), (2,)]


@given(surface_configurations(max_dim=5))
def test_enumeration_agrees_with_classify(c):
    for item in enumerate_subsets(c, None, max_size=c.dim).items:
        assert item.verdict is classify_subset(c, item.subset).verdict


# --- narrow parts --------------------------------------------------------------


def test_narrow_parts_pair():
    res = narrow_parts_search(make_config([[-2, 1], [1, -2]]))
    assert res.success and res.chosen == (0, 1)
    assert res.max_ratio == 1
    assert res.warnings  # rho < 3


def test_narrow_parts_disconnected_failure():
    rows = [[-2, 1, 0, 0], [1, -2, 0, 0], [0, 0, -2, 1], [0, 0, 1, -2]]
    res = narrow_parts_search(make_config(rows))
    assert not res.success
    assert not res.connected
    assert "connected diagram" in res.failed_clauses


def test_narrow_parts_ratio_failure():
    rows = [[-1, 40], [40, -1]]
    res = narrow_parts_search(make_config(rows))
    assert not res.success
    assert res.max_ratio == 6400
    assert any("3844" in f for f in res.failed_clauses)


def test_narrow_parts_rank_too_large():
    with pytest.raises(NoSpanningSubset):
        narrow_parts_search(make_config([[-2, 2], [2, -2]]), rho=2)


@given(surface_configurations(min_dim=2, max_dim=6))
def test_narrow_parts_success_reverifies(c):
    res = narrow_parts_search(c)
    check = verify_narrow_parts(c, res)
    assert check["spans"]
    if res.success:
        assert all(check.values())
        assert res.max_ratio < 3844


# --- ample candidate -----------------------------------------------------------


def test_ample_single_negative_curve_infeasible():
    with pytest.raises(Infeasible):
        build_ample_candidate(make_config([[-1]]), [0])


def test_ample_two_meeting_curves():
    amp = build_ample_candidate(make_config([[-1, 2], [2, -1]]), [0, 1])
    assert amp.coefficients == (1, 1)
    assert amp.h_squared == 2
    assert amp.pairings == (1, 1)


def test_ample_basis_must_span():
    with pytest.raises(NoSpanningSubset):
        build_ample_candidate(make_config([[-1, 2], [2, -1]]), [0])


@given(surface_configurations(min_dim=2, max_dim=5))
def test_ample_candidate_reverifies(c):
    basis = narrow_parts_search(c).chosen
    try:
        amp = build_ample_candidate(c, basis)
    except Infeasible:
        return
    assert all(a >= 1 for a in amp.coefficients)
    h = [0] * c.dim
    for b, a in zip(basis, amp.coefficients):
        h[b] += a
    pair = [sum(c.gram[k, j] * h[j] for j in range(c.dim)) for k in range(c.dim)]
    assert all(p > 0 for p in pair)
    assert sum(h[k] * pair[k] for k in range(c.dim)) == amp.h_squared > 0


# --- indices -----------------------------------------------------------------


def test_epsilon_examples():
    assert epsilon_invariant(None, [0], [1]).epsilon == 1
    assert epsilon_invariant(None, [0, 1, 2], [1, Fraction(1, 3), Fraction(2, 3)]).epsilon == Fraction(1, 3)
    with pytest.raises(InvalidConfiguration, match="nonpositive"):
        epsilon_invariant(None, [0, 1], [Fraction(1, 2), -1])
    with pytest.raises(InvalidConfiguration):
        epsilon_invariant(None, [], [])
    assert epsilon_invariant(None, [0], [2]).warnings


@pytest.mark.parametrize(
    "k, r, h",
    [((2, 4, 6), 2, (1, 2, 3)), ((1, 0, 0), 1, (1, 0, 0)), ((-3, -6), 3, (-1, -2))],
)
def test_fractional_index(k, r, h):
    assert fractional_index(k) == (r, h)


def test_fractional_index_zero_vector():
    with pytest.raises(InvalidConfiguration):
        fractional_index((0, 0))
