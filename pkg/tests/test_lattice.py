import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from moricone.errors import DimensionMismatch, InvalidConfiguration, ZeroNormError
from moricone.lattice import (
    Definiteness,
    GramMatrix,
    definiteness,
    distance_surrogate,
    in_light_cone,
    norm_and_pairing,
    numerical_signature,
    signature,
)

import oracles
from conftest import symmetric_matrices


def sig(rows):
    return signature(GramMatrix(rows)).as_tuple()


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[2]], (1, 0, 0)),
        ([[-2, 1], [1, -2]], (0, 0, 2)),
        ([[0, 1], [1, 0]], (1, 0, 1)),
        ([[0, 0], [0, 0]], (0, 2, 0)),
        ([[0, 1, 1], [1, 0, 1], [1, 1, 0]], (1, 0, 2)),
    ],
)
def test_signature_examples(rows, expected):
    assert sig(rows) == expected


@pytest.mark.parametrize(
    "rows, verdict",
    [
        ([[-1]], Definiteness.NEGATIVE_DEFINITE),
        ([[-2, 2], [2, -2]], Definiteness.NEGATIVE_SEMIDEFINITE),
        ([[-1, 2], [2, -1]], Definiteness.HAS_POSITIVE),
    ],
)
def test_definiteness_examples(rows, verdict):
    assert definiteness(GramMatrix(rows)) is verdict


def test_gram_rejects_asymmetry_naming_indices():
    with pytest.raises(InvalidConfiguration, match=r"\(0,1\)"):
        GramMatrix([[1, 2], [3, 1]])


def test_gram_rejects_empty_and_ragged():
    with pytest.raises(InvalidConfiguration):
        GramMatrix([])
    with pytest.raises(InvalidConfiguration):
        GramMatrix([[1, 0], [0]])


@given(symmetric_matrices(max_dim=6))
def test_signature_matches_charpoly_oracle(rows):
    assert sig(rows) == oracles.inertia(rows)


@given(symmetric_matrices(max_dim=8, lo=-3, hi=3), st.randoms(use_true_random=False))
def test_signature_permutation_invariant(rows, rnd):
    n = len(rows)
    perm = list(range(n))
    rnd.shuffle(perm)
    permuted = [[rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    assert sig(rows) == sig(permuted)


@given(symmetric_matrices(max_dim=6))
def test_negative_definite_iff_sylvester(rows):
    expected = oracles.negative_definite(rows, tuple(range(len(rows))))
    assert (definiteness(GramMatrix(rows)) is Definiteness.NEGATIVE_DEFINITE) == expected


@given(symmetric_matrices(min_dim=2, max_dim=6), st.data())
def test_interlacing_on_principal_submatrices(rows, data):
    n = len(rows)
    idx = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    g = GramMatrix(rows)
    full, part = signature(g), signature(g.restrict(sorted(idx)))
    assert part.n_plus <= full.n_plus
    assert part.n_minus <= full.n_minus


@given(symmetric_matrices(max_dim=6))
def test_numerical_signature_drops_kernel(rows):
    if all(v == 0 for r in rows for v in r):
        return
    g = GramMatrix(rows)
    full, num = signature(g), numerical_signature(g)
    assert num.n_zero == 0
    assert (num.n_plus, num.n_minus) == (full.n_plus, full.n_minus)


def test_norm_and_pairing():
    assert norm_and_pairing([1], [1], GramMatrix([[2]])) == (2, 2, 2)
    x2, _, _ = norm_and_pairing([1, 1], [1, 0], GramMatrix([[-2, 1], [1, -2]]))
    assert x2 == -2
    with pytest.raises(DimensionMismatch):
        norm_and_pairing([1, 0], [1], GramMatrix([[1, 0], [0, 1]]))


def test_light_cone_membership():
    g = GramMatrix([[1, 0], [0, -1]])
    assert in_light_cone([2, 1], g)
    assert not in_light_cone([1, 1], g)


@pytest.mark.parametrize(
    "g, x, y, expected",
    [
        ([[-2, 1], [1, -2]], [1, 0], [0, 1], Fraction(1, 4)),
        ([[-1, 2], [2, -1]], [1, 0], [0, 1], Fraction(4)),
        ([[3, 1], [1, 5]], [1, 2], [1, 2], Fraction(1)),
    ],
)
def test_distance_surrogate_examples(g, x, y, expected):
    assert distance_surrogate(x, y, GramMatrix(g)).value == expected


def test_distance_surrogate_rejects_zero_norm():
    with pytest.raises(ZeroNormError):
        distance_surrogate([1, 1], [1, 0], GramMatrix([[1, 0], [0, -1]]))


def test_surrogate_at_least_one_in_positive_cone():
    g = GramMatrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    rnd = random.Random(5)
    for _ in range(50):
        x = [rnd.randint(5, 9), rnd.randint(-2, 2), rnd.randint(-2, 2)]
        y = [rnd.randint(5, 9), rnd.randint(-2, 2), rnd.randint(-2, 2)]
        s = distance_surrogate(x, y, g)
        assert s.value >= 1
        assert s.cosh() >= 1
