import os
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.distance import cdist, pdist, squareform

from conftest import heis_distances, heis_may_overlap, heis_norm4, heis_overlap_depth, heis_relative
from ft_atlas import pointset_geometry as pg
from ft_atlas.errors import BadParams, EmptyCenters

coords = st.fractions(min_value=-20, max_value=20, max_denominator=50)
points = st.tuples(coords, coords, coords)


@settings(max_examples=60, deadline=None)
@given(points, points, points)
def test_group_law_exact(a, b, c):
    p, q, r = pg.HeisPoint(*a), pg.HeisPoint(*b), pg.HeisPoint(*c)
    assert pg.heis_multiply(pg.heis_multiply(p, q), r) == pg.heis_multiply(p, pg.heis_multiply(q, r))
    assert pg.heis_multiply(p, pg.heis_inverse(p)) == pg.IDENTITY
    # left invariance of the quasi-distance
    assert pg.quasi_distance4(pg.heis_multiply(r, p), pg.heis_multiply(r, q)) == pg.quasi_distance4(p, q)


@settings(max_examples=60, deadline=None)
@given(points, points)
def test_distance_symmetric_and_matches_float_oracle(a, b):
    p, q = pg.HeisPoint(*a), pg.HeisPoint(*b)
    assert pg.quasi_distance4(p, q) == pg.quasi_distance4(q, p)
    rel = heis_relative(np.array(a, float), np.array(b, float))
    want = ((rel[0] ** 2 + rel[1] ** 2) ** 2 + rel[2] ** 4) ** 0.25
    assert abs(pg.quasi_distance(p, q) - want) <= 1e-9 * max(1.0, want)


def test_counterexample_distances_exact():
    for n in (5, 10, 25, 50):
        for ell in range(1, n + 1):
            assert pg.quasi_distance4(pg.U(n), pg.V(n, ell)) == Fraction(ell, n * n) ** 4


def test_pairwise_matches_oracles():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(60, 3))
    assert np.abs(pg.pairwise_distances(pg.heisenberg_set(x)) - heis_distances(x)).max() < 1e-12
    assert np.abs(pg.pairwise_distances(pg.euclidean_set(x)) - squareform(pdist(x))).max() < 1e-12
    y = rng.normal(size=(7, 3))
    assert np.abs(pg.pairwise_distances(pg.euclidean_set(x), pg.euclidean_set(y)) - cdist(x, y)).max() < 1e-12


def test_threads_do_not_change_results(monkeypatch):
    rng = np.random.default_rng(1)
    s = pg.heisenberg_set(rng.normal(size=(700, 3)))
    serial = pg.pairwise_distances(s, chunk=128)
    monkeypatch.setenv("FT_ATLAS_THREADS", "4")
    assert os.environ["FT_ATLAS_THREADS"] == "4"
    assert np.array_equal(pg.pairwise_distances(s, chunk=128), serial)


def test_ball_counts_closed_and_exact_on_boundary():
    s = pg.euclidean_set([(0.0,), (1.0,), (2.0,)])
    c = pg.euclidean_set([(0.0,)])
    assert list(pg.ball_counts(s, c, 1)) == [2]
    assert list(pg.ball_counts(s, c, Fraction(999, 1000))) == [1]
    # Gamma^-1 points sit at distance exactly l/N from U_N
    inv = pg.inverse_set(pg.counterexample_set(10))
    assert list(pg.ball_counts(inv, pg.heisenberg_set([pg.U(10)]), Fraction(1, 10))) == [10]
    assert list(pg.ball_counts(inv, pg.heisenberg_set([pg.U(10)]), Fraction(9, 100))) == [9]


def test_counterexample_set_is_one_separated_in_distance():
    gamma = pg.counterexample_set(20)
    assert len(gamma) == 210
    d = heis_distances(gamma.array)
    np.fill_diagonal(d, np.inf)
    assert d.min() >= 1 - 1e-9
    assert abs(pg.min_pairwise_distance(gamma) - d.min()) < 1e-12


def test_separation_scan():
    s = pg.euclidean_set([(0.0, 0.0), (0.3, 0.0), (3.0, 3.0)])
    rep = pg.separation_scan(s, 0.5, pg.GridSpec((0.0, 0.0), (3.0, 3.0), 7), query_s=(0.2, 0.5))
    assert rep.max_ball_occupancy == 2
    assert rep.is_separated_at(0.2) and not rep.is_separated_at(0.5)
    with pytest.raises(EmptyCenters):
        pg.separation_scan(s, 0.5, pg.euclidean_set([], dim=2))
    with pytest.raises(BadParams):
        pg.separation_scan(s, 0, s)


def test_small_partition_example():
    s = pg.euclidean_set([0.0, 0.4, 0.8])
    part = pg.greedy_partition(s, 0.5)
    assert part.indices == [[0, 2], [1]]
    assert part.packing_constant == 2


def test_euclidean_conflicts_match_pdist():
    rng = np.random.default_rng(2)
    x = rng.uniform(0, 5, size=(150, 2))
    c = pg.conflict_matrix(pg.euclidean_set(x), 0.7)
    want = squareform(pdist(x)) <= 0.7
    np.fill_diagonal(want, False)
    assert np.array_equal(c, want)


def test_heisenberg_conflicts_against_optimizer():
    rng = np.random.default_rng(3)
    x = rng.uniform(-1.5, 1.5, size=(40, 3))
    sep = 1.0
    c = pg.conflict_matrix(pg.heisenberg_set(x), sep)
    iu, ju = np.triu_indices(len(x), 1)
    rel = heis_relative(x[iu], x[ju])
    maybe = heis_may_overlap(rel, sep / 2)
    assert not c[iu[~maybe], ju[~maybe]].any()
    for i, j, g in zip(iu[maybe], ju[maybe], rel[maybe]):
        depth = heis_overlap_depth(g, sep / 2)
        if abs(depth - 1) > 1e-6:
            assert c[i, j] == (depth < 1)


@pytest.mark.parametrize("space", [pg.EUCLIDEAN, pg.HEISENBERG])
def test_greedy_parts_are_maximal_and_separated(space):
    rng = np.random.default_rng(4)
    x = rng.uniform(0, 3, size=(120, 3))
    s = pg.euclidean_set(x) if space == pg.EUCLIDEAN else pg.heisenberg_set(x)
    part = pg.greedy_partition(s, 0.6)
    conf = pg.conflict_matrix(s, 0.6)
    assert sorted(i for p in part.indices for i in p) == list(range(len(s)))
    for k, idx in enumerate(part.indices):
        assert not conf[np.ix_(idx, idx)].any()
        # each later point conflicts with this part, or it would have been taken
        later = [i for p in part.indices[k + 1:] for i in p]
        assert all(conf[i, idx].any() for i in later)
    assert len(part.parts) <= part.packing_constant + 1


def test_partition_rejects_bad_separation():
    with pytest.raises(BadParams):
        pg.greedy_partition(pg.euclidean_set([0.0]), 0)


def test_collapse_family():
    s, mult = pg.collapse_family([(1, 2), (1, 2), (3, 4), (1, 2)])
    assert len(s) == 2 and mult == 3
    h, mult = pg.collapse_family([pg.U(2), pg.U(2)], pg.HEISENBERG)
    assert len(h) == 1 and mult == 2


def test_quasi_triangle_ratio_exceeds_one():
    rng = np.random.default_rng(5)
    t = rng.normal(size=(20000, 3, 3))
    ratio = pg.quasi_triangle_ratio(t)
    assert 1 < ratio < 2
    p, q, r = t[:, 0], t[:, 1], t[:, 2]

    def d(a, b):
        return heis_norm4(heis_relative(a, b)) ** 0.25

    assert abs(ratio - (d(p, r) / (d(p, q) + d(q, r))).max()) < 1e-12


def test_heisenberg_demo():
    out = pg.heisenberg_demo(10)
    assert out["points"] == 55 and out["distances_exact"]
    assert out["inverse_ball"]["max_ball_occupancy"] >= 10
    assert out["min_pairwise_distance_gamma"] >= 1 - 1e-9


def test_point_set_json():
    s = pg.heisenberg_set([pg.V(2, 1)])
    assert s.to_json() == {"space": "heisenberg", "dim": 3, "points": [[4, "1/4", "1/2"]]}
    with pytest.raises(BadParams):
        pg.PointSet("hyperbolic", ())
