import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import corpus
import oracles
from dirqa.complex import build_dfc
from dirqa.digraph import Digraph
from dirqa.errors import DomainError
from dirqa.measures import (
    SCALARS, VERTEX_MEASURES, analyze, avg_q_clustering, avg_q_walk_length, clustering_per_vertex,
    communicability_matrix, global_q_efficiency, local_q_efficiency, q_betweenness, q_closeness,
    q_communicability, q_degree_centrality, q_eccentricity_profile, q_eigenvector_centrality,
    q_energy, q_harmonic, q_katz, q_reaching, q_returnability, q_rich_club, simplicial_q_clustering,
)
from dirqa.qstructure import build_q_digraph, from_matrix
from dirqa.relations import Direction


def adjacency(max_n=7):
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(np.float64, (n, n), elements=st.sampled_from([0.0, 1.0]))).map(from_matrix)


def bridge_q0():
    qd = build_q_digraph(build_dfc(corpus.bridge()), 0)
    order = [qd.index(s) for s in [(2, 3), (0, 1, 2), (3, 4, 5)]]
    return qd, order


def cycle_q0():
    return build_q_digraph(build_dfc(corpus.cycle4()), 0)


def arc_q1():
    return build_q_digraph(build_dfc(corpus.two_triangles()), 1)


SINGLE = from_matrix(np.zeros((1, 1)))
EMPTY3 = from_matrix(np.zeros((3, 3)))
SYM_TRIANGLE = from_matrix(np.ones((3, 3)))


# walk lengths and efficiency


def test_walk_length_examples():
    assert avg_q_walk_length(bridge_q0()[0]) == pytest.approx(0.8333, abs=1e-4)
    assert avg_q_walk_length(cycle_q0()) == pytest.approx(2.0)
    assert avg_q_walk_length(arc_q1()) == pytest.approx(0.5)
    assert avg_q_walk_length(SINGLE) is None


def test_eccentricity_examples():
    _, diam, rad = q_eccentricity_profile(bridge_q0()[0])
    assert (diam, rad) == (2, 1)
    ecc, diam, rad = q_eccentricity_profile(SINGLE)
    assert ecc.tolist() == [0.0] and (diam, rad) == (0, 0)
    ecc, diam, rad = q_eccentricity_profile(cycle_q0())
    assert ecc.tolist() == [3.0] * 4 and (diam, rad) == (3, 3)
    assert q_eccentricity_profile(EMPTY3)[1:] == (0.0, 0.0)


def test_efficiency_examples():
    assert global_q_efficiency(bridge_q0()[0]) == pytest.approx(0.5833, abs=1e-4)
    assert global_q_efficiency(cycle_q0()) == pytest.approx(0.6111, abs=1e-4)
    assert global_q_efficiency(EMPTY3) == 0.0
    assert global_q_efficiency(SINGLE) is None


def test_local_efficiency_examples():
    assert local_q_efficiency(EMPTY3) == 0.0
    assert local_q_efficiency(arc_q1()) == 0.0
    assert local_q_efficiency(SYM_TRIANGLE) == pytest.approx(1.0)
    assert local_q_efficiency(SYM_TRIANGLE, "exclusive") == 0.0
    with pytest.raises(DomainError):
        local_q_efficiency(SYM_TRIANGLE, "nearby")


@settings(max_examples=80, deadline=None)
@given(adjacency())
def test_efficiency_bounds(qd):
    g = global_q_efficiency(qd)
    assert g is None or 0.0 <= g <= 1.0
    assert 0.0 <= local_q_efficiency(qd) <= 1.0
    h = q_harmonic(qd)
    assert ((h >= 0) & (h <= qd.n - 1)).all()


# communicability and returnability


def test_communicability_examples():
    qd, order = bridge_q0()
    cm = communicability_matrix(qd)[np.ix_(order, order)]
    np.testing.assert_allclose(cm[:, 0], [1.5431, 1.1752, 0.0], atol=1e-4)
    assert (communicability_matrix(EMPTY3) == np.eye(3)).all()
    assert q_communicability(arc_q1(), (0, 1, 3), (1, 2, 3)) == pytest.approx(1.0)


def test_returnability_examples():
    assert q_returnability(bridge_q0()[0]) == pytest.approx(1.0862, abs=1e-4)
    assert q_returnability(cycle_q0()) == pytest.approx(0.1668, abs=1e-4)
    assert q_returnability(arc_q1()) == pytest.approx(0.0, abs=1e-12)
    assert q_returnability(EMPTY3, relative=True) is None
    sym = q_returnability(SYM_TRIANGLE, relative=True)
    assert sym == pytest.approx(1.0)


# degree-type centralities


def test_degree_centrality_examples():
    qd, order = bridge_q0()
    np.testing.assert_allclose(q_degree_centrality(qd, "out")[order], [1.0, 0.5, 0.0])
    np.testing.assert_allclose(q_degree_centrality(cycle_q0(), "in"), [1 / 3] * 4)
    assert q_degree_centrality(SINGLE) is None
    with pytest.raises(DomainError):
        q_degree_centrality(qd, "up")


def test_closeness_examples():
    qd, order = bridge_q0()
    np.testing.assert_allclose(q_closeness(qd)[order], [0.5, 1 / 3, 0.0])
    np.testing.assert_allclose(q_closeness(arc_q1()), [1.0, 0.0])
    k = 4
    full = from_matrix(np.ones((k, k)))
    np.testing.assert_allclose(q_closeness(full), [1 / (k - 1)] * k)
    np.testing.assert_allclose(q_closeness(full, normalized=True), [1.0] * k)


def test_harmonic_examples():
    qd, order = bridge_q0()
    np.testing.assert_allclose(q_harmonic(qd)[order], [2.0, 1.5, 0.0])
    np.testing.assert_allclose(q_harmonic(cycle_q0()), [11 / 6] * 4)
    assert (q_harmonic(EMPTY3) == 0).all()


def test_betweenness_examples():
    qd, order = bridge_q0()
    np.testing.assert_allclose(q_betweenness(qd)[order], [1.0, 0.0, 0.0])
    np.testing.assert_allclose(q_betweenness(cycle_q0()), [3.0] * 4)
    star = from_matrix([[0, 1, 1], [0, 0, 0], [0, 0, 0]])
    assert (q_betweenness(star) == 0).all()
    assert q_betweenness(arc_q1(), normalized=True) is None
    np.testing.assert_allclose(q_betweenness(cycle_q0(), normalized=True), [0.5] * 4)


def _nx(qd, weighted=False):
    g = nx.DiGraph()
    g.add_nodes_from(range(qd.n))
    for i, j in qd.arcs:
        g.add_edge(i, j, length=1.0 / qd.matrix[i, j] if weighted else 1.0)
    return g


@settings(max_examples=80, deadline=None)
@given(adjacency(6))
def test_betweenness_matches_path_enumeration(qd):
    np.testing.assert_allclose(q_betweenness(qd), oracles.betweenness_by_paths(qd.matrix), atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.sampled_from([0.0, 0.5, 1.0, 2.0, 4.0]))))
def test_weighted_betweenness_matches_networkx(m):
    qd = from_matrix(m)
    ref = nx.betweenness_centrality(_nx(qd, True), normalized=False, weight="length")
    np.testing.assert_allclose(q_betweenness(qd, weighted=True), [ref[i] for i in range(qd.n)], atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(adjacency())
def test_harmonic_and_closeness_from_power_distances(qd):
    d = oracles.power_distances(qd.matrix)
    off = ~np.eye(qd.n, dtype=bool)
    with np.errstate(divide="ignore"):
        inv = np.where(np.isfinite(d) & off, 1.0 / np.where(d == 0, 1, d), 0.0)
    np.testing.assert_allclose(q_harmonic(qd), inv.sum(axis=1))
    tot = np.where(np.isfinite(d), d, 0).sum(axis=1)
    np.testing.assert_allclose(q_closeness(qd), np.where(tot > 0, 1 / np.where(tot > 0, tot, 1), 0))


# reaching, clustering, rich club


def test_reaching_examples():
    qd, order = bridge_q0()
    local, grc = q_reaching(qd)
    np.testing.assert_allclose(local[order], [1, 1, 0])
    assert grc == pytest.approx(0.5)
    assert q_reaching(cycle_q0())[1] == pytest.approx(0.0)
    assert q_reaching(arc_q1())[1] == pytest.approx(1.0)
    assert q_reaching(SINGLE) == (None, None)


@settings(max_examples=60, deadline=None)
@given(adjacency())
def test_reaching_bounds(qd):
    local, grc = q_reaching(qd)
    if qd.n > 1:
        assert ((0 <= local) & (local <= 1)).all()
        assert 0 <= grc <= 1


def test_clustering_examples():
    assert avg_q_clustering(EMPTY3) == 0.0
    assert avg_q_clustering(SYM_TRIANGLE) == pytest.approx(1.0)
    assert avg_q_clustering(bridge_q0()[0]) == 0.0


@settings(max_examples=60, deadline=None)
@given(adjacency())
def test_clustering_matches_networkx(qd):
    ref = nx.clustering(_nx(qd))
    c, _ = clustering_per_vertex(qd)
    np.testing.assert_allclose(c, [ref[i] for i in range(qd.n)], atol=1e-12)


def test_simplicial_clustering():
    qd = bridge_q0()[0]
    # [2,3] -> [0,1,2] and [3,4,5]: each shares one vertex, den 2^1 + 2^2 - 1 = 5
    assert simplicial_q_clustering(qd, (2, 3)) == pytest.approx(2 / 5)
    assert simplicial_q_clustering(qd, (2, 3), Direction.MINUS) == pytest.approx(1 / 5)
    assert simplicial_q_clustering(qd, (2, 3), denominator="product") == pytest.approx(2 / (2 ** 5 - 1))
    assert simplicial_q_clustering(qd, (3, 4, 5)) == 0.0
    with pytest.raises(DomainError):
        simplicial_q_clustering(qd, (2, 3), denominator="mean")


def test_rich_club_examples():
    assert q_rich_club(from_matrix(np.ones((4, 4))), 0) == 1.0
    assert q_rich_club(bridge_q0()[0], 0, "out") == 1.0
    assert q_rich_club(bridge_q0()[0], 2, "out") is None
    with pytest.raises(DomainError):
        q_rich_club(SINGLE, -1)


# spectral measures


def test_energy_examples():
    assert q_energy(bridge_q0()[0]) == pytest.approx(1 + np.sqrt(2))
    assert q_energy(cycle_q0()) == pytest.approx(4.0)
    assert q_energy(EMPTY3) == 0.0


@settings(max_examples=60, deadline=None)
@given(adjacency())
def test_energy_transpose_invariance(qd):
    assert q_energy(qd) == pytest.approx(q_energy(from_matrix(qd.matrix.T)), abs=1e-9)


def test_katz_examples():
    assert (q_katz(EMPTY3, "out", 0.3) == 1).all()
    np.testing.assert_allclose(q_katz(arc_q1(), "out", 0.5), [1.5, 1.0])
    qd, order = bridge_q0()
    np.testing.assert_allclose(q_katz(qd, "out", 0.25)[order], [1.6, 1.4, 1.0])


def test_eigenvector_examples():
    np.testing.assert_allclose(q_eigenvector_centrality(from_matrix([[0, 1], [1, 0]])), [2 ** -0.5] * 2)
    np.testing.assert_allclose(q_eigenvector_centrality(cycle_q0()), [0.5] * 4, atol=1e-8)
    qd, order = bridge_q0()
    only = qd.matrix.copy()
    only[order[1], order[0]] = 0  # drop sigma_2 -> sigma_1, leaving an acyclic digraph
    assert q_eigenvector_centrality(from_matrix(only)) is None


# permutation equivariance and reports


@settings(max_examples=40, deadline=None)
@given(adjacency(6), st.randoms(use_true_random=False))
def test_permutation_equivariance(qd, rnd):
    perm = list(range(qd.n))
    rnd.shuffle(perm)
    pq = from_matrix(qd.matrix[np.ix_(perm, perm)])
    a, b = analyze(qd), analyze(pq)
    for k, v in a.scalar_measures.items():
        if v is None:
            assert b.scalar_measures[k] is None
        else:
            assert b.scalar_measures[k] == pytest.approx(v, abs=1e-8), k
    for k, v in a.vertex_measures.items():
        if k.endswith("simplicial_clustering") or v is None:
            continue
        # a defective Perron root is only resolved to ~sqrt(eps), and Katz at 0.9 / rho amplifies it
        rtol = 1e-5 if k.endswith("katz") else 1e-7
        np.testing.assert_allclose(b.vertex_measures[k], np.asarray(v)[perm], rtol=rtol, atol=1e-7, err_msg=k)


def test_report_contents():
    qd = bridge_q0()[0]
    rep = analyze(qd)
    assert set(rep.scalar_measures) == set(SCALARS)
    assert set(rep.vertex_measures) == set(VERTEX_MEASURES)
    assert rep.metadata["katz_alpha"] == pytest.approx(0.9)
    for k, v in rep.maxima().items():
        vals = rep.vertex_measures[k]
        assert v == (max(vals) if vals else None)
    empty = analyze(build_q_digraph(build_dfc(corpus.bridge()), 4))
    assert "empty q-digraph" in empty.flags
    with pytest.raises(DomainError):
        analyze(qd, ["charisma"])


def test_weighted_report_uses_inverse_weights():
    w = {a: 2.0 for a in corpus.BRIDGE_ARCS}
    qd = build_q_digraph(build_dfc(Digraph.from_arcs(6, corpus.BRIDGE_ARCS, w)), 0, weighted=True)
    rep = analyze(qd, ["avg_walk_length", "harmonic"], weighted=True)
    unweighted = analyze(bridge_q0()[0], ["avg_walk_length"])
    # arc weights are products of node weights; lengths shrink accordingly
    assert rep.scalar_measures["avg_walk_length"] < unweighted.scalar_measures["avg_walk_length"]
    assert rep.metadata["distance_length"] == "1/w"
