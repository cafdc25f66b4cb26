"""Simplicial characterization measures on q-digraphs.

Every function takes a QDigraph; plain digraphs can be wrapped with
`qstructure.from_matrix`. Distance conventions: the average walk length
counts unreachable pairs as 0, efficiency and harmonic centrality use
1/inf = 0, eccentricities ignore unreachable targets.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import sparse

from . import linalg
from .errors import DomainError
from .qstructure import QDigraph, digraph_components, inverse_weight, q_distance_matrix
from .relations import Direction


def _matrix(qd: QDigraph, weighted: bool) -> np.ndarray:
    return qd.matrix if weighted else qd.binary


def _dist(qd, weighted=False, F=None) -> np.ndarray:
    return q_distance_matrix(qd, weighted=weighted, F=F)


def _offdiag(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def avg_q_walk_length(qd: QDigraph, weighted: bool = False, F=None) -> float | None:
    n = qd.n
    if n < 2:
        return None
    d = _dist(qd, weighted, F)
    d = np.where(np.isfinite(d), d, 0.0)
    return float(d[_offdiag(n)].sum() / (n * (n - 1)))


def q_eccentricity_profile(qd: QDigraph, weighted: bool = False, F=None):
    """(per-vertex eccentricity, diameter, radius).

    Diameter and radius range over vertices that reach at least one other
    vertex; with no arcs both are 0.
    """
    n = qd.n
    if n == 0:
        return np.zeros(0), 0.0, 0.0
    d = _dist(qd, weighted, F)
    finite = np.isfinite(d) & _offdiag(n)
    ecc = np.where(finite, d, 0.0).max(axis=1)
    reaching = finite.any(axis=1)
    if not reaching.any():
        return ecc, 0.0, 0.0
    return ecc, float(ecc[reaching].max()), float(ecc[reaching].min())


def _efficiency_from(d: np.ndarray) -> float:
    n = d.shape[0]
    with np.errstate(divide="ignore"):
        inv = np.where(np.isfinite(d) & (d > 0), 1.0 / d, 0.0)
    return float(inv[_offdiag(n)].sum() / (n * (n - 1)))


def global_q_efficiency(qd: QDigraph, weighted: bool = False, F=None) -> float | None:
    if qd.n < 2:
        return None
    return _efficiency_from(_dist(qd, weighted, F))


def communicability_matrix(qd: QDigraph, weighted: bool = False) -> np.ndarray:
    return linalg.expm(_matrix(qd, weighted))


def q_communicability(qd: QDigraph, sigma, tau, weighted: bool = False) -> float:
    i, j = qd.index(sigma), qd.index(tau)
    return float(communicability_matrix(qd, weighted)[i, j])


def q_returnability(qd: QDigraph, relative: bool = False, weighted: bool = False) -> float | None:
    """Tr exp(H) - |V|, optionally divided by the same for the symmetrised H."""
    h = _matrix(qd, weighted)
    k = float(np.trace(linalg.expm(h)) - qd.n)
    if not relative:
        return k
    sym = np.maximum(h, h.T)
    den = float(np.trace(linalg.expm(sym)) - qd.n)
    if den <= 0:
        return None
    return k / den


def q_degree_centrality(qd: QDigraph, direction: str = "out", weighted: bool = False):
    if qd.n < 2:
        return None
    if direction == "out":
        deg = qd.out_degree(weighted)
    elif direction == "in":
        deg = qd.in_degree(weighted)
    else:
        raise DomainError(f"direction must be 'in' or 'out', got {direction!r}")
    return deg / (qd.n - 1)


def giant_component_size(qd: QDigraph) -> int:
    parts = digraph_components(qd.matrix, "weak")
    return max((len(p) for p in parts), default=0)


def q_closeness(qd: QDigraph, normalized: bool = False, weighted: bool = False, F=None):
    """1 / (sum of distances to reachable vertices); 0 when nothing is reachable.

    The normalised form multiplies by N_q - 1, N_q the giant weak component size.
    """
    n = qd.n
    if n == 0:
        return np.zeros(0)
    d = _dist(qd, weighted, F)
    tot = np.where(np.isfinite(d), d, 0.0).sum(axis=1)
    cl = np.divide(1.0, tot, out=np.zeros(n), where=tot > 0)
    if normalized:
        cl = cl * (giant_component_size(qd) - 1)
    return cl


def q_harmonic(qd: QDigraph, weighted: bool = False, F=None) -> np.ndarray:
    n = qd.n
    if n == 0:
        return np.zeros(0)
    d = _dist(qd, weighted, F)
    with np.errstate(divide="ignore"):
        inv = np.where(np.isfinite(d) & (d > 0), 1.0 / d, 0.0)
    return inv.sum(axis=1)


def _brandes_unweighted(h: np.ndarray) -> np.ndarray:
    """Betweenness of all vertices, all sources at once, level by level."""
    n = h.shape[0]
    a = sparse.csr_matrix(h != 0, dtype=float)
    at = a.T.tocsr()
    d = _dist_unweighted(a)
    finite = np.isfinite(d)
    depth = int(d[finite].max()) if finite.any() else 0
    sigma = np.eye(n)
    for lev in range(1, depth + 1):
        prev = np.where(d == lev - 1, sigma, 0.0)
        sigma += np.where(d == lev, np.asarray((at @ prev.T).T), 0.0)
    delta = np.zeros((n, n))
    for lev in range(depth, 0, -1):
        x = np.divide(1.0 + delta, sigma, out=np.zeros((n, n)), where=(d == lev))
        y = np.asarray((a @ x.T).T)
        delta += np.where(d == lev - 1, sigma * y, 0.0)
    np.fill_diagonal(delta, 0.0)
    return delta.sum(axis=0)


def _dist_unweighted(a) -> np.ndarray:
    from scipy.sparse import csgraph

    return csgraph.shortest_path(a, method="D", directed=True, unweighted=True)


def _brandes_weighted(lengths: list[list[tuple[int, float]]], n: int, rtol: float = 1e-12) -> np.ndarray:
    bc = np.zeros(n)
    for s in range(n):
        dist = [np.inf] * n
        sig = [0.0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        order = []
        dist[s] = 0.0
        sig[s] = 1.0
        heap = [(0.0, s)]
        done = [False] * n
        while heap:
            dv, v = heapq.heappop(heap)
            if done[v]:
                continue
            done[v] = True
            order.append(v)
            for w, length in lengths[v]:
                nd = dv + length
                if nd < dist[w] - rtol * max(1.0, nd):
                    dist[w] = nd
                    sig[w] = sig[v]
                    preds[w] = [v]
                    heapq.heappush(heap, (nd, w))
                elif abs(nd - dist[w]) <= rtol * max(1.0, nd) and not done[w]:
                    sig[w] += sig[v]
                    preds[w].append(v)
        delta = [0.0] * n
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sig[v] / sig[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    return bc


def q_betweenness(qd: QDigraph, normalized: bool = False, weighted: bool = False, F=None):
    """Sum over ordered pairs of the fraction of shortest walks through each vertex."""
    n = qd.n
    if n == 0:
        return np.zeros(0)
    if weighted:
        r, c = np.nonzero(qd.matrix)
        w = qd.matrix[r, c]
        if F is None:
            if np.any(w <= 0):
                raise DomainError("nonpositive arc weight with length 1/w")
            F = inverse_weight
        ln = np.asarray(F(w), dtype=float)
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, x in zip(r.tolist(), c.tolist(), ln.tolist()):
            adj[u].append((v, x))
        bc = _brandes_weighted(adj, n)
    else:
        bc = _brandes_unweighted(qd.matrix)
    if normalized:
        nq = giant_component_size(qd)
        if nq < 3:
            return None
        bc = bc / ((nq - 1) * (nq - 2))
    return bc


def q_reaching(qd: QDigraph):
    """(local reaching centrality per vertex, global reaching centrality)."""
    n = qd.n
    if n < 2:
        return None, None
    d = _dist(qd)
    local = (np.isfinite(d) & _offdiag(n)).sum(axis=1) / (n - 1)
    grc = float((local.max() - local).sum() / (n - 1))
    return local, grc


def directed_triangles(qd: QDigraph) -> np.ndarray:
    s = qd.binary + qd.binary.T
    return 0.5 * np.diag(s @ s @ s)


def clustering_per_vertex(qd: QDigraph):
    """Per-vertex directed clustering and the number of vertices with zero denominator."""
    b = qd.binary
    t = directed_triangles(qd)
    tot = b.sum(axis=0) + b.sum(axis=1)
    mutual = np.diag(b @ b)
    den = tot * (tot - 1) - 2 * mutual
    c = np.divide(t, den, out=np.zeros(qd.n), where=den > 0)
    return c, int((den <= 0).sum())


def avg_q_clustering(qd: QDigraph) -> float:
    if qd.n == 0:
        return 0.0
    c, _ = clustering_per_vertex(qd)
    return float(c.mean())


def simplicial_q_clustering(
    qd: QDigraph, sigma, direction: Direction = Direction.PLUS, denominator: str = "sum"
) -> float:
    """Sum over the q-digraph star of sigma of (2^(1+f) - 1) / den.

    f is the dimension of the face shared with the neighbour tau; den is
    2^n + 2^m - 1 ("sum") or 2^(n+2m) - 1 ("product").
    """
    i = qd.index(sigma)
    b = qd.binary
    if direction is Direction.PLUS:
        nb = b[i] > 0
    elif direction is Direction.MINUS:
        nb = b[:, i] > 0
    else:
        nb = (b[i] > 0) & (b[:, i] > 0)
    s = qd.vertices[i]
    n = len(s) - 1
    total = 0.0
    for j in np.flatnonzero(nb):
        t = qd.vertices[j]
        m = len(t) - 1
        f = len(set(s) & set(t)) - 1
        if denominator == "sum":
            den = 2 ** n + 2 ** m - 1
        elif denominator == "product":
            den = 2 ** (n + 2 * m) - 1
        else:
            raise DomainError(f"unknown denominator form {denominator!r}")
        total += (2 ** (1 + f) - 1) / den
    return total


def q_rich_club(qd: QDigraph, k: int = 0, direction: str = "out") -> float | None:
    if k < 0:
        raise DomainError("rich-club threshold must be nonnegative")
    if direction == "out":
        deg = qd.out_degree()
    elif direction == "in":
        deg = qd.in_degree()
    else:
        raise DomainError(f"direction must be 'in' or 'out', got {direction!r}")
    rich = np.flatnonzero(deg > k)
    f = len(rich)
    if f < 2:
        return None
    e = qd.binary[np.ix_(rich, rich)].sum()
    return float(e / (f * (f - 1)))


def local_q_efficiency(qd: QDigraph, neighborhood: str = "union", weighted: bool = False, F=None) -> float:
    """Mean over vertices of the global efficiency of the neighbourhood subdigraph.

    "union" takes all in- and out-neighbours; "exclusive" drops the mutual ones.
    Neighbourhoods with fewer than two vertices contribute 0.
    """
    n = qd.n
    if n == 0:
        return 0.0
    b = qd.binary
    vals = []
    for i in range(n):
        out_nb, in_nb = b[i] > 0, b[:, i] > 0
        if neighborhood == "union":
            nb = out_nb | in_nb
        elif neighborhood == "exclusive":
            nb = (out_nb | in_nb) & ~(out_nb & in_nb)
        else:
            raise DomainError(f"unknown neighbourhood rule {neighborhood!r}")
        nb[i] = False
        idx = np.flatnonzero(nb)
        if len(idx) < 2:
            vals.append(0.0)
            continue
        vals.append(global_q_efficiency(qd.induced(idx), weighted, F))
    return float(np.mean(vals))


def q_energy(qd: QDigraph, weighted: bool = False) -> float:
    return float(linalg.singular_values(_matrix(qd, weighted)).sum())


def q_katz(qd: QDigraph, direction: str = "out", alpha: float | None = None, weighted: bool = False):
    if qd.n == 0:
        return np.zeros(0)
    return linalg.katz_solve(_matrix(qd, weighted), alpha, direction)


def q_eigenvector_centrality(qd: QDigraph, side: str = "right", weighted: bool = False):
    """Perron eigenvector (right: H v = l v, left: H^T v = l v); None if the spectral radius is 0."""
    if qd.n == 0:
        return None
    pair = linalg.dominant_eigenpair(_matrix(qd, weighted), side)
    return None if pair.degenerate else pair.vector


SCALARS = (
    "n_vertices", "n_arcs", "avg_walk_length", "diameter", "radius",
    "global_efficiency", "local_efficiency", "returnability", "relative_returnability",
    "global_reaching", "avg_clustering", "energy",
)
VERTEX_MEASURES = (
    "eccentricity", "in_degree_centrality", "out_degree_centrality", "closeness",
    "harmonic", "betweenness", "local_reaching", "in_katz", "out_katz",
    "right_eigenvector", "left_eigenvector", "out_simplicial_clustering",
    "in_simplicial_clustering",
)


@dataclass
class MeasureReport:
    q: int
    variant: str
    vertices: list[str]
    scalar_measures: dict[str, float | None] = field(default_factory=dict)
    vertex_measures: dict[str, list[float] | None] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def maxima(self) -> dict[str, float | None]:
        out = {}
        for name, vals in self.vertex_measures.items():
            out[name] = None if not vals else float(max(vals))
        return out


def _aslist(x):
    return None if x is None else [float(v) for v in np.asarray(x)]


def analyze(
    qd: QDigraph,
    measures: Sequence[str] | None = None,
    weighted: bool = False,
    F: Callable | None = None,
    katz_alpha: float | None = None,
    normalized: bool = False,
) -> MeasureReport:
    """Evaluate the selected measures (all by default) into a report."""
    wanted = set(measures) if measures is not None else set(SCALARS) | set(VERTEX_MEASURES)
    unknown = wanted - set(SCALARS) - set(VERTEX_MEASURES)
    if unknown:
        raise DomainError(f"unknown measures: {sorted(unknown)}")
    rep = MeasureReport(qd.q, qd.variant, qd.vertex_labels())
    rep.metadata.update(
        weighted=weighted,
        distance_length="1/w" if weighted and F is None else ("custom" if weighted else "hop count"),
        avg_walk_unreachable="counted as 0",
        efficiency_unreachable="1/inf = 0",
        eccentricity_unreachable="ignored",
        normalized_centralities=normalized,
    )
    rep.metadata.update(qd.meta)
    n = qd.n
    if n == 0:
        rep.flags.append("empty q-digraph")
    s, v = rep.scalar_measures, rep.vertex_measures
    dist_kw = dict(weighted=weighted, F=F)

    if "n_vertices" in wanted:
        s["n_vertices"] = n
    if "n_arcs" in wanted:
        s["n_arcs"] = len(qd.arcs)
    if "avg_walk_length" in wanted:
        s["avg_walk_length"] = avg_q_walk_length(qd, **dist_kw)
    if wanted & {"diameter", "radius", "eccentricity"}:
        ecc, diam, rad = q_eccentricity_profile(qd, **dist_kw)
        if n and not qd.matrix.any():
            rep.flags.append("no arcs: diameter and radius set to 0")
        s["diameter"], s["radius"] = diam, rad
        v["eccentricity"] = _aslist(ecc)
    if "global_efficiency" in wanted:
        s["global_efficiency"] = global_q_efficiency(qd, **dist_kw)
    if "local_efficiency" in wanted:
        s["local_efficiency"] = local_q_efficiency(qd, **dist_kw)
    if "returnability" in wanted:
        s["returnability"] = q_returnability(qd, weighted=weighted)
    if "relative_returnability" in wanted:
        s["relative_returnability"] = q_returnability(qd, relative=True, weighted=weighted)
        if s["relative_returnability"] is None:
            rep.flags.append("relative returnability undefined (zero denominator)")
    if wanted & {"global_reaching", "local_reaching"}:
        local, grc = q_reaching(qd)
        s["global_reaching"] = grc
        v["local_reaching"] = _aslist(local)
    if "avg_clustering" in wanted:
        s["avg_clustering"] = avg_q_clustering(qd)
        if n:
            skipped = clustering_per_vertex(qd)[1]
            if skipped:
                rep.flags.append(f"clustering: {skipped} vertices with zero denominator count as 0")
    if "energy" in wanted:
        s["energy"] = q_energy(qd, weighted)
    for direction in ("in", "out"):
        if f"{direction}_degree_centrality" in wanted:
            v[f"{direction}_degree_centrality"] = _aslist(q_degree_centrality(qd, direction, weighted))
    if "closeness" in wanted:
        v["closeness"] = _aslist(q_closeness(qd, normalized, **dist_kw))
        if n > 1 and len(digraph_components(qd.matrix, "weak")) > 1:
            rep.flags.append("closeness/betweenness on a q-digraph that is not weakly connected")
    if "harmonic" in wanted:
        v["harmonic"] = _aslist(q_harmonic(qd, **dist_kw))
    if "betweenness" in wanted:
        v["betweenness"] = _aslist(q_betweenness(qd, normalized, **dist_kw))
    if wanted & {"in_katz", "out_katz"} and n:
        h = _matrix(qd, weighted)
        alpha = katz_alpha if katz_alpha is not None else linalg.default_katz_alpha(h)
        rep.metadata["katz_alpha"] = alpha
        for direction in ("in", "out"):
            if f"{direction}_katz" in wanted:
                v[f"{direction}_katz"] = _aslist(q_katz(qd, direction, alpha, weighted))
    for side in ("right", "left"):
        if f"{side}_eigenvector" in wanted:
            vec = q_eigenvector_centrality(qd, side, weighted) if n else None
            v[f"{side}_eigenvector"] = _aslist(vec)
            if vec is None and n:
                rep.flags.append(f"{side} eigenvector centrality degenerate (spectral radius 0)")
    for direction, flag in (("out", Direction.PLUS), ("in", Direction.MINUS)):
        name = f"{direction}_simplicial_clustering"
        if name in wanted and qd.q >= 0:
            v[name] = [simplicial_q_clustering(qd, t, flag) for t in qd.vertices]
    return rep
