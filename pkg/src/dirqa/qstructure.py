"""q-digraphs, q-distances, q-components, structure vectors, stars and links."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .complex import DirectedFlagComplex, Simplex
from .errors import DomainError
from .relations import (
    Direction,
    _lower,
    general_q_adjacent,
    lower_q_near,
    maximal_q_adjacent,
    strictly_lower_q_adjacent,
    strictly_upper_p_adjacent,
    upper_p_adjacent,
)

VARIANTS = ("maximal", "lower")
MAX_ALL_SIMPLICES = 200_000
PAIR_CHUNK = 100_000


@dataclass
class QDigraph:
    """Digraph on the maximal simplices of dimension >= q.

    `matrix` holds 0/1 entries, or the source simplex weight on each arc
    when weighted. Vertex i is `vertices[i]`, lexicographically ordered.
    """

    q: int
    variant: str
    vertices: list[Simplex]
    matrix: np.ndarray
    weights: np.ndarray | None = None
    labels: tuple[str, ...] = ()
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def binary(self) -> np.ndarray:
        return (self.matrix != 0).astype(float)

    @property
    def arcs(self) -> set[tuple[int, int]]:
        r, c = np.nonzero(self.matrix)
        return set(zip(r.tolist(), c.tolist()))

    def index(self, s: Sequence[int]) -> int:
        try:
            return self.vertices.index(tuple(s))
        except ValueError:
            raise DomainError(f"{list(s)} is not a vertex of the q-digraph") from None

    def out_degree(self, weighted: bool = False) -> np.ndarray:
        return (self.matrix if weighted else self.binary).sum(axis=1)

    def in_degree(self, weighted: bool = False) -> np.ndarray:
        return (self.matrix if weighted else self.binary).sum(axis=0)

    def induced(self, keep: Sequence[int]) -> "QDigraph":
        keep = list(keep)
        w = None if self.weights is None else self.weights[keep]
        return QDigraph(
            self.q, self.variant, [self.vertices[i] for i in keep],
            self.matrix[np.ix_(keep, keep)].copy(), w, self.labels, dict(self.meta),
        )

    def vertex_labels(self) -> list[str]:
        if self.labels:
            return ["[" + ",".join(self.labels[v] for v in s) + "]" for s in self.vertices]
        return ["[" + ",".join(map(str, s)) + "]" for s in self.vertices]


def from_matrix(matrix, q: int = -1, variant: str = "digraph", vertices=None) -> QDigraph:
    """Wrap a plain adjacency matrix so the measures can run on it."""
    m = np.asarray(matrix, dtype=float).copy()
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("adjacency matrix must be square")
    np.fill_diagonal(m, 0.0)
    if vertices is None:
        vertices = [(i,) for i in range(m.shape[0])]
    return QDigraph(q, variant, list(vertices), m)


def _padded(simplices: Sequence[Simplex]) -> tuple[np.ndarray, np.ndarray]:
    k = max((len(s) for s in simplices), default=1)
    arr = np.full((len(simplices), k), -1, dtype=np.int64)
    for r, s in enumerate(simplices):
        arr[r, : len(s)] = s
    return arr, np.array([len(s) for s in simplices], dtype=np.int64)


def _candidate_pairs(simplices: Sequence[Simplex], n_vertices: int, min_shared: int):
    """Ordered pairs (a, b), a != b, sharing at least min_shared vertices."""
    if len(simplices) < 2:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    rows = np.repeat(np.arange(len(simplices)), [len(s) for s in simplices])
    cols = np.concatenate([np.asarray(s, dtype=np.int64) for s in simplices])
    inc = sparse.csr_matrix(
        (np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(len(simplices), n_vertices)
    )
    shared = (inc @ inc.T).tocoo()
    keep = (shared.row != shared.col) & (shared.data >= min_shared)
    return shared.row[keep].astype(np.int64), shared.col[keep].astype(np.int64)


def _face_of(eq: np.ndarray, in_other: np.ndarray, shared: np.ndarray, length: np.ndarray) -> np.ndarray:
    """Rows where every vertex of the first simplex occurs, in order, in the second."""
    pos = np.where(in_other, eq.argmax(axis=2), -1)
    steps = np.diff(pos, axis=1) > 0
    inside = np.arange(steps.shape[1])[None, :] < (length - 1)[:, None]
    return (shared == length) & (steps | ~inside).all(axis=1)


def _pair_flags(arr: np.ndarray, lens: np.ndarray, a: np.ndarray, b: np.ndarray, q: int):
    """Vectorised lower nearness with shared faces read as common vertex subsets.

    Nesting is the ordered face relation. Exact for double-edge-free
    complexes, where a vertex subset of a simplex determines its face.
    Returns (minus, plus, near_next) boolean arrays, near_next meaning
    (q+1)-near in some direction.
    """
    k = arr.shape[1]
    ii, jj = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    minus = np.zeros(len(a), dtype=bool)
    plus = np.zeros(len(a), dtype=bool)
    near_next = np.zeros(len(a), dtype=bool)
    for lo in range(0, len(a), PAIR_CHUNK):
        sa, sb = arr[a[lo:lo + PAIR_CHUNK]], arr[b[lo:lo + PAIR_CHUNK]]
        la, lb = lens[a[lo:lo + PAIR_CHUNK]], lens[b[lo:lo + PAIR_CHUNK]]
        eq = (sa[:, :, None] == sb[:, None, :]) & (sa[:, :, None] >= 0)
        in_b = eq.any(axis=2)
        in_a = eq.any(axis=1)
        shared = in_b.sum(axis=1)
        removed = in_b[:, :, None].astype(np.int64) + in_a[:, None, :] - eq
        cnt = shared[:, None, None] - removed
        valid = (ii[None] < la[:, None, None]) & (jj[None] < lb[:, None, None])
        ok = valid & (cnt >= q + 1)
        nested = _face_of(eq, in_b, shared, la) | _face_of(eq.transpose(0, 2, 1), in_a, in_a.sum(axis=1), lb)
        room = np.minimum(la, lb) - 1 >= q + 1
        minus[lo:lo + PAIR_CHUNK] = nested | (ok & (ii >= jj)[None]).any(axis=(1, 2))
        plus[lo:lo + PAIR_CHUNK] = nested | (ok & (ii <= jj)[None]).any(axis=(1, 2))
        near_next[lo:lo + PAIR_CHUNK] = room & (nested | (valid & (cnt >= q + 2)).any(axis=(1, 2)))
    return minus, plus, near_next


DOUBLE_EDGE_MODES = ("reject", "ordered", "vertex-set")


def build_q_digraph(
    dfc: DirectedFlagComplex,
    q: int,
    variant: str = "maximal",
    weighted: bool = False,
    limit: int | None = None,
    double_edges: str = "reject",
) -> QDigraph:
    """q-digraph of the complex.

    maximal: arc s -> t iff s is strictly lower (+)-q-adjacent to t, which on
    maximal simplices is the same as maximal (+)-q-adjacency.
    lower: arc s -> t iff s is lower (+)-q-near to t.
    `limit` keeps only the first `limit` vertices (lexicographic order).

    Complexes of digraphs with double edges are rejected unless
    `double_edges` picks a reading: "ordered" compares faces as ordered
    subsequences; "vertex-set" compares vertex sets, both for shared faces
    and for maximality.
    """
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    if double_edges not in DOUBLE_EDGE_MODES:
        raise DomainError(f"unknown double-edge mode {double_edges!r}")
    src = dfc.source
    doubles = src.double_edges()
    if doubles and double_edges == "reject":
        u, v = doubles[0]
        raise DomainError(
            f"q-digraphs need a digraph without double edges; found {len(doubles)}, "
            f"e.g. ({src.labels[u]},{src.labels[v]})"
        )
    if weighted and dfc.weights is None:
        raise DomainError("weighted q-digraph needs a weighted source digraph")
    if q < 0:
        raise DomainError("q must be nonnegative")
    ordered = bool(doubles) and double_edges == "ordered"
    if doubles and double_edges == "vertex-set":
        verts = dfc.vertex_set_maximal_simplices(q)
    else:
        verts = dfc.maximal_simplices(q)
    meta = {}
    if doubles:
        meta.update(double_edges=len(doubles), double_edge_mode=double_edges)
    if q > dfc.dim:
        meta["empty_reason"] = f"q={q} exceeds complex dimension {dfc.dim}"
    if limit is not None and len(verts) > limit:
        meta["truncated_from"] = len(verts)
        verts = verts[:limit]
    n = len(verts)
    h = np.zeros((n, n))
    w = None
    if weighted:
        w = np.array([dfc.simplex_weight(s) for s in verts])
    if n > 1:
        a, b = _candidate_pairs(verts, src.n, q + 1)
        if ordered:
            rel = strictly_lower_q_adjacent if variant == "maximal" else lower_q_near
            arc = np.array(
                [Direction.PLUS in rel(verts[x], verts[y], q) for x, y in zip(a, b)], dtype=bool
            )
        else:
            arr, lens = _padded(verts)
            _, plus, near_next = _pair_flags(arr, lens, a, b, q)
            arc = plus & ~near_next if variant == "maximal" else plus
        a, b = a[arc], b[arc]
        h[a, b] = 1.0 if w is None else w[a]
    return QDigraph(q, variant, verts, h, w, src.labels, meta)


def build_q_digraph_reference(dfc: DirectedFlagComplex, q: int, variant: str = "maximal") -> QDigraph:
    """Pairwise construction from the relation functions (slow, for checking)."""
    verts = dfc.maximal_simplices(q)
    n = len(verts)
    h = np.zeros((n, n))
    rel = maximal_q_adjacent if variant == "maximal" else None
    for i, s in enumerate(verts):
        for j, t in enumerate(verts):
            if i == j:
                continue
            d = rel(dfc, s, t, q) if rel else lower_q_near(s, t, q)
            if Direction.PLUS in d:
                h[i, j] = 1.0
    return QDigraph(q, variant, verts, h, None, dfc.source.labels)


def inverse_weight(w: np.ndarray) -> np.ndarray:
    return 1.0 / w


def q_distance_matrix(
    qd: QDigraph, weighted: bool = False, F: Callable[[np.ndarray], np.ndarray] | None = None
) -> np.ndarray:
    """Shortest directed q-walk lengths; inf where unreachable, 0 on the diagonal.

    Weighted lengths are F(w) of each arc weight, default 1/w.
    """
    n = qd.n
    if n == 0:
        return np.zeros((0, 0))
    r, c = np.nonzero(qd.matrix)
    if not weighted:
        g = sparse.csr_matrix((np.ones(len(r)), (r, c)), shape=(n, n))
        return csgraph.shortest_path(g, method="D", directed=True, unweighted=True)
    w = qd.matrix[r, c]
    if F is None:
        if np.any(w <= 0):
            raise DomainError("nonpositive arc weight with length 1/w")
        F = inverse_weight
    lengths = np.asarray(F(w), dtype=float)
    if np.any(~np.isfinite(lengths)) or np.any(lengths <= 0):
        raise DomainError("arc lengths must be finite and positive")
    g = sparse.csr_matrix((lengths, (r, c)), shape=(n, n))
    return csgraph.shortest_path(g, method="D", directed=True)


def _labels_to_partition(labels: np.ndarray) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, []).append(i)
    return sorted(groups.values())


def digraph_components(matrix: np.ndarray, mode: str = "weak") -> list[list[int]]:
    if mode not in ("weak", "strong"):
        raise DomainError(f"unknown component mode {mode!r}")
    n = matrix.shape[0]
    if n == 0:
        return []
    _, labels = csgraph.connected_components(
        sparse.csr_matrix(matrix != 0), directed=True, connection=mode
    )
    return _labels_to_partition(labels)


def _all_simplices_components(
    dfc: DirectedFlagComplex, q: int, mode: str, allow_large: bool
) -> list[list[Simplex]]:
    """Components of lower q-nearness over all simplices of dimension >= q."""
    simp = [s for s in dfc.simplices if len(s) - 1 >= q]
    if len(simp) > MAX_ALL_SIMPLICES and not allow_large:
        raise DomainError(
            f"{len(simp)} simplices exceed the all-simplices limit; pass allow_large=True"
        )
    idx = {s: i for i, s in enumerate(simp)}
    buckets: dict[Simplex, list[int]] = {}
    for s in simp:
        for alpha in combinations(s, q + 1):
            buckets.setdefault(alpha, []).append(idx[s])
    rows, cols = [], []
    for members in buckets.values():
        if mode == "weak":
            rows.extend(members[:-1])
            cols.extend(members[1:])
            continue
        for x in members:
            for y in members:
                if x != y and Direction.PLUS in _lower(simp[x], simp[y], q):
                    rows.append(x)
                    cols.append(y)
    n = len(simp)
    if n == 0:
        return []
    g = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, labels = csgraph.connected_components(g, directed=True, connection=mode)
    return [[simp[i] for i in part] for part in _labels_to_partition(labels)]


def q_components(
    obj: QDigraph | DirectedFlagComplex,
    q: int | None = None,
    mode: str = "weak",
    scope: str = "maximal-simplices",
    variant: str = "maximal",
    allow_large: bool = False,
) -> list[list[Simplex]]:
    """Weak or strong q-components as lists of simplices."""
    if isinstance(obj, QDigraph):
        parts = digraph_components(obj.matrix, mode)
        return [[obj.vertices[i] for i in p] for p in parts]
    if q is None:
        raise DomainError("q is required when passing a complex")
    if scope == "maximal-simplices":
        qd = build_q_digraph(obj, q, variant)
        return q_components(qd, mode=mode)
    if scope == "all-simplices":
        if mode not in ("weak", "strong"):
            raise DomainError(f"unknown component mode {mode!r}")
        return _all_simplices_components(obj, q, mode, allow_large)
    raise DomainError(f"unknown scope {scope!r}")


@dataclass
class StructureVectors:
    str1: list[int]
    str2: list[int]
    str3: list[int]
    str4: list[float]
    str5: list[float]
    flags: list[str] = field(default_factory=list)

    def vector(self, k: int) -> list[float]:
        if k not in (1, 2, 3, 4, 5):
            raise DomainError("structure vector index must be in 1..5")
        return list(getattr(self, f"str{k}"))


def structure_vectors(
    dfc: DirectedFlagComplex,
    scope: str = "all-simplices",
    variant: str = "maximal",
    allow_large: bool = False,
) -> StructureVectors:
    """Str1..Str5 for every level 0..dim.

    Str2/Str3 count weak/strong q-components; Str4 = 1 - Str2/Str1 and
    Str5 = 1 - Str3/Str1.
    """
    str1 = dfc.counts()
    str2, str3, str4, str5, flags = [], [], [], [], []
    for q, s1 in enumerate(str1):
        kw = dict(scope=scope, variant=variant, allow_large=allow_large)
        w = len(q_components(dfc, q, "weak", **kw))
        s = len(q_components(dfc, q, "strong", **kw))
        str2.append(w)
        str3.append(s)
        if s1 > 0:
            str4.append(1.0 - w / s1)
            str5.append(1.0 - s / s1)
        else:
            str4.append(0.0)
            str5.append(0.0)
            flags.append(f"str1 is zero at q={q}")
    return StructureVectors(str1, str2, str3, str4, str5, flags)


STAR_KINDS = ("lower", "strict-lower", "upper", "strict-upper", "general", "maximal")


def _relation(dfc, kind: str, s: Simplex, t: Simplex, q: int) -> frozenset:
    if kind == "lower":
        return lower_q_near(s, t, q)
    if kind == "strict-lower":
        return strictly_lower_q_adjacent(s, t, q)
    if kind == "upper":
        return upper_p_adjacent(dfc, s, t, q)
    if kind == "strict-upper":
        return strictly_upper_p_adjacent(dfc, s, t, q)
    if kind == "general":
        return general_q_adjacent(dfc, s, t, q)
    return maximal_q_adjacent(dfc, s, t, q)


def q_star(
    dfc: DirectedFlagComplex,
    sigma: Sequence[int],
    kind: str,
    direction: Direction,
    q: int,
) -> list[Simplex]:
    """Simplices standing in the given relation and direction to sigma.

    For the upper kinds q plays the role of p and must exceed dim sigma.
    Only the lower kind lists sigma itself.
    """
    sigma = tuple(sigma)
    dfc.id_of(sigma)
    if kind not in STAR_KINDS:
        raise DomainError(f"unknown star kind {kind!r}")
    n = len(sigma) - 1
    upper = kind in ("upper", "strict-upper")
    if upper and not n < q <= dfc.dim:
        raise DomainError(f"upper stars need dim sigma < p <= {dfc.dim}")
    if not upper and not 0 <= q <= n:
        raise DomainError(f"lower stars need 0 <= q <= dim sigma = {n}")
    out = []
    for t in dfc.simplices:
        m = len(t) - 1
        if (upper and m >= q) or (not upper and m < q):
            continue
        if t == sigma and kind != "lower":
            continue
        if direction in _relation(dfc, kind, sigma, t, q):
            out.append(t)
    return out


def q_degree(
    obj: QDigraph | DirectedFlagComplex,
    sigma: Sequence[int],
    kind: str = "maximal",
    direction: Direction = Direction.PLUS,
    q: int | None = None,
    weighted: bool = False,
) -> float:
    """Star size on a complex, or row/column sum on a q-digraph.

    On a q-digraph PLUS is the out-degree (row sum), MINUS the in-degree
    (column sum) and PM counts the mutual neighbours.
    """
    if isinstance(obj, QDigraph):
        i = obj.index(sigma)
        m = obj.matrix if weighted else obj.binary
        if direction is Direction.PLUS:
            return float(m[i].sum())
        if direction is Direction.MINUS:
            return float(m[:, i].sum())
        b = obj.binary
        mutual = (b[i] > 0) & (b[:, i] > 0)
        return float(m[i, mutual].sum())
    if weighted:
        raise DomainError("weighted degrees are defined on q-digraphs")
    if q is None:
        raise DomainError("q is required when passing a complex")
    return float(len(q_star(obj, sigma, kind, direction, q)))


def hub(family: Iterable[Sequence[int]]) -> Simplex:
    """Vertices common to every member, in the order of the first member."""
    family = [tuple(s) for s in family]
    if not family:
        raise DomainError("hub of an empty family")
    common = set(family[0]).intersection(*map(set, family[1:]))
    return tuple(v for v in family[0] if v in common)


def links(dfc: DirectedFlagComplex, sigma: Sequence[int]) -> tuple[list[Simplex], list[Simplex]]:
    """(in_link, out_link): simplices disjoint from sigma that complete it to a coface."""
    sigma = tuple(sigma)
    dfc.id_of(sigma)
    sset = set(sigma)
    in_link, out_link = [], []
    for theta in dfc.cofaces(sigma):
        tau = tuple(v for v in theta if v not in sset)
        d = upper_p_adjacent(dfc, sigma, tau, len(theta) - 1)
        if Direction.MINUS in d:
            in_link.append(tau)
        if Direction.PLUS in d:
            out_link.append(tau)
    return sorted(in_link), sorted(out_link)
