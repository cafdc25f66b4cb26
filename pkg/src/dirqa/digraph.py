"""Digraphs, degrees, edge-list parsing and double-edge preprocessing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, ParseError

Arc = tuple[int, int]


@dataclass(frozen=True)
class DegreeProfile:
    in_deg: int
    out_deg: int
    in_w: float
    out_w: float


@dataclass(frozen=True, eq=False)
class Digraph:
    """Loop-free digraph on vertices 0..n-1, optionally arc-weighted.

    `labels[v]` is the token that vertex v had in the source file. Double
    edges (both (u,v) and (v,u)) are allowed at this layer.
    """

    n: int
    arcs: frozenset[Arc]
    weights: Mapping[Arc, float] | None = None
    labels: tuple[str, ...] = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("vertex count must be nonnegative")
        for u, v in self.arcs:
            if u == v:
                raise DomainError(f"self-loop ({u},{u}) not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"arc ({u},{v}) has a vertex outside 0..{self.n - 1}")
        if self.weights is not None:
            if set(self.weights) != set(self.arcs):
                raise DomainError("weights must be given for exactly the arcs")
            for a, w in self.weights.items():
                if not w >= 0:
                    raise DomainError(f"negative weight {w} on arc {a}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(v) for v in range(self.n)))
        elif len(self.labels) != self.n:
            raise DomainError("label map length differs from vertex count")
        out_adj = [[] for _ in range(self.n)]
        in_adj = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out_adj[u].append(v)
            in_adj[v].append(u)
        object.__setattr__(self, "out_adj", tuple(tuple(sorted(a)) for a in out_adj))
        object.__setattr__(self, "in_adj", tuple(tuple(sorted(a)) for a in in_adj))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc], weights=None, labels=()) -> "Digraph":
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        if weights is not None:
            weights = {(int(u), int(v)): float(w) for (u, v), w in dict(weights).items()}
        return cls(n, arcs, weights, tuple(labels))

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def weight(self, u: int, v: int) -> float:
        if (u, v) not in self.arcs:
            raise DomainError(f"({u},{v}) is not an arc")
        return 1.0 if self.weights is None else self.weights[(u, v)]

    def double_edges(self) -> list[Arc]:
        """Unordered double-edge pairs as (u,v) with u < v."""
        return sorted((u, v) for u, v in self.arcs if u < v and (v, u) in self.arcs)

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.in_adj[v] and self.out_adj[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if self.in_adj[v] and not self.out_adj[v]]

    def summary(self) -> dict:
        return {
            "n": self.n,
            "m": self.n_arcs,
            "double_edges": len(self.double_edges()),
            "sources": len(self.sources()),
            "sinks": len(self.sinks()),
        }


def degree_profile(g: Digraph, v: int) -> DegreeProfile:
    if not 0 <= v < g.n:
        raise DomainError(f"vertex {v} out of range 0..{g.n - 1}")
    ins, outs = g.in_adj[v], g.out_adj[v]
    if g.weights is None:
        return DegreeProfile(len(ins), len(outs), float(len(ins)), float(len(outs)))
    in_w = float(sum(g.weights[(u, v)] for u in ins))
    out_w = float(sum(g.weights[(v, w)] for w in outs))
    return DegreeProfile(len(ins), len(outs), in_w, out_w)


def node_weight(g: Digraph, v: int) -> float:
    """max(weighted in-degree, weighted out-degree)."""
    d = degree_profile(g, v)
    return max(d.in_w, d.out_w)


def node_weights(g: Digraph) -> np.ndarray:
    return np.array([node_weight(g, v) for v in range(g.n)], dtype=float)


def adjacency_matrix(g: Digraph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.arcs:
        a[u, v] = 1.0 if g.weights is None else g.weights[(u, v)]
    return a


def underlying_graph(g: Digraph) -> Digraph:
    arcs = set(g.arcs) | {(v, u) for u, v in g.arcs}
    return Digraph(g.n, frozenset(arcs), None, g.labels)


def with_arcs(g: Digraph, arcs: Iterable[Arc]) -> Digraph:
    """Same vertex set and labels, new arc set (weights kept where present)."""
    arcs = frozenset(arcs)
    weights = None if g.weights is None else {a: g.weights[a] for a in arcs}
    return Digraph(g.n, arcs, weights, g.labels)


def parse_edge_list(text: str | bytes, weighted: bool = False, allow_empty: bool = False) -> Digraph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    ids: dict[str, int] = {}
    arcs: dict[Arc, float] = {}
    filled = False

    def vid(tok: str) -> int:
        if tok not in ids:
            ids[tok] = len(ids)
        return ids[tok]

    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(toks) not in (2, 3):
            raise ParseError(f"expected 'u v' or 'u v w', got {s!r}", lineno)
        w = 1.0
        if len(toks) == 3:
            try:
                w = float(toks[2])
            except ValueError:
                raise ParseError(f"weight {toks[2]!r} is not a number", lineno) from None
            if not np.isfinite(w):
                raise ParseError(f"weight {toks[2]!r} is not finite", lineno)
            if w < 0:
                raise DomainError(f"line {lineno}: negative weight {w}")
        elif weighted:
            filled = True
        if toks[0] == toks[1]:
            raise DomainError(f"line {lineno}: self-loop on {toks[0]!r}")
        a = (vid(toks[0]), vid(toks[1]))
        arcs.setdefault(a, w)
    if not arcs and not allow_empty:
        raise ParseError("edge list contains no arcs")
    labels = tuple(ids)
    g = Digraph(len(ids), frozenset(arcs), dict(arcs) if weighted else None, labels)
    if filled:
        g.meta["uniform_weights_filled"] = True
    return g


def format_edge_list(g: Digraph) -> str:
    lines = []
    for u, v in sorted(g.arcs):
        if g.weights is None:
            lines.append(f"{g.labels[u]} {g.labels[v]}")
        else:
            lines.append(f"{g.labels[u]} {g.labels[v]} {g.weights[(u, v)]!r}")
    return "\n".join(lines) + "\n"


def _maximal_clique_arc_counts(g: Digraph) -> dict[Arc, int]:
    from .complex import build_dfc

    dfc = build_dfc(g, allow_unbounded=True)
    counts: dict[Arc, int] = {}
    for s in dfc.maximal_simplices(0):
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                a = (s[i], s[j])
                counts[a] = counts.get(a, 0) + 1
    return counts


def remove_double_edges(g: Digraph, policy: str = "clique-preserving") -> Digraph:
    """Break every double edge.

    clique-preserving removes the direction contained in fewer maximal
    directed cliques (ties remove the arc whose source id is larger);
    keep-lower-source always keeps the arc leaving the smaller id;
    drop-both removes both arcs.
    """
    pairs = g.double_edges()
    if not pairs:
        return g
    arcs = set(g.arcs)
    if policy == "drop-both":
        for u, v in pairs:
            arcs -= {(u, v), (v, u)}
    elif policy == "keep-lower-source":
        for u, v in pairs:
            arcs.discard((v, u))
    elif policy == "clique-preserving":
        counts = _maximal_clique_arc_counts(g)
        for u, v in pairs:
            cu, cv = counts.get((u, v), 0), counts.get((v, u), 0)
            # u < v, so on a tie the arc leaving v goes
            arcs.discard((u, v) if cu < cv else (v, u))
    else:
        raise DomainError(f"unknown double-edge policy {policy!r}")
    out = with_arcs(g, arcs)
    out.meta["double_edges_removed"] = len(pairs)
    out.meta["double_edge_policy"] = policy
    return out
