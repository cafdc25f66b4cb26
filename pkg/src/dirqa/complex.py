"""Directed flag complexes: clique enumeration, face maps, maximal simplices."""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .digraph import Digraph, node_weights
from .errors import DomainError

Simplex = tuple[int, ...]

# above this many vertices an explicit dimension cap is expected
UNBOUNDED_VERTEX_LIMIT = 64


def face(s: Sequence[int], i: int) -> Simplex:
    """i-th face map; indices at or beyond the last position delete the last vertex."""
    n = len(s) - 1
    if n < 1:
        raise DomainError("a 0-simplex has no faces")
    if i < 0:
        raise DomainError("face index must be nonnegative")
    i = min(i, n)
    return tuple(s[:i]) + tuple(s[i + 1:])


def is_subsequence(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if a appears in b in the same relative order."""
    it = iter(b)
    return all(x in it for x in a)


def enumerate_directed_cliques(g: Digraph, d_max: int | None = None) -> list[list[Simplex]]:
    """Directed (k+1)-cliques grouped by k, each level sorted lexicographically.

    A clique [v0..vk] is extended by w only when w is an out-neighbour of every
    current vertex, so each clique is produced once in source-to-sink order.
    """
    out_sets = [frozenset(a) for a in g.out_adj]
    levels: list[list[Simplex]] = [[(v,) for v in range(g.n)]]
    if d_max == 0:
        return levels if g.n else []
    stack = [((v,), out_sets[v]) for v in range(g.n - 1, -1, -1)]
    found: dict[int, list[Simplex]] = {}
    while stack:
        s, cand = stack.pop()
        if d_max is not None and len(s) > d_max:
            continue
        for w in sorted(cand):
            t = s + (w,)
            found.setdefault(len(t) - 1, []).append(t)
            nxt = cand & out_sets[w]
            if nxt:
                stack.append((t, nxt))
    for k in range(1, max(found, default=0) + 1):
        levels.append(sorted(found[k]))
    return levels if g.n else []


class DirectedFlagComplex:
    """All directed cliques of a digraph, interned with integer ids.

    Ids run through dimension 0, then 1, ..., lexicographic inside a level.
    When `d_max` truncates the enumeration, top-level simplices count as
    maximal within the stored complex.
    """

    def __init__(self, source: Digraph, levels: list[list[Simplex]], d_max: int | None = None):
        self.source = source
        self.levels = levels
        self.d_max = d_max
        self.simplices: list[Simplex] = [s for lvl in levels for s in lvl]
        self.index = {s: i for i, s in enumerate(self.simplices)}
        self._cofacets: list[list[int]] | None = None
        maximal = np.ones(len(self.simplices), dtype=bool)
        for lvl in levels[1:]:
            for s in lvl:
                for i in range(len(s)):
                    maximal[self.index[s[:i] + s[i + 1:]]] = False
        self.maximal = maximal
        self.weights: np.ndarray | None = None
        if source.weighted:
            nw = node_weights(source)
            self.weights = np.array([float(np.prod(nw[list(s)])) for s in self.simplices])

    @property
    def dim(self) -> int:
        return len(self.levels) - 1

    @property
    def truncated(self) -> bool:
        return self.d_max is not None and self.dim == self.d_max

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.index

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.simplices)

    def counts(self) -> list[int]:
        return [len(lvl) for lvl in self.levels]

    def id_of(self, s: Sequence[int]) -> int:
        try:
            return self.index[tuple(s)]
        except KeyError:
            raise DomainError(f"{list(s)} is not a simplex of the complex") from None

    def is_maximal(self, s: Sequence[int]) -> bool:
        return bool(self.maximal[self.id_of(s)])

    def maximal_simplices(self, q: int = 0) -> list[Simplex]:
        """Maximal simplices of dimension >= q in lexicographic order."""
        if q < 0 or q > self.dim:
            return []
        out = [s for s, m in zip(self.simplices, self.maximal) if m and len(s) - 1 >= q]
        return sorted(out)

    def vertex_set_maximal_simplices(self, q: int = 0) -> list[Simplex]:
        """Simplices of dimension >= q whose vertex set lies in no larger simplex.

        Without double edges this equals maximal_simplices(q).
        """
        if q < 0 or q > self.dim:
            return []
        covered: set[frozenset] = set()
        for lvl in self.levels[1:]:
            for t in lvl:
                st = frozenset(t)
                covered.update(st - {v} for v in t)
        out = [s for s in self.simplices if len(s) - 1 >= q and frozenset(s) not in covered]
        return sorted(out)

    def simplex_weight(self, s: Sequence[int]) -> float:
        i = self.id_of(s)
        if self.weights is None:
            raise DomainError("complex was built from an unweighted digraph")
        return float(self.weights[i])

    def cofacets(self, s: Sequence[int]) -> list[Simplex]:
        """Simplices of dimension dim(s)+1 having s as a face."""
        if self._cofacets is None:
            cof: list[list[int]] = [[] for _ in self.simplices]
            for lvl in self.levels[1:]:
                for t in lvl:
                    tid = self.index[t]
                    for i in range(len(t)):
                        cof[self.index[t[:i] + t[i + 1:]]].append(tid)
            self._cofacets = cof
        return [self.simplices[j] for j in self._cofacets[self.id_of(s)]]

    def cofaces(self, s: Sequence[int], dim: int | None = None) -> list[Simplex]:
        """Proper cofaces of s, all dimensions or only the given one."""
        out: list[Simplex] = []
        frontier = [tuple(s)]
        d = len(s) - 1
        while frontier and (dim is None or d < dim):
            nxt = sorted({c for f in frontier for c in self.cofacets(f)})
            d += 1
            if dim is None or d == dim:
                out.extend(nxt)
            frontier = nxt
        return out


def build_dfc(g: Digraph, d_max: int | None = None, *, allow_unbounded: bool = False) -> DirectedFlagComplex:
    if d_max is not None and d_max < 0:
        raise DomainError("d_max must be nonnegative")
    if d_max is None and g.n > UNBOUNDED_VERTEX_LIMIT and not allow_unbounded:
        raise DomainError(
            f"digraph has {g.n} vertices; pass an explicit d_max or allow_unbounded=True"
        )
    return DirectedFlagComplex(g, enumerate_directed_cliques(g, d_max), d_max)
