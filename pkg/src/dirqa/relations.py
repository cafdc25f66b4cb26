"""Directed higher-order adjacency relations between simplices.

All functions return a frozenset of Direction values. PM is present exactly
when both MINUS and PLUS are. The PLUS direction is the one that becomes an
arc sigma -> tau in a q-digraph.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .complex import DirectedFlagComplex, Simplex, is_subsequence
from .errors import DomainError


class Direction(Enum):
    MINUS = "-"
    PLUS = "+"
    PM = "±"


NONE: frozenset = frozenset()
ALL = frozenset({Direction.MINUS, Direction.PLUS, Direction.PM})


def _flags(minus: bool, plus: bool) -> frozenset:
    if minus and plus:
        return ALL
    if minus:
        return frozenset({Direction.MINUS})
    if plus:
        return frozenset({Direction.PLUS})
    return NONE


def _common_len(a: Sequence[int], b: Sequence[int]) -> int:
    """Length of the longest common subsequence (a shared face has this many vertices)."""
    bs = set(b)
    shared_a = [x for x in a if x in bs]
    shared_b = [x for x in b if x in set(shared_a)]
    if shared_a == shared_b:
        return len(shared_a)
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def _check_level(sigma, tau, q: int) -> None:
    if q < 0 or q > min(len(sigma), len(tau)) - 1:
        raise DomainError(f"q={q} outside 0..min(dim sigma, dim tau)")


def _set_common_len(a: Sequence[int], b: Sequence[int]) -> int:
    return len(set(a) & set(b))


def _lower(sigma: Sequence[int], tau: Sequence[int], q: int, vertex_sets: bool = False) -> frozenset:
    if is_subsequence(sigma, tau) or is_subsequence(tau, sigma):
        return ALL
    common = _set_common_len if vertex_sets else _common_len
    if common(sigma, tau) < q + 1:
        return NONE
    minus = plus = False
    n, m = len(sigma), len(tau)
    for i in range(n):
        fs = sigma[:i] + sigma[i + 1:]
        for j in range(m):
            if (i >= j and not minus) or (i <= j and not plus):
                if common(fs, tau[:j] + tau[j + 1:]) >= q + 1:
                    minus |= i >= j
                    plus |= i <= j
        if minus and plus:
            break
    return _flags(minus, plus)


def lower_q_near(sigma: Sequence[int], tau: Sequence[int], q: int, vertex_sets: bool = False) -> frozenset:
    """Directions in which sigma and tau share a q-face through face maps.

    MINUS needs faces d_i(sigma), d_j(tau) sharing a q-simplex with i >= j;
    PLUS the same with i <= j. Nested simplices count in every direction.
    A shared face is a common ordered subsequence, or with vertex_sets a
    common vertex subset (the two agree when there are no double edges).
    Nesting always means being a face, i.e. an ordered subsequence.
    """
    sigma, tau = tuple(sigma), tuple(tau)
    _check_level(sigma, tau, q)
    return _lower(sigma, tau, q, vertex_sets)


def strictly_lower_q_adjacent(
    sigma: Sequence[int], tau: Sequence[int], q: int, vertex_sets: bool = False
) -> frozenset:
    sigma, tau = tuple(sigma), tuple(tau)
    _check_level(sigma, tau, q)
    d = _lower(sigma, tau, q, vertex_sets)
    if d and q + 1 <= min(len(sigma), len(tau)) - 1 and _lower(sigma, tau, q + 1, vertex_sets):
        return NONE
    return d


def upper_p_adjacent(
    dfc: DirectedFlagComplex, sigma: Sequence[int], tau: Sequence[int], p: int
) -> frozenset:
    """Directions in which sigma and tau sit together inside a p-simplex.

    A witness is a p-simplex theta holding cofacets sigma+{w}, tau+{x};
    i is the position of w in sigma+{w} and j that of x in tau+{x}.
    PLUS needs a witness with i >= j (an arc (v,u) makes [v] PLUS-adjacent
    to [u]); MINUS one with i <= j.
    """
    sigma, tau = tuple(sigma), tuple(tau)
    if not (len(sigma) - 1 < p and len(tau) - 1 < p and p <= dfc.dim):
        raise DomainError(f"p={p} must exceed both dimensions and not exceed {dfc.dim}")
    dfc.id_of(sigma)
    dfc.id_of(tau)
    return _upper(dfc, sigma, tau, p)


def _upper(dfc: DirectedFlagComplex, sigma: Simplex, tau: Simplex, p: int) -> frozenset:
    minus = plus = False
    tset = set(tau)
    for theta in dfc.cofaces(sigma, p):
        if not tset <= set(theta) or not is_subsequence(tau, theta):
            continue
        pos = {v: k for k, v in enumerate(theta)}
        sset = set(sigma)
        iset = {sum(pos[u] < pos[w] for u in sigma) for w in theta if w not in sset}
        jset = {sum(pos[u] < pos[x] for u in tau) for x in theta if x not in tset}
        if not iset or not jset:
            continue
        plus |= max(iset) >= min(jset)
        minus |= min(iset) <= max(jset)
        if minus and plus:
            break
    return _flags(minus, plus)


def _upper_any(dfc: DirectedFlagComplex, sigma: Simplex, tau: Simplex, p: int) -> bool:
    """Upper p-adjacency in some direction; False when p is out of range."""
    if not (len(sigma) - 1 < p and len(tau) - 1 < p and p <= dfc.dim):
        return False
    return bool(_upper(dfc, sigma, tau, p))


def strictly_upper_p_adjacent(
    dfc: DirectedFlagComplex, sigma: Sequence[int], tau: Sequence[int], p: int
) -> frozenset:
    d = upper_p_adjacent(dfc, sigma, tau, p)
    if d and _upper_any(dfc, tuple(sigma), tuple(tau), p + 1):
        return NONE
    return d


def general_q_adjacent(
    dfc: DirectedFlagComplex, sigma: Sequence[int], tau: Sequence[int], q: int
) -> frozenset:
    """Strictly lower q-adjacent and not upper (n+m-q)-adjacent in any direction."""
    sigma, tau = tuple(sigma), tuple(tau)
    d = strictly_lower_q_adjacent(sigma, tau, q)
    if d and _upper_any(dfc, sigma, tau, len(sigma) + len(tau) - 2 - q):
        return NONE
    return d


def maximal_q_adjacent(
    dfc: DirectedFlagComplex, sigma: Sequence[int], tau: Sequence[int], q: int
) -> frozenset:
    """General q-adjacency with sigma not extendable.

    No proper coface of sigma may itself be q-adjacent to tau. For two
    maximal simplices this reduces to strict lower adjacency.
    """
    sigma, tau = tuple(sigma), tuple(tau)
    dfc.id_of(sigma)
    dfc.id_of(tau)
    d = general_q_adjacent(dfc, sigma, tau, q)
    if not d:
        return d
    for coface in dfc.cofaces(sigma):
        if general_q_adjacent(dfc, coface, tau, q):
            return NONE
    return d
