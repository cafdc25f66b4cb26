"""Random digraphs, degree-preserving rewiring and the z-test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .digraph import Digraph
from .errors import DomainError

RNG_NAME = "numpy.random.Generator(PCG64)"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for (seed, stream...) via SeedSequence spawning keys."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=stream)))


@dataclass(frozen=True)
class RewireConfig:
    model: str = "maslov-sneppen"
    seed: int = 0
    n_swap_attempts: int | None = None  # default 10 * |E|
    forbid_double_edges: bool = True

    def __post_init__(self):
        if self.model not in ("maslov-sneppen", "lattice"):
            raise DomainError(f"unknown null model {self.model!r}")
        if self.n_swap_attempts is not None and self.n_swap_attempts < 0:
            raise DomainError("swap attempts must be nonnegative")


def erdos_renyi(n: int, p: float, seed: int | np.random.Generator = 0) -> Digraph:
    """Each ordered pair (u, v), u != v, becomes an arc with probability p."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability {p} outside [0, 1]")
    if n < 0:
        raise DomainError("vertex count must be nonnegative")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    r, c = np.nonzero(mask)
    return Digraph.from_arcs(n, zip(r.tolist(), c.tolist()))


def lattice_cost(arcs, n: int) -> int:
    """Sum over arcs of the circular distance between endpoint ids."""
    tot = 0
    for u, v in arcs:
        d = abs(u - v)
        tot += min(d, n - d)
    return tot


def _circ(u: int, v: int, n: int) -> int:
    d = abs(u - v)
    return min(d, n - d)


def rewire(g: Digraph, cfg: RewireConfig, rng: np.random.Generator | None = None) -> Digraph:
    """Swap arc pairs (a,b),(c,d) -> (a,d),(c,b), keeping all in- and out-degrees.

    The lattice model only accepts swaps that do not raise the circular cost.
    """
    arcs = sorted(g.arcs)
    m = len(arcs)
    attempts = 10 * m if cfg.n_swap_attempts is None else cfg.n_swap_attempts
    if m < 2 or attempts == 0:
        return g
    rng = rng if rng is not None else make_rng(cfg.seed)
    present = set(arcs)
    lattice = cfg.model == "lattice"
    n = g.n
    accepted = 0
    for _ in range(attempts):
        i, j = rng.integers(m, size=2)
        if i == j:
            continue
        a, b = arcs[i]
        c, d = arcs[j]
        if a == c or b == d or a == d or c == b:
            continue
        if (a, d) in present or (c, b) in present:
            continue
        if cfg.forbid_double_edges and ((d, a) in present or (b, c) in present):
            continue
        if lattice and _circ(a, d, n) + _circ(c, b, n) > _circ(a, b, n) + _circ(c, d, n):
            continue
        present -= {(a, b), (c, d)}
        present |= {(a, d), (c, b)}
        arcs[i] = (a, d)
        arcs[j] = (c, b)
        accepted += 1
    out = Digraph(g.n, frozenset(present), None, g.labels)
    out.meta.update(null_model=cfg.model, swaps_accepted=accepted, rng=RNG_NAME)
    return out


def maslov_sneppen(g: Digraph, cfg: RewireConfig | None = None, rng=None) -> Digraph:
    cfg = cfg or RewireConfig()
    if cfg.model != "maslov-sneppen":
        cfg = RewireConfig("maslov-sneppen", cfg.seed, cfg.n_swap_attempts, cfg.forbid_double_edges)
    return rewire(g, cfg, rng)


def lattice_rewire(g: Digraph, cfg: RewireConfig | None = None, rng=None) -> Digraph:
    cfg = cfg or RewireConfig("lattice")
    if cfg.model != "lattice":
        cfg = RewireConfig("lattice", cfg.seed, cfg.n_swap_attempts, cfg.forbid_double_edges)
    return rewire(g, cfg, rng)


def z_test(observed: float, samples) -> tuple[float | None, float | None]:
    """z = (observed - mean) / sample sd, two-sided normal p; (None, None) if sd is 0."""
    x = np.asarray(samples, dtype=float)
    if len(x) < 2:
        return None, None
    sd = float(x.std(ddof=1))
    if sd == 0 or not np.isfinite(sd):
        return None, None
    z = (observed - float(x.mean())) / sd
    return z, float(2 * norm.sf(abs(z)))
