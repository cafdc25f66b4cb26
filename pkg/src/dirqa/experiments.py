"""Random-digraph simulation study and the null-model comparison pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .complex import build_dfc
from .digraph import Digraph, adjacency_matrix, remove_double_edges
from .measures import global_q_efficiency, q_betweenness, q_energy, q_harmonic, q_katz, q_reaching
from .nullmodels import RNG_NAME, RewireConfig, erdos_renyi, make_rng, rewire, z_test
from .qstructure import QDigraph, build_q_digraph, from_matrix

SIM_P_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)
SIM_MEASURES = ("n_vertices", "n_arcs", "global_efficiency", "energy", "global_reaching", "max_harmonic")
SIM_LIMIT = 60


def default_d_max(p: float) -> int:
    return 4 if p <= 0.4 else 3


def sim_measures(qd: QDigraph) -> dict[str, float]:
    """Summary measures of one q-digraph; undefined values count as 0."""
    hc = q_harmonic(qd)
    return {
        "n_vertices": float(qd.n),
        "n_arcs": float(len(qd.arcs)),
        "global_efficiency": global_q_efficiency(qd) or 0.0,
        "energy": q_energy(qd),
        "global_reaching": q_reaching(qd)[1] or 0.0,
        "max_harmonic": float(hc.max()) if len(hc) else 0.0,
    }


@dataclass
class SimulationResult:
    n: int
    trials: int
    p_values: list[float]
    q_values: list[int]
    seed: int
    samples: dict = field(default_factory=dict)  # (p, q, measure) -> list of values

    def mean(self, p, q, m) -> float:
        return float(np.mean(self.samples[(p, q, m)]))

    def sd(self, p, q, m) -> float:
        x = self.samples[(p, q, m)]
        return float(np.std(x, ddof=1)) if len(x) > 1 else 0.0


def simulate_er(
    n: int = 10,
    p_values: Sequence[float] = SIM_P_GRID,
    trials: int = 30,
    seed: int = 0,
    q_values: Sequence[int] = (0, 1, 2),
    d_max: int | None = None,
    variant: str = "maximal",
    limit: int = SIM_LIMIT,
) -> SimulationResult:
    """Maximal q-digraph statistics of G(n, p) digraphs.

    Double edges are kept and simplices are compared by vertex sets, both
    for shared faces and for maximality. q-digraphs with more than `limit` vertices keep the
    lexicographically first `limit` maximal simplices.
    """
    if n < 2:
        raise ValueError("simulation needs n >= 2")
    res = SimulationResult(n, trials, list(p_values), list(q_values), seed)
    for pi, p in enumerate(p_values):
        dm = d_max if d_max is not None else default_d_max(p)
        for t in range(trials):
            g = erdos_renyi(n, p, make_rng(seed, pi, t))
            dfc = build_dfc(g, dm)
            for q in q_values:
                qd = build_q_digraph(dfc, q, variant, limit=limit, double_edges="vertex-set")
                for name, val in sim_measures(qd).items():
                    res.samples.setdefault((p, q, name), []).append(val)
    return res


NULL_MEASURES = ("harmonic", "betweenness", "in_katz")
LEVELS = (-1, 0, 1, 2, 3)


def level_digraph(g: Digraph, q: int, variant: str = "lower", dfc=None) -> QDigraph:
    """q = -1 is the digraph itself; q >= 0 the q-digraph of its flag complex."""
    if q < 0:
        return from_matrix(adjacency_matrix(g), q=-1)
    dfc = dfc if dfc is not None else build_dfc(g, allow_unbounded=True)
    return build_q_digraph(dfc, q, variant)


def max_measures(qd: QDigraph) -> dict[str, float | None]:
    """Maxima over vertices of harmonic, betweenness and in-Katz (non-normalised).

    An empty q-digraph has no maximum; every entry is then None.
    """
    if qd.n == 0:
        return {m: None for m in NULL_MEASURES}
    h = qd.binary
    alpha = linalg.default_katz_alpha(h)
    return {
        "harmonic": float(q_harmonic(qd).max()),
        "betweenness": float(q_betweenness(qd).max()),
        "in_katz": float(q_katz(qd, "in", alpha).max()),
    }


def graph_maxima(g: Digraph, levels: Sequence[int] = LEVELS, variant: str = "lower") -> dict:
    dfc = build_dfc(g, allow_unbounded=True)
    out = {}
    for q in levels:
        qd = level_digraph(g, q, variant, dfc)
        out[q] = max_measures(qd)
        out[q]["n_vertices"] = qd.n
    return out


@dataclass
class NullComparison:
    observed: dict
    null: dict  # model -> list of per-trial maxima dicts
    rows: list[dict]
    meta: dict


def null_model_comparison(
    g: Digraph,
    n_null: int = 30,
    seed: int = 0,
    levels: Sequence[int] = LEVELS,
    variant: str = "lower",
    double_edge_policy: str = "clique-preserving",
    n_swap_attempts: int | None = None,
) -> NullComparison:
    """Observed maxima against Maslov-Sneppen and lattice nulls, with z-tests.

    Double edges are removed first; both null models rewire the cleaned digraph.
    """
    clean = remove_double_edges(g, double_edge_policy)
    observed = graph_maxima(clean, levels, variant)
    null: dict[str, list] = {}
    for mi, model in enumerate(("maslov-sneppen", "lattice")):
        cfg = RewireConfig(model, seed, n_swap_attempts)
        null[model] = [
            graph_maxima(rewire(clean, cfg, make_rng(seed, mi, t)), levels, variant)
            for t in range(n_null)
        ]
    rows = []
    for q in levels:
        for m in NULL_MEASURES:
            for model, trials in null.items():
                samples = [tr[q][m] for tr in trials if tr[q][m] is not None]
                obs = observed[q][m]
                z, p = (None, None) if obs is None else z_test(obs, samples)
                rows.append({
                    "q": q, "measure": m, "model": model,
                    "observed": obs,
                    "null_mean": float(np.mean(samples)) if samples else None,
                    "null_sd": float(np.std(samples, ddof=1)) if len(samples) > 1 else None,
                    "n_defined": len(samples),
                    "z": z, "p": p,
                })
    meta = {
        "n_vertices": g.n, "n_arcs_input": g.n_arcs, "n_arcs_clean": clean.n_arcs,
        "double_edges": len(g.double_edges()), "double_edge_policy": double_edge_policy,
        "variant": variant, "n_null": n_null, "seed": seed, "rng": RNG_NAME,
        "maxima": "taken over non-normalised per-vertex values",
        "empty_level": "no maximum; trial left out of the null sample",
        "katz_alpha": "0.9 / spectral radius per digraph (0.1 if nilpotent)",
    }
    return NullComparison(observed, null, rows, meta)
