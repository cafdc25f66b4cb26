"""Structure distances and simplicial kernels for comparing two complexes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complex import DirectedFlagComplex
from .errors import DomainError
from .qstructure import StructureVectors, structure_vectors


def _pad(a, b) -> tuple[np.ndarray, np.ndarray]:
    k = max(len(a), len(b))
    x = np.zeros(k)
    y = np.zeros(k)
    x[: len(a)] = a
    y[: len(b)] = b
    return x, y


def vector_distance(a, b) -> float:
    """||a - b|| / (||a|| + ||b||) after zero padding; 0 for two zero vectors."""
    x, y = _pad(a, b)
    den = np.linalg.norm(x) + np.linalg.norm(y)
    if den == 0:
        return 0.0
    return float(np.linalg.norm(x - y) / den)


def _vectors(x) -> StructureVectors:
    return x if isinstance(x, StructureVectors) else structure_vectors(x)


def structure_distance(x1, x2, n: int = 1) -> float:
    """n-th structure distance; arguments are complexes or precomputed vectors."""
    if n not in (1, 2, 3, 4, 5):
        raise DomainError("structure distance index must be in 1..5")
    return vector_distance(_vectors(x1).vector(n), _vectors(x2).vector(n))


def hck(x1, x2) -> float | None:
    """Cosine of the zero-padded simplex-count vectors."""
    a = x1.counts() if isinstance(x1, DirectedFlagComplex) else _vectors(x1).str1
    b = x2.counts() if isinstance(x2, DirectedFlagComplex) else _vectors(x2).str1
    x, y = _pad(a, b)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        return None
    return float(min(1.0, x @ y / (nx * ny)))


def labelled_simplices(x: DirectedFlagComplex) -> set[tuple[str, ...]]:
    lab = x.source.labels
    return {tuple(lab[v] for v in s) for s in x.simplices}


def jaccard_kernel(x1: DirectedFlagComplex, x2: DirectedFlagComplex) -> float:
    """1 - |X1 & X2| / |X1 | X2| over labelled simplices; 0 when both are empty."""
    a, b = labelled_simplices(x1), labelled_simplices(x2)
    union = len(a | b)
    if union == 0:
        return 0.0
    return 1.0 - len(a & b) / union


def _edit(a: set, b: set) -> float:
    e = len(a ^ b)
    tot = len(a) + len(b) + e
    if tot == 0:
        return 0.0
    return 1.0 - 2 * e / tot


def edit_kernel(x1: DirectedFlagComplex, x2: DirectedFlagComplex, stratified: bool = False) -> float:
    """1 - 2e / (|X1| + |X2| + e) with e the size of the symmetric difference.

    The stratified form averages the same quantity over the dimensions
    present in either complex.
    """
    a, b = labelled_simplices(x1), labelled_simplices(x2)
    if not stratified:
        return _edit(a, b)
    dims = sorted({len(s) for s in a} | {len(s) for s in b})
    if not dims:
        return 0.0
    vals = [_edit({s for s in a if len(s) == k}, {s for s in b if len(s) == k}) for k in dims]
    return float(np.mean(vals))


@dataclass
class ComparisonReport:
    structure_distances: dict[int, float]
    kernels: dict[str, float | None]
    padding: dict = field(default_factory=dict)


def compare(x1: DirectedFlagComplex, x2: DirectedFlagComplex, str1_only: bool = False) -> ComparisonReport:
    """All structure distances and kernels; str1_only skips the label-dependent ones."""
    v1, v2 = structure_vectors(x1), structure_vectors(x2)
    dists = {n: structure_distance(v1, v2, n) for n in range(1, 6)}
    kernels: dict[str, float | None] = {"hck": hck(v1, v2)}
    if not str1_only:
        kernels["jaccard"] = jaccard_kernel(x1, x2)
        kernels["edit"] = edit_kernel(x1, x2)
        kernels["sek"] = edit_kernel(x1, x2, stratified=True)
    padding = {"dim_a": len(v1.str1) - 1, "dim_b": len(v2.str1) - 1,
               "padded_to": max(len(v1.str1), len(v2.str1)) - 1}
    return ComparisonReport(dists, kernels, padding)
