"""Run configuration and JSON/CSV serialisation of complexes, q-digraphs and reports."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .complex import DirectedFlagComplex
from .measures import MeasureReport
from .qstructure import QDigraph


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    q: list[int] = field(default_factory=list)
    variant: str = "maximal"
    weighted: bool = False
    d_max: int | None = None
    measures: list[str] | None = None
    null_model: dict | None = None
    out_dir: str = "."
    seed: int = 0
    remove_double_edges: bool = False

    def __post_init__(self):
        self.inputs = [str(Path(p).resolve()) for p in self.inputs]
        self.out_dir = str(Path(self.out_dir).resolve())

    def header(self) -> dict:
        return {"config": asdict(self), "version": __version__}


def _clean(x):
    """JSON-safe copy: numpy scalars to python, non-finite floats to null."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def dumps(obj, cfg: RunConfig | None = None) -> str:
    payload = dict(cfg.header()) if cfg is not None else {"version": __version__}
    payload.update(obj)
    return json.dumps(_clean(payload), indent=2, sort_keys=False)


def csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return repr(x)
    return str(x)


def csv_text(header: list[str], rows, cfg: RunConfig | None = None) -> str:
    """CSV with a leading '#' comment line carrying the run config and version."""
    buf = io.StringIO()
    meta = cfg.header() if cfg is not None else {"version": __version__}
    buf.write("# " + json.dumps(_clean(meta), sort_keys=False) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([csv_cell(x) for x in r])
    return buf.getvalue()


def read_csv(text: str) -> tuple[dict, list[str], list[list[str]]]:
    lines = text.splitlines()
    meta = json.loads(lines[0][2:]) if lines and lines[0].startswith("# ") else {}
    body = [ln for ln in lines if not ln.startswith("#")]
    rows = list(csv.reader(body))
    return meta, rows[0], rows[1:]


def complex_json(dfc: DirectedFlagComplex) -> dict:
    lab = dfc.source.labels
    simplices = []
    for sid, s in enumerate(dfc.simplices):
        rec = {"dim": len(s) - 1, "vertices": [lab[v] for v in s], "maximal": bool(dfc.maximal[sid])}
        if dfc.weights is not None:
            rec["weight"] = float(dfc.weights[sid])
        simplices.append(rec)
    return {
        "digraph": dfc.source.summary(),
        "labels": list(lab),
        "d_max": dfc.d_max,
        "truncated": dfc.truncated,
        "str1": dfc.counts(),
        "simplices": simplices,
    }


def str1_csv(dfc: DirectedFlagComplex, cfg: RunConfig | None = None) -> str:
    c = dfc.counts()
    return csv_text([f"dim{k}" for k in range(len(c))], [c], cfg)


def q_digraph_json(qd: QDigraph) -> dict:
    return {
        "q": qd.q,
        "variant": qd.variant,
        "vertices": qd.vertex_labels(),
        "arcs": sorted([list(a) for a in qd.arcs]),
        "matrix": qd.matrix,
        "meta": qd.meta,
    }


def matrix_csv(qd: QDigraph, cfg: RunConfig | None = None) -> str:
    labs = qd.vertex_labels()
    rows = [[labs[i]] + list(qd.matrix[i]) for i in range(qd.n)]
    return csv_text([""] + labs, rows, cfg)


def report_json(rep: MeasureReport) -> dict:
    return {
        "q": rep.q,
        "variant": rep.variant,
        "vertices": rep.vertices,
        "scalar_measures": rep.scalar_measures,
        "vertex_measures": rep.vertex_measures,
        "maxima": rep.maxima(),
        "metadata": rep.metadata,
        "flags": rep.flags,
    }


def write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
