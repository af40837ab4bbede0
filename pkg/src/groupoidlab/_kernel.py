"""Kernel dispatch: compiled tally core when available, pure Python
otherwise.

Set GROUPOIDLAB_PURE=1 to force the pure backend (used by the test
suite and the benchmark to compare the two).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _kernel_py

try:
    from . import _kernel_c
except ImportError:
    _kernel_c = None

HAVE_COMPILED = _kernel_c is not None


@dataclass(frozen=True)
class KernelGraph:
    """Flat integer view of a labeled shadowed graph.

    Signed edge i has endpoints src[i] -> dst[i] (vertex indices),
    inverse partner inv[i], and signed label labels[i].  out_start and
    out_list form a CSR adjacency over signed edges, index-sorted so
    enumeration order is deterministic.
    """

    n_vertices: int
    n_signed: int
    src: tuple
    dst: tuple
    inv: tuple
    labels: tuple
    out_start: tuple
    out_list: tuple
    n_labels: int


def kernel_graph(lg) -> KernelGraph:
    """Flatten a LabeledGraph for the tally kernels."""
    sh = lg.shadowed
    g = sh.graph
    vidx = {v: i for i, v in enumerate(g.vertices)}
    signed = sh.signed_edges
    eidx = {s: i for i, s in enumerate(signed)}
    src = tuple(vidx[s.src] for s in signed)
    dst = tuple(vidx[s.dst] for s in signed)
    inv = tuple(eidx[s.inverted()] for s in signed)
    labels = tuple(lg.label(s) for s in signed)
    out: list[list[int]] = [[] for _ in g.vertices]
    for i, s in enumerate(signed):
        out[vidx[s.src]].append(i)
    out_start = [0]
    out_list: list[int] = []
    for lst in out:
        out_list.extend(lst)
        out_start.append(len(out_list))
    return KernelGraph(
        n_vertices=len(g.vertices),
        n_signed=len(signed),
        src=src,
        dst=dst,
        inv=inv,
        labels=labels,
        out_start=tuple(out_start),
        out_list=tuple(out_list),
        n_labels=lg.max_label,
    )


def _backend():
    if os.environ.get("GROUPOIDLAB_PURE"):
        return _kernel_py
    return _kernel_c if _kernel_c is not None else _kernel_py


def backend_name() -> str:
    return _backend().BACKEND


def tally_words(kg: KernelGraph, n: int, mode: str, pattern=None, budget=None):
    return _backend().tally_words(kg, n, mode, pattern=pattern, budget=budget)
