"""Backend selection for the search kernels.

The compiled extension handles graphs of at most 64 vertices (one machine
word per adjacency row).  Larger graphs, and any environment without the
extension or with ``ANNET_PURE_PYTHON=1``, use the pure-Python kernels.
"""
from __future__ import annotations

import os

from annet import _kernels_py as py

try:
    if os.environ.get("ANNET_PURE_PYTHON") == "1":
        raise ImportError("pure-Python kernels forced")
    from annet import _kernels as ext
except ImportError:
    ext = None

BACKEND = "cython" if ext is not None else "python"
WORD = 64

shape_code = py.shape_code
count_components = py.count_components
components = py.components
SINGLETON, EDGE, PATH2, CYCLE3, CLAW, PAW, PATH3, OTHER = range(8)


def _pick(nv: int):
    return ext if ext is not None and nv <= WORD else py


def first_cut(rows, nv, k, ell, lo, hi):
    return _pick(nv).first_cut(rows, nv, k, ell, lo, hi)


def scan_cuts(rows, nv, k, lo, hi):
    return _pick(nv).scan_cuts(rows, nv, k, lo, hi)


def grow_fragments(rows, nv, max_size, budget, weight_limit, lo, hi):
    return _pick(nv).grow_fragments(rows, nv, max_size, budget, weight_limit, lo, hi)
