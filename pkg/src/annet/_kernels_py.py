"""Pure-Python search kernels over bitset adjacency rows.

This module is the fallback for :mod:`annet._kernels` (Cython) and defines
the contract both must satisfy.  ``rows[v]`` is the neighbour bitset of
vertex ``v``; vertex sets are ints.
"""
from __future__ import annotations

from itertools import combinations

# shape codes shared with the compiled kernels
SINGLETON, EDGE, PATH2, CYCLE3, CLAW, PAW, PATH3, OTHER = range(8)


def shape_code(rows, comp: int) -> int:
    size = comp.bit_count()
    if size == 1:
        return SINGLETON
    if size == 2:
        return EDGE
    if size > 4:
        return OTHER
    degs = []
    m = comp
    while m:
        low = m & -m
        degs.append((rows[low.bit_length() - 1] & comp).bit_count())
        m ^= low
    edges = sum(degs) // 2
    if size == 3:
        return CYCLE3 if edges == 3 else PATH2
    if edges == 3:
        return CLAW if max(degs) == 3 else PATH3
    if edges == 4 and max(degs) == 3:
        # 4 vertices, 4 edges, a degree-3 vertex: triangle plus pendant
        return PAW
    return OTHER


def _neighbors_of(rows, s: int) -> int:
    out = 0
    while s:
        low = s & -s
        out |= rows[low.bit_length() - 1]
        s ^= low
    return out


def _component(rows, start: int, rem: int) -> int:
    comp = frontier = start
    while frontier:
        frontier = _neighbors_of(rows, frontier) & rem & ~comp
        comp |= frontier
    return comp


def count_components(rows, rem: int, cap: int) -> int:
    """Components of the subgraph induced by ``rem``, counting stops at ``cap``."""
    count = 0
    while rem and count < cap:
        comp = _component(rows, rem & -rem, rem)
        rem &= ~comp
        count += 1
    return count


def components(rows, rem: int) -> list[int]:
    out = []
    while rem:
        comp = _component(rows, rem & -rem, rem)
        rem &= ~comp
        out.append(comp)
    return out


def first_cut(rows, nv: int, k: int, ell: int, lo: int, hi: int) -> tuple[int, int]:
    """Lexicographically first ``k``-subset with minimum in ``[lo, hi)`` whose
    removal leaves at least ``ell`` components.  Returns ``(mask or -1, examined)``."""
    full = (1 << nv) - 1
    examined = 0
    for f in range(lo, min(hi, nv - k + 1)):
        head = 1 << f
        for rest in combinations(range(f + 1, nv), k - 1):
            examined += 1
            mask = head
            for v in rest:
                mask |= 1 << v
            if count_components(rows, full & ~mask, ell) >= ell:
                return mask, examined
    return -1, examined


def scan_cuts(rows, nv: int, k: int, lo: int, hi: int) -> tuple[int, dict]:
    """Classify every disconnecting ``k``-subset with minimum in ``[lo, hi)``.

    Returns ``(examined, table)`` where ``table`` maps a signature (the sorted
    tuple of ``(size, shape_code)`` over all components) to
    ``[count, lexicographically first mask]``.
    """
    full = (1 << nv) - 1
    examined = 0
    table: dict = {}
    for f in range(lo, min(hi, nv - k + 1)):
        head = 1 << f
        for rest in combinations(range(f + 1, nv), k - 1):
            examined += 1
            mask = head
            for v in rest:
                mask |= 1 << v
            rem = full & ~mask
            first = _component(rows, rem & -rem, rem)
            if first == rem:
                continue
            key = tuple(sorted((c.bit_count(), shape_code(rows, c)) for c in components(rows, rem)))
            entry = table.get(key)
            if entry is None:
                table[key] = [1, mask]
            else:
                entry[0] += 1
    return examined, table


def grow_fragments(rows, nv: int, max_size: int, budget: int, weight_limit: int,
                   lo: int, hi: int) -> tuple[list[tuple[int, int]], int]:
    """Connected sets ``S`` with minimum vertex in ``[lo, hi)``, ``|S| <= max_size``
    and ``|N(S)| <= budget``; with ``weight_limit >= 0`` also
    ``2|S| + |N(S)| <= weight_limit``.

    Growth adds one frontier vertex at a time; frontier vertices skipped at a
    node are excluded below it, so they stay in the boundary of every
    descendant.  Pruning uses two sound lower bounds on the final boundary
    (excluded boundary plus what the remaining capacity cannot absorb) and
    the monotonicity of ``2|S| + |N(S)|`` under growth.
    """
    out: list[tuple[int, int]] = []
    nodes = 0

    def visit(s: int, size: int, nb: int, excluded: int) -> None:
        nonlocal nodes
        nodes += 1
        nsize = nb.bit_count()
        if nsize <= budget and (weight_limit < 0 or 2 * size + nsize <= weight_limit):
            out.append((s, nb))
        if size == max_size:
            return
        frontier = nb & ~excluded
        while frontier:
            w = frontier & -frontier
            frontier ^= w
            s2 = s | w
            nb2 = (nb | rows[w.bit_length() - 1]) & ~s2
            size2 = size + 1
            n2 = nb2.bit_count()
            fixed = (nb2 & excluded).bit_count()
            if (fixed + max(0, n2 - fixed - (max_size - size2)) <= budget
                    and (weight_limit < 0 or 2 * size2 + n2 <= weight_limit)):
                visit(s2, size2, nb2, excluded)
            excluded |= w
            if (nb & excluded).bit_count() > budget:
                break

    for v in range(lo, min(hi, nv)):
        below = (1 << v) - 1
        nb = rows[v]
        fixed = (nb & below).bit_count()
        if fixed + max(0, nb.bit_count() - fixed - (max_size - 1)) > budget:
            continue
        if weight_limit >= 0 and 2 + nb.bit_count() > weight_limit:
            continue
        visit(1 << v, 1, nb, below)
    return out, nodes
