# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels for graphs with at most 64 vertices.

Same contract as :mod:`annet._kernels_py`; each adjacency row is one
``uint64``.
"""
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXV = 64

cdef enum:
    SINGLETON = 0
    EDGE = 1
    PATH2 = 2
    CYCLE3 = 3
    CLAW = 4
    PAW = 5
    PATH3 = 6
    OTHER = 7


cdef inline int popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef inline uint64_t low_bit(uint64_t x) nogil:
    return x & (~x + 1)


cdef inline uint64_t full_mask(int nv) nogil:
    if nv >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << nv) - 1


cdef int load_rows(object rows, int nv, uint64_t* out) except -1:
    if nv > MAXV:
        raise ValueError("compiled kernels support at most 64 vertices")
    cdef int v
    for v in range(nv):
        out[v] = <uint64_t>int(rows[v])
    return 0


cdef inline uint64_t component_of(const uint64_t* rows, uint64_t start, uint64_t rem) nogil:
    cdef uint64_t comp = start, frontier = start, nb, f
    while frontier:
        nb = 0
        f = frontier
        while f:
            nb |= rows[ctz(f)]
            f &= f - 1
        frontier = nb & rem & ~comp
        comp |= frontier
    return comp


cdef inline int components_at_least(const uint64_t* rows, uint64_t rem, int cap) nogil:
    cdef int count = 0
    cdef uint64_t comp
    while rem and count < cap:
        comp = component_of(rows, low_bit(rem), rem)
        rem &= ~comp
        count += 1
    return count


cdef int shape_of(const uint64_t* rows, uint64_t comp) nogil:
    cdef int size = popc(comp)
    cdef int edges = 0, maxdeg = 0, d
    cdef uint64_t m = comp
    if size == 1:
        return SINGLETON
    if size == 2:
        return EDGE
    if size > 4:
        return OTHER
    while m:
        d = popc(rows[ctz(m)] & comp)
        edges += d
        if d > maxdeg:
            maxdeg = d
        m &= m - 1
    edges //= 2
    if size == 3:
        return CYCLE3 if edges == 3 else PATH2
    if edges == 3:
        return CLAW if maxdeg == 3 else PATH3
    if edges == 4 and maxdeg == 3:
        return PAW
    return OTHER


def shape_code(rows, comp):
    cdef uint64_t buf[MAXV]
    load_rows(rows, len(rows), buf)
    return shape_of(buf, <uint64_t>comp)


cdef inline bint next_tail(int* idx, int k, int nv) nogil:
    """Advance idx[1..k-1] to the next combination in lexicographic order."""
    cdef int i = k - 1, j
    while i >= 1 and idx[i] == nv - k + i:
        i -= 1
    if i < 1:
        return False
    idx[i] += 1
    for j in range(i + 1, k):
        idx[j] = idx[j - 1] + 1
    return True


def first_cut(rows, int nv, int k, int ell, int lo, int hi):
    cdef uint64_t buf[MAXV]
    cdef uint64_t prefix[MAXV + 1]
    cdef int idx[MAXV]
    cdef int f, i, start
    cdef long long examined = 0
    cdef uint64_t full, mask
    load_rows(rows, nv, buf)
    full = full_mask(nv)
    if hi > nv - k + 1:
        hi = nv - k + 1
    with nogil:
        for f in range(lo, hi):
            idx[0] = f
            for i in range(1, k):
                idx[i] = f + i
            prefix[0] = 0
            start = 0
            while True:
                for i in range(start, k):
                    prefix[i + 1] = prefix[i] | ((<uint64_t>1) << idx[i])
                mask = prefix[k]
                examined += 1
                if components_at_least(buf, full & ~mask, ell) >= ell:
                    with gil:
                        return int(mask), examined
                # find the position that changes to rebuild prefixes from there
                i = k - 1
                while i >= 1 and idx[i] == nv - k + i:
                    i -= 1
                if i < 1:
                    break
                next_tail(idx, k, nv)
                start = i
    return -1, examined


def scan_cuts(rows, int nv, int k, int lo, int hi):
    cdef uint64_t buf[MAXV]
    cdef uint64_t prefix[MAXV + 1]
    cdef int idx[MAXV]
    cdef int f, i, start
    cdef long long examined = 0
    cdef uint64_t full, mask, rem, first, comp
    table = {}
    load_rows(rows, nv, buf)
    full = full_mask(nv)
    if hi > nv - k + 1:
        hi = nv - k + 1
    for f in range(lo, hi):
        idx[0] = f
        for i in range(1, k):
            idx[i] = f + i
        prefix[0] = 0
        start = 0
        while True:
            for i in range(start, k):
                prefix[i + 1] = prefix[i] | ((<uint64_t>1) << idx[i])
            mask = prefix[k]
            examined += 1
            rem = full & ~mask
            first = component_of(buf, low_bit(rem), rem)
            if first != rem:
                parts = []
                while rem:
                    comp = component_of(buf, low_bit(rem), rem)
                    rem &= ~comp
                    parts.append((popc(comp), shape_of(buf, comp)))
                parts.sort()
                key = tuple(parts)
                entry = table.get(key)
                if entry is None:
                    table[key] = [1, int(mask)]
                else:
                    entry[0] += 1
            i = k - 1
            while i >= 1 and idx[i] == nv - k + i:
                i -= 1
            if i < 1:
                break
            next_tail(idx, k, nv)
            start = i
    return examined, table


cdef struct GrowCtx:
    const uint64_t* rows
    int max_size
    int budget
    int weight_limit
    long long nodes


cdef int grow(GrowCtx* ctx, uint64_t s, int size, uint64_t nb, uint64_t excluded, list out) except -1:
    cdef int nsize = popc(nb)
    cdef uint64_t frontier, w, s2, nb2
    cdef int size2, n2, fixed, spare
    ctx.nodes += 1
    if nsize <= ctx.budget and (ctx.weight_limit < 0 or 2 * size + nsize <= ctx.weight_limit):
        out.append((int(s), int(nb)))
    if size == ctx.max_size:
        return 0
    frontier = nb & ~excluded
    while frontier:
        w = low_bit(frontier)
        frontier ^= w
        s2 = s | w
        nb2 = (nb | ctx.rows[ctz(w)]) & ~s2
        size2 = size + 1
        n2 = popc(nb2)
        fixed = popc(nb2 & excluded)
        spare = n2 - fixed - (ctx.max_size - size2)
        if spare < 0:
            spare = 0
        if fixed + spare <= ctx.budget and (ctx.weight_limit < 0 or 2 * size2 + n2 <= ctx.weight_limit):
            grow(ctx, s2, size2, nb2, excluded, out)
        excluded |= w
        if popc(nb & excluded) > ctx.budget:
            break
    return 0


def grow_fragments(rows, int nv, int max_size, int budget, int weight_limit, int lo, int hi):
    cdef uint64_t buf[MAXV]
    cdef GrowCtx ctx
    cdef int v, fixed, spare
    cdef uint64_t below, nb
    load_rows(rows, nv, buf)
    ctx.rows = buf
    ctx.max_size = max_size
    ctx.budget = budget
    ctx.weight_limit = weight_limit
    ctx.nodes = 0
    out = []
    if hi > nv:
        hi = nv
    for v in range(lo, hi):
        below = ((<uint64_t>1) << v) - 1
        nb = buf[v]
        fixed = popc(nb & below)
        spare = popc(nb) - fixed - (max_size - 1)
        if spare < 0:
            spare = 0
        if fixed + spare > budget:
            continue
        if weight_limit >= 0 and 2 + popc(nb) > weight_limit:
            continue
        grow(&ctx, (<uint64_t>1) << v, 1, nb, below, out)
    return out, ctx.nodes
