"""Even permutations: validation, parity and lexicographic ranking.

Permutations are tuples of the symbols ``1..n``.  Vertex ids of an
alternating group network are ranks among the *even* permutations in
lexicographic order.
"""
from __future__ import annotations

from math import factorial
from typing import Sequence

import numpy as np

Permutation = tuple[int, ...]


class PermutationError(ValueError):
    """Raised for malformed, odd, or out-of-range permutation input."""


def validate(p: Sequence[int]) -> Permutation:
    """Return ``p`` as a tuple after checking it is a bijection on ``1..n``."""
    p = tuple(int(x) for x in p)
    n = len(p)
    if n == 0:
        raise PermutationError("empty permutation")
    if sorted(p) != list(range(1, n + 1)):
        raise PermutationError(f"{p!r} is not a permutation of 1..{n}")
    return p


def parity(p: Sequence[int]) -> str:
    """Return ``"even"`` or ``"odd"`` by inversion counting."""
    p = validate(p)
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return "odd" if inversions & 1 else "even"


def is_even(p: Sequence[int]) -> bool:
    return parity(p) == "even"


def _lex_rank(p: Permutation) -> int:
    n = len(p)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        rank += smaller * factorial(n - 1 - i)
    return rank


def _lex_unrank(n: int, r: int) -> Permutation:
    pool = list(range(1, n + 1))
    out = []
    for i in range(n):
        f = factorial(n - 1 - i)
        d, r = divmod(r, f)
        out.append(pool.pop(d))
    return tuple(out)


def count_even(n: int) -> int:
    """Number of even permutations of ``1..n`` (``n!/2`` for ``n >= 2``)."""
    return factorial(n) // 2 if n >= 2 else 1


def rank_even(p: Sequence[int]) -> int:
    """Rank of an even permutation among all even ones, in lexicographic order.

    In the lexicographic order of all permutations, positions ``2m`` and
    ``2m + 1`` differ by a swap of the last two symbols, so each such pair
    holds exactly one even permutation and the even rank is ``lex_rank // 2``.
    """
    p = validate(p)
    if parity(p) != "even":
        raise PermutationError(f"{p!r} is odd")
    if len(p) == 1:
        return 0
    return _lex_rank(p) // 2


def unrank_even(n: int, r: int) -> Permutation:
    """Inverse of :func:`rank_even`."""
    if n < 1:
        raise PermutationError(f"dimension must be >= 1, got {n}")
    if not 0 <= r < count_even(n):
        raise PermutationError(f"rank {r} out of range [0, {count_even(n)})")
    if n == 1:
        return (1,)
    p = _lex_unrank(n, 2 * r)
    if parity(p) != "even":
        p = _lex_unrank(n, 2 * r + 1)
    return p


def format_perm(p: Sequence[int]) -> str:
    """Compact label, e.g. ``"1234"``; symbols above 9 are comma separated."""
    if len(p) <= 9:
        return "".join(str(x) for x in p)
    return ",".join(str(x) for x in p)


# -- vectorised helpers used by network construction ------------------------

def all_permutations_lex(n: int) -> np.ndarray:
    """All permutations of ``0..n-1`` as rows, lexicographic order."""
    table = np.zeros((1, 0), dtype=np.int8)
    for m in range(1, n + 1):
        # extend permutations of m-1 symbols to m symbols by choosing the lead
        blocks = []
        for lead in range(m):
            rest = np.array([x for x in range(m) if x != lead], dtype=np.int8)
            mapped = rest[table] if table.shape[1] else np.zeros((1, 0), dtype=np.int8)
            blocks.append(np.column_stack([np.full(len(mapped), lead, dtype=np.int8), mapped]))
        table = np.concatenate(blocks, axis=0)
    return table


def parity_rows(table: np.ndarray) -> np.ndarray:
    """Per-row inversion parity (0 even, 1 odd)."""
    n = table.shape[1]
    acc = np.zeros(len(table), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            acc += table[:, i] > table[:, j]
    return (acc & 1).astype(np.int8)


def even_rank_rows(table: np.ndarray) -> np.ndarray:
    """Vectorised :func:`rank_even` over rows of 0-based permutations."""
    n = table.shape[1]
    rank = np.zeros(len(table), dtype=np.int64)
    for i in range(n):
        smaller = np.zeros(len(table), dtype=np.int64)
        for j in range(i + 1, n):
            smaller += table[:, j] < table[:, i]
        rank += smaller * factorial(n - 1 - i)
    return rank // 2
