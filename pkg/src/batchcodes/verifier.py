"""Exact search for disjoint recovery sets.

A recovery set for information symbol ``i`` is a set of columns of ``G``
whose XOR is the unit vector ``e_i``.  Only inclusion-minimal sets are
enumerated: shrinking a set keeps a family disjoint, so nothing is lost.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import InvalidParams, SearchBudgetExceeded
from .gf2core import BitMatrix

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class QueryMultiset:
    """Sorted multiset of 0-based information indices."""

    indices: tuple[int, ...]

    def __init__(self, indices, k: int | None = None):
        idx = tuple(sorted(int(i) for i in indices))
        if not idx:
            raise InvalidParams("a query needs at least one index")
        if idx[0] < 0 or (k is not None and idx[-1] >= k):
            raise InvalidParams(f"query indices {idx} out of range for k={k}")
        object.__setattr__(self, "indices", idx)

    @property
    def t(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True)
class RecoveryCertificate:
    """``sets[l]`` recovers ``query.indices[l]``; all sets pairwise disjoint."""

    query: QueryMultiset
    sets: tuple[tuple[int, ...], ...]

    def check(self, G: BitMatrix, r: int) -> bool:
        """Re-validate against ``G`` without trusting the search."""
        if len(self.sets) != len(self.query):
            return False
        seen: set[int] = set()
        cols = G.column_masks
        for i, S in zip(self.query, self.sets):
            if len(S) > r or len(set(S)) != len(S) or seen.intersection(S):
                return False
            seen.update(S)
            acc = 0
            for j in S:
                acc ^= cols[j]
            if acc != 1 << i:
                return False
        return True

    def union(self) -> tuple[int, ...]:
        return tuple(sorted(j for S in self.sets for j in S))

    def to_dict(self) -> dict:
        """1-based view used on the wire."""
        return {
            "query": [i + 1 for i in self.query],
            "sets": [[j + 1 for j in S] for S in self.sets],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> RecoveryCertificate:
        # keep the set order aligned with the query order as written
        pairs = sorted(
            zip(data["query"], data["sets"]), key=lambda p: p[0]
        )
        query = QueryMultiset([q - 1 for q, _ in pairs])
        sets = tuple(tuple(sorted(j - 1 for j in S)) for _, S in pairs)
        return cls(query, sets)


@dataclass(frozen=True)
class MaxT:
    value: int
    exact: bool


# -- enumeration ------------------------------------------------------------


@lru_cache(maxsize=64)
def _minimal_sets(G: BitMatrix, r: int, budget: int) -> tuple[tuple[int, ...], ...]:
    """Minimal recovery sets (as column bitmasks) for every row, sizes <= r."""
    k, n = G.shape
    cols = G.column_masks
    found: list[list[int]] = [[] for _ in range(k)]
    by_size: list[list[list[int]]] = [[[] for _ in range(k)] for _ in range(r + 1)]
    expanded = 0

    # depth-first over increasing index tuples with running XOR
    stack = [(0, 0, 0, 0)]  # (next column, size, xor, column mask)
    while stack:
        start, size, acc, mask = stack.pop()
        for j in range(n - 1, start - 1, -1):
            expanded += 1
            if expanded > budget:
                raise SearchBudgetExceeded(f"recovery-set enumeration exceeded {budget} candidates")
            v = acc ^ cols[j]
            m = mask | (1 << j)
            if v and v & (v - 1) == 0:
                by_size[size + 1][v.bit_length() - 1].append(m)
            if size + 1 < r:
                stack.append((j + 1, size + 1, v, m))

    for i in range(k):
        for size in range(1, r + 1):
            for m in sorted(by_size[size][i], key=_mask_key):
                if not any(s & m == s for s in found[i]):
                    found[i].append(m)
    return tuple(tuple(f) for f in found)


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(_mask_to_indices(mask))


def _mask_to_indices(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def enumerate_recovery_sets(
    G: BitMatrix, i: int, r: int, budget: int = DEFAULT_BUDGET
) -> list[tuple[int, ...]]:
    """All inclusion-minimal recovery sets for ``x_i`` of size at most ``r``.

    Sorted by size, then lexicographically.
    """
    if not 0 <= i < G.nrows:
        raise InvalidParams(f"index {i} out of range for k={G.nrows}")
    if r < 1:
        raise InvalidParams("r must be >= 1")
    return [tuple(_mask_to_indices(m)) for m in _minimal_sets(G, r, budget)[i]]


# -- single query -----------------------------------------------------------


def _assign(candidates, query, budget):
    """Pick one candidate mask per query slot, pairwise disjoint.

    Slots are visited most-constrained first; repeated indices take
    candidates in increasing position to avoid permuted duplicates.
    Returns (masks per slot or None, expansions used).
    """
    # repeated indices stay adjacent so the increasing-position rule is sound
    order = sorted(range(len(query)), key=lambda s: (len(candidates[query[s]]), query[s], s))
    chosen: list[int | None] = [None] * len(query)
    expansions = 0

    def dfs(depth: int, used: int, last_pos: dict[int, int]) -> bool:
        nonlocal expansions
        if depth == len(order):
            return True
        slot = order[depth]
        i = query[slot]
        cands = candidates[i]
        for pos in range(last_pos.get(i, -1) + 1, len(cands)):
            expansions += 1
            if expansions > budget:
                raise SearchBudgetExceeded(
                    f"query search exceeded {budget} expansions", query=tuple(query)
                )
            m = cands[pos]
            if m & used:
                continue
            chosen[slot] = m
            prev = last_pos.get(i)
            last_pos[i] = pos
            if dfs(depth + 1, used | m, last_pos):
                return True
            if prev is None:
                del last_pos[i]
            else:
                last_pos[i] = prev
        chosen[slot] = None
        return False

    found = dfs(0, 0, {})
    return (chosen if found else None), expansions


def supports_query(
    G: BitMatrix, query, r: int, budget: int = DEFAULT_BUDGET
) -> RecoveryCertificate | None:
    """Certificate of ``t`` disjoint recovery sets for ``query``, or None.

    None is a proof of absence; running out of budget raises
    :class:`SearchBudgetExceeded` instead.
    """
    if not isinstance(query, QueryMultiset):
        query = QueryMultiset(query, G.nrows)
    elif query.indices[-1] >= G.nrows:
        raise InvalidParams("query index out of range")
    candidates = _minimal_sets(G, r, budget)
    masks, _ = _assign(candidates, list(query.indices), budget)
    if masks is None:
        return None
    return RecoveryCertificate(query, tuple(tuple(_mask_to_indices(m)) for m in masks))


def _queries(k: int, t: int, mode: str):
    if mode == "batch":
        return combinations_with_replacement(range(k), t)
    if mode == "pir":
        return ((i,) * t for i in range(k))
    raise InvalidParams(f"unknown mode {mode!r}")


def find_failure(
    G: BitMatrix, r: int, t: int, mode: str = "batch", budget: int = DEFAULT_BUDGET
) -> tuple[int, ...] | None:
    """First query (sorted order) that cannot be served, or None."""
    if t < 1:
        raise InvalidParams("t must be >= 1")
    candidates = _minimal_sets(G, r, budget)
    for q in _queries(G.nrows, t, mode):
        masks, _ = _assign(candidates, list(q), budget)
        if masks is None:
            return q
    return None


def certificates(
    G: BitMatrix, r: int, t: int, mode: str = "batch", budget: int = DEFAULT_BUDGET
):
    """Yield a certificate (or None) for every query in sorted order."""
    for q in _queries(G.nrows, t, mode):
        yield QueryMultiset(q), supports_query(G, QueryMultiset(q), r, budget)


def is_batch(G: BitMatrix, r: int, t: int, budget: int = DEFAULT_BUDGET) -> bool:
    return find_failure(G, r, t, "batch", budget) is None


def is_pir(G: BitMatrix, r: int, t: int, budget: int = DEFAULT_BUDGET) -> bool:
    return find_failure(G, r, t, "pir", budget) is None


def max_t(G: BitMatrix, r: int, mode: str = "batch", budget: int = DEFAULT_BUDGET) -> MaxT:
    """Largest ``t`` for which the mode predicate holds.

    The predicate is monotone in ``t``, so t is raised until the first
    failure.  A budget overrun stops the climb and marks the result inexact.
    """
    best = 0
    for t in range(1, G.ncols + 1):
        try:
            ok = find_failure(G, r, t, mode, budget) is None
        except SearchBudgetExceeded:
            return MaxT(best, exact=False)
        if not ok:
            break
        best = t
    return MaxT(best, exact=True)
