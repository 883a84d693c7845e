"""Exact largest dimension of binary linear codes, by exhaustive search.

An ``[n, n-m, >=d]`` binary code exists iff there are ``n`` vectors in
``F_2^m`` spanning the space with every ``d-1`` of them linearly
independent (the columns of a parity-check matrix).  A spanning set
contains a basis, which we fix to the unit vectors; the search then adds
``n-m`` further columns in increasing order.
"""

from __future__ import annotations

import csv
import io
from functools import lru_cache
from importlib import resources

KOPT_MAX_N = 14


def griesmer_min_length(q: int, k: int, d: int) -> int:
    """Smallest length a linear ``[n, k, d]_q`` code can have: sum of ceil(d / q**i)."""
    return sum(-(-d // q**i) for i in range(k))


def griesmer_max_k(q: int, n: int, d: int) -> int:
    """Largest ``k`` whose Griesmer length fits in ``n`` (0 if even k=1 does not)."""
    k = 0
    while griesmer_min_length(q, k + 1, d) <= n:
        k += 1
    return k


def _parity_columns_exist(n: int, m: int, d: int) -> bool:
    """Whether ``n`` columns in F_2^m, basis included, have every d-1 independent."""
    extra = n - m
    if extra <= 0:
        return extra == 0
    depth = d - 2  # a new column must avoid every sum of <= d-2 chosen columns
    basis = [1 << i for i in range(m)]
    sums = [{0}]
    for j in range(1, depth + 1):
        sums.append(sums[j - 1] | {a ^ b for a in sums[j - 1] for b in basis})
    candidates = [v for v in range(1, 1 << m) if v not in sums[depth]]

    def add(levels: list[set[int]], v: int) -> list[set[int]]:
        new = [levels[0]]
        for j in range(1, depth + 1):
            new.append(levels[j] | {a ^ v for a in levels[j - 1]})
        return new

    def search(levels: list[set[int]], start: int, need: int) -> bool:
        if need == 0:
            return True
        forbidden = levels[depth]
        pool = [v for v in candidates[start:] if v not in forbidden]
        if len(pool) < need:
            return False
        for idx, v in enumerate(candidates[start:], start=start):
            if v in forbidden:
                continue
            if len(candidates) - idx < need:
                break
            if search(add(levels, v), idx + 1, need - 1):
                return True
        return False

    # coordinates may be permuted, so the first extra column is 1...10...0
    first = [(1 << w) - 1 for w in range(d - 1, m + 1)]
    for v in first:
        if v in sums[depth]:
            continue
        idx = candidates.index(v)
        if search(add(sums, v), idx + 1, extra - 1):
            return True
    return False


@lru_cache(maxsize=None)
def kopt_exact(n: int, d: int) -> int:
    """Largest ``k`` of a binary linear code of length ``n`` and distance >= ``d``."""
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    if d == 1:
        return n
    if d == 2:
        return n - 1
    for k in range(griesmer_max_k(2, n, d), 0, -1):
        if _parity_columns_exist(n, n - k, d):
            return k
    return 0


def generate_table(n_max: int, d_max: int | None = None) -> list[tuple[int, int, int, int]]:
    """Rows ``(q, n, d, k)`` for q = 2, 1 <= d <= min(n, d_max), n <= n_max."""
    if n_max > KOPT_MAX_N:
        raise ValueError(f"n_max is capped at {KOPT_MAX_N}")
    rows = []
    for n in range(1, n_max + 1):
        top = n if d_max is None else min(n, d_max)
        for d in range(1, top + 1):
            rows.append((2, n, d, kopt_exact(n, d)))
    return rows


def table_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "n", "d", "k"])
    writer.writerows(rows)
    return buf.getvalue()


@lru_cache(maxsize=1)
def embedded_table() -> dict[tuple[int, int, int], int]:
    """The checked-in ``q,n,d,k`` table."""
    text = resources.files("batchcodes").joinpath("data/kopt_q2.csv").read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO(text))
    return {(int(r["q"]), int(r["n"]), int(r["d"])): int(r["k"]) for r in reader}
