"""Binary linear algebra on bit-packed matrices.

Rows are stored as Python ints, bit ``j`` of row ``i`` holding entry
``(i, j)``.  Column masks (bit ``i`` = row ``i``) are derived lazily and
cached, since the verifier works column-wise.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from itertools import combinations

import numpy as np

from .errors import DimensionTooLarge, MatrixFormatError, RankDeficient

MIN_DISTANCE_MAX_ROWS = 24


class BitMatrix:
    """Immutable dense binary matrix."""

    __slots__ = ("_rows", "_ncols", "_cols")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(int(r) for r in rows)
        if len(rows) < 1:
            raise ValueError("a BitMatrix needs at least one row")
        if ncols < 0:
            raise ValueError("ncols must be non-negative")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row value {r:#x} does not fit in {ncols} columns")
        self._rows = rows
        self._ncols = ncols
        self._cols: tuple[int, ...] | None = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_array(cls, array) -> BitMatrix:
        arr = np.asarray(array)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        nrows, ncols = arr.shape
        rows = []
        for i in range(nrows):
            value = 0
            for j in np.flatnonzero(arr[i]):
                value |= 1 << int(j)
            rows.append(value)
        return cls(rows, ncols)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> BitMatrix:
        """Build from lines such as ``["1010", "0111"]``."""
        if not lines:
            raise ValueError("no rows given")
        ncols = len(lines[0])
        rows = []
        for line in lines:
            if len(line) != ncols or set(line) - {"0", "1"}:
                raise ValueError(f"bad row {line!r}")
            rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> BitMatrix:
        """Build from column masks (bit ``i`` = row ``i``)."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if col >> nrows:
                raise ValueError(f"column {j} does not fit in {nrows} rows")
            i = 0
            while col:
                if col & 1:
                    rows[i] |= 1 << j
                col >>= 1
                i += 1
        return cls(rows, len(columns))

    @classmethod
    def identity(cls, k: int) -> BitMatrix:
        return cls([1 << i for i in range(k)], k)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls([0] * nrows, ncols)

    # -- accessors ----------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), self._ncols

    @property
    def row_masks(self) -> tuple[int, ...]:
        return self._rows

    @property
    def column_masks(self) -> tuple[int, ...]:
        if self._cols is None:
            cols = [0] * self._ncols
            for i, row in enumerate(self._rows):
                bit = 1 << i
                j = 0
                while row:
                    if row & 1:
                        cols[j] |= bit
                    row >>= 1
                    j += 1
            self._cols = tuple(cols)
        return self._cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= j < self._ncols):
            raise IndexError(j)
        return (self._rows[i] >> j) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, row in enumerate(self._rows):
            for j in range(self._ncols):
                if (row >> j) & 1:
                    out[i, j] = 1
        return out

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def column_weights(self) -> list[int]:
        return [c.bit_count() for c in self.column_masks]

    def transpose(self) -> BitMatrix:
        if self._ncols == 0:
            raise ValueError("cannot transpose a matrix with no columns")
        return BitMatrix(self.column_masks, len(self._rows))

    def columns(self, indices: Iterable[int]) -> BitMatrix:
        """Submatrix made of the given columns, in the given order."""
        cols = self.column_masks
        return BitMatrix.from_columns([cols[j] for j in indices], self.nrows)

    def hstack(self, *others: BitMatrix) -> BitMatrix:
        rows = list(self._rows)
        width = self._ncols
        for other in others:
            if other.nrows != self.nrows:
                raise ValueError("row counts differ")
            rows = [r | (o << width) for r, o in zip(rows, other._rows)]
            width += other._ncols
        return BitMatrix(rows, width)

    def is_systematic(self) -> bool:
        """True when the first ``nrows`` columns form the identity."""
        k = self.nrows
        if self._ncols < k:
            return False
        mask = (1 << k) - 1
        return all((row & mask) == (1 << i) for i, row in enumerate(self._rows))

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._rows, self._ncols))

    def __repr__(self) -> str:
        return f"BitMatrix(shape={self.shape})"

    def to_strings(self) -> list[str]:
        return [
            "".join("1" if (row >> j) & 1 else "0" for j in range(self._ncols))
            for row in self._rows
        ]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


# -- text format ------------------------------------------------------------


def format_matrix(M: BitMatrix, header: str | None = None) -> str:
    """Serialize as ``k n`` followed by ``k`` rows of 0/1 characters."""
    lines = []
    if header:
        lines.append(header if header.startswith("#") else f"# {header}")
    lines.append(f"{M.nrows} {M.ncols}")
    lines.extend(M.to_strings())
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BitMatrix:
    lines = [ln.rstrip("\r") for ln in text.splitlines()]
    lines = [ln for ln in lines if not ln.startswith("#")]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MatrixFormatError("empty matrix file")
    parts = lines[0].split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise MatrixFormatError(f"bad header line {lines[0]!r}; expected 'k n'")
    k, n = int(parts[0]), int(parts[1])
    if k < 1:
        raise MatrixFormatError("k must be at least 1")
    body = lines[1:]
    if len(body) != k:
        raise MatrixFormatError(f"expected {k} rows, found {len(body)}")
    for lineno, line in enumerate(body, start=2):
        if len(line) != n:
            raise MatrixFormatError(f"line {lineno}: expected {n} characters, got {len(line)}")
        if set(line) - {"0", "1"}:
            raise MatrixFormatError(f"line {lineno}: characters other than 0/1")
    if n == 0:
        return BitMatrix.zeros(k, 0)
    return BitMatrix.from_strings(body)


def read_matrix(path) -> BitMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, M: BitMatrix, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(M, header))


# -- operations -------------------------------------------------------------


def _rank_of_masks(masks: Iterable[int]) -> int:
    # xor basis keyed by leading bit
    basis: dict[int, int] = {}
    for v in masks:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def rank(M: BitMatrix) -> int:
    """Rank over GF(2)."""
    return _rank_of_masks(M.row_masks)


def _check_columns(M: BitMatrix, S: Iterable[int]) -> list[int]:
    cols = list(S)
    if len(set(cols)) != len(cols):
        raise ValueError("column set contains duplicates")
    for j in cols:
        if not (0 <= j < M.ncols):
            raise ValueError(f"column index {j} out of range for width {M.ncols}")
    return cols


def column_sum_mask(M: BitMatrix, S: Iterable[int]) -> int:
    cols = M.column_masks
    acc = 0
    for j in _check_columns(M, S):
        acc ^= cols[j]
    return acc


def column_sum(M: BitMatrix, S: Iterable[int]) -> np.ndarray:
    """XOR of the columns indexed by ``S`` as a length-``nrows`` 0/1 vector."""
    acc = column_sum_mask(M, S)
    return np.array([(acc >> i) & 1 for i in range(M.nrows)], dtype=np.uint8)


def _span(rows: Sequence[int]) -> np.ndarray:
    """All 2**len(rows) combinations of ``rows`` as multiword uint64 arrays."""
    width = max((r.bit_length() for r in rows), default=0)
    nwords = max(1, (width + 63) // 64)
    words = np.array(
        [[(r >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nwords)] for r in rows],
        dtype=np.uint64,
    ).reshape(len(rows), nwords)
    span = np.zeros((1, nwords), dtype=np.uint64)
    for vec in words:
        span = np.concatenate([span, span ^ vec])
    return span


def min_distance(G: BitMatrix) -> int:
    """Minimum Hamming weight over all nonzero codewords of a full-rank ``G``."""
    k = G.nrows
    if k > MIN_DISTANCE_MAX_ROWS:
        raise DimensionTooLarge(f"min_distance enumerates 2**k codewords; k={k} > {MIN_DISTANCE_MAX_ROWS}")
    if rank(G) != k:
        raise RankDeficient("generator matrix is not of full row rank")
    rows = G.row_masks
    half = k // 2
    low = _span(rows[:half])
    high = _span(rows[half:])
    if low.shape[1] != high.shape[1]:
        nwords = max(low.shape[1], high.shape[1])
        low = np.pad(low, ((0, 0), (0, nwords - low.shape[1])))
        high = np.pad(high, ((0, 0), (0, nwords - high.shape[1])))
    low_weights = np.bitwise_count(low).sum(axis=1, dtype=np.int64)
    # high[0] is the zero vector: skip the all-zero codeword there
    best = int(low_weights[1:].min()) if len(low_weights) > 1 else G.ncols + 1
    for vec in high[1:]:
        w = int(np.bitwise_count(low ^ vec).sum(axis=1, dtype=np.int64).min())
        if w < best:
            best = w
    return best


def has_one_square(M: BitMatrix) -> bool:
    """True iff two distinct columns share two or more support rows."""
    seen: set[tuple[int, int]] = set()
    for col in M.column_masks:
        support = [i for i in range(M.nrows) if (col >> i) & 1]
        for pair in combinations(support, 2):
            if pair in seen:
                return True
        seen.update(combinations(support, 2))
    return False


def projection_dimension(G: BitMatrix, I: Iterable[int]) -> int:
    """Rank of the columns ``I``; for a linear code this is H(I) in q-ary symbols."""
    cols = G.column_masks
    return _rank_of_masks(cols[j] for j in _check_columns(G, I))


def unit_vector_mask(i: int) -> int:
    return 1 << i
