"""Generator matrices for the systematic binary batch/PIR code families.

Every constructor returns ``G = [I_k | parity]`` as a :class:`BitMatrix`.
Structural postconditions (lengths, row/column weights, absence of
1-squares) are asserted before returning; the batch/PIR property itself
is left to :mod:`batchcodes.verifier`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .errors import (
    ConstructionInfeasible,
    DimensionTooLarge,
    InvalidParams,
    NoConstructionKnown,
)
from .gf2core import BitMatrix, has_one_square

SIMPLEX_MAX_M = 10
DFS_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class CodeParams:
    """Parameters of an ``(n, k, r, t)`` code; ``n`` and ``d`` may be unknown."""

    k: int
    r: int
    t: int
    n: int | None = None
    d: int | None = None
    q: int = 2
    systematic: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParams("k must be >= 1")
        if self.r < 1 or self.t < 1:
            raise InvalidParams("r and t must be >= 1")
        if self.q < 2:
            raise InvalidParams("q must be >= 2")
        if self.n is not None and self.n < self.k:
            raise InvalidParams("n must be >= k")
        if self.d is not None:
            if self.n is None:
                raise InvalidParams("d given without n")
            if not 1 <= self.d <= self.n - self.k + 1:
                raise InvalidParams("d must satisfy 1 <= d <= n - k + 1")


@dataclass(frozen=True)
class RemainderParams:
    """Derived quantities for ``r`` not dividing ``k``."""

    s: int
    tau: int
    eta: int
    gamma: int
    zeta: int

    @classmethod
    def from_kr(cls, k: int, r: int) -> RemainderParams:
        m = k // r
        return cls(
            s=k % r,
            tau=min(r - k % r, m),
            eta=min(r - 1, m),
            gamma=min(r, m),
            zeta=max(ceil(k / r), r),
        )


def remainder_length(k: int, r: int) -> int:
    """Closed-form length of the ``t = 3``, ``r`` not dividing ``k`` family.

    When no rows are left for the C block (only possible if ``k < r``) the
    block is empty, which settles the otherwise undefined ``0/0`` term.
    """
    p = RemainderParams.from_kr(k, r)
    m = k // r
    leftover = (k - p.s) - p.tau - p.eta * p.s
    c_cols = 0 if leftover == 0 else -(-leftover // p.gamma)
    return (r + 1) * m + 2 * p.s + 1 + c_cols


def divisible_length(k: int, r: int, t: int) -> int:
    m = k // r
    return (r + 1) * m + (t - 2) * max(m, r)


def r2_length(k: int, t: int) -> int:
    if k == 2 and t in (3, 4):
        return {3: 5, 4: 7}[t]
    if k == 3 and t == 4:
        return 9
    return k + ceil((t - 1) * k / 2)


# -- helpers ----------------------------------------------------------------


def _systematic(k: int, parity_columns: list[int]) -> BitMatrix:
    return BitMatrix.from_columns([1 << i for i in range(k)] + parity_columns, k)


def _block_columns(k: int, r: int, nblocks: int) -> list[int]:
    return [sum(1 << i for i in range(j * r, min(k, (j + 1) * r))) for j in range(nblocks)]


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise ConstructionInfeasible(f"postcondition failed: {what}")


def _cells_hit_distinct_blocks(col: int, r: int) -> bool:
    blocks = [i // r for i in range(col.bit_length()) if (col >> i) & 1]
    return len(blocks) == len(set(blocks))


# -- t = 2 ------------------------------------------------------------------


def construct_t2(k: int, r: int) -> BitMatrix:
    """Identity plus one all-ones parity column per block of ``r`` rows.

    The last block holds ``k mod r`` rows when ``r`` does not divide ``k``.
    Length ``k + ceil(k/r)``, which meets the ``t = 2`` lower bound.
    """
    if k < 1 or r < 2:
        raise InvalidParams("construct_t2 needs k >= 1 and r >= 2")
    G = _systematic(k, _block_columns(k, r, ceil(k / r)))
    _check(G.ncols == k + ceil(k / r), "length k + ceil(k/r)")
    return G


# -- r = 2 ------------------------------------------------------------------

# k in {2, 3} cannot host a (t-1)-regular simple graph for t = 3, 4 (except
# the triangle), so these parity blocks are fixed by hand.
_R2_SPECIAL = {
    (2, 3): ["101", "011"],
    (2, 4): ["10101", "01011"],
    (3, 3): ["101", "110", "011"],
    (3, 4): ["100101", "010110", "001011"],
}


def _regular_graph_edges(k: int, degree: int) -> tuple[list[tuple[int, int]], int | None]:
    """Edges of a ``degree``-regular simple graph on ``k`` vertices.

    Circulant pattern; for odd ``k`` and odd ``degree`` one vertex is left
    one short and returned as the deficient vertex.
    """
    half = degree // 2
    edges = set()
    for offset in range(1, half + 1):
        for i in range(k):
            edges.add(tuple(sorted((i, (i + offset) % k))))
    deficient = None
    if degree % 2:
        if k % 2 == 0:
            for i in range(k // 2):
                edges.add((i, i + k // 2))
        else:
            h = (k - 1) // 2
            for i in range(h):
                edges.add((i, i + h))
            deficient = k - 1
    return sorted(edges), deficient


def construct_r2(k: int, t: int) -> BitMatrix:
    """``[I_k | A]`` where ``A`` is the incidence matrix of a (t-1)-regular graph.

    Columns of weight 2 with no 1-square are exactly edges of a simple
    graph, so any (t-1)-regular simple graph gives a valid ``A``.
    """
    if k < 2:
        raise InvalidParams("construct_r2 needs k >= 2")
    t_max = max(ceil(k / 2), 2) + 2
    if not 2 <= t <= t_max:
        raise InvalidParams(f"construct_r2 needs 2 <= t <= {t_max} for k={k}")
    if (k, t) in _R2_SPECIAL:
        parity = BitMatrix.from_strings(_R2_SPECIAL[(k, t)])
        G = BitMatrix.identity(k).hstack(parity)
        _check(G.ncols == r2_length(k, t), "special-case length")
        return G
    if t - 1 > k - 1:
        raise InvalidParams(f"no {t - 1}-regular simple graph on {k} vertices")

    edges, deficient = _regular_graph_edges(k, t - 1)
    parity = [(1 << a) | (1 << b) for a, b in edges]
    if deficient is not None:
        parity.append(1 << deficient)
    G = _systematic(k, parity)
    A = BitMatrix.from_columns(parity, k)
    _check(G.ncols == r2_length(k, t), "length k + ceil((t-1)k/2)")
    _check(all(w == t - 1 for w in A.row_weights()), "row weights t-1")
    _check(not has_one_square(A), "no 1-square in A")
    return G


# -- r | k ------------------------------------------------------------------


class _GF:
    """Addition and multiplication tables of the field with ``q`` elements."""

    def __init__(self, q: int):
        p, e = _prime_power(q)
        self.q = q
        digits = [[(x // p**i) % p for i in range(e)] for x in range(q)]

        def encode(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        self.add = [[encode([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)] for x in range(q)]
        modulus = _irreducible(p, e)

        def mul(x, y):
            prod = [0] * (2 * e - 1)
            for i, a in enumerate(digits[x]):
                for j, b in enumerate(digits[y]):
                    prod[i + j] = (prod[i + j] + a * b) % p
            for deg in range(2 * e - 2, e - 1, -1):
                coef = prod[deg]
                if coef:
                    for i, mcoef in enumerate(modulus):
                        prod[deg - e + i] = (prod[deg - e + i] - coef * mcoef) % p
            return encode(prod[:e])

        self.mul = [[mul(x, y) for y in range(q)] for x in range(q)]


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            e, rest = 0, q
            while rest % p == 0:
                rest //= p
                e += 1
            if rest != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _is_prime_power(q: int) -> bool:
    try:
        _prime_power(q)
    except ValueError:
        return False
    return q >= 2


def _irreducible(p: int, e: int) -> list[int]:
    """Coefficients (low to high, monic) of the first irreducible of degree ``e``."""
    if e == 1:
        return [0, 1]
    for code in range(p**e):
        coeffs = [(code // p**i) % p for i in range(e)] + [1]
        if coeffs[0] == 0:
            continue
        if not any(_poly_divides(cand, coeffs, p) for d in range(1, e // 2 + 1) for cand in _monics(p, d)):
            return coeffs
    raise ValueError("no irreducible polynomial found")


def _monics(p: int, d: int):
    for code in range(p**d):
        yield [(code // p**i) % p for i in range(d)] + [1]


def _poly_divides(div: list[int], poly: list[int], p: int) -> bool:
    rem = list(poly)
    dd = len(div) - 1
    for deg in range(len(rem) - 1, dd - 1, -1):
        coef = rem[deg]
        if coef:
            for i, c in enumerate(div):
                rem[deg - dd + i] = (rem[deg - dd + i] - coef * c) % p
    return not any(rem[:dd])


def _b_pattern(k: int, r: int, t: int) -> list[int] | None:
    """Affine-line pattern for B, one parallel class per unit of ``t - 2``.

    With ``m = k/r`` blocks, rows are cells ``(block, offset)``.  For
    ``m <= r`` lines are ``offset = c + s*block`` over the field of order
    ``r``; for ``m > r`` they are ``block = c + s*offset`` over the field of
    order ``m`` with nonzero slopes.  Returns None when the field does not
    exist or there are not enough slopes.
    """
    m = k // r
    groups = t - 2
    cols = []
    if m <= r:
        if not _is_prime_power(r) or groups > r:
            return None
        F = _GF(r)
        for s in range(groups):
            for c in range(r):
                cols.append(sum(1 << (j * r + F.add[c][F.mul[s][j]]) for j in range(m)))
    else:
        if not _is_prime_power(m) or groups > m - 1:
            return None
        F = _GF(m)
        for s in range(1, groups + 1):
            for c in range(m):
                cols.append(sum(1 << (F.add[c][F.mul[s][o]] * r + o) for o in range(r)))
    return cols


def _b_search(k: int, r: int, t: int, budget: int = DFS_NODE_BUDGET) -> list[int]:
    """Depth-first search for B when the transversal pattern collides.

    Each new column contains the lowest row still below degree ``t - 2``,
    which loses no solutions and breaks column-order symmetry.
    """
    m = k // r
    weight = min(r, m)
    total = max(m, r) * (t - 2)
    target = t - 2
    degree = [0] * k
    partners = [0] * k  # rows already sharing a B column with each row
    cols: list[int] = []
    nodes = 0

    def extend(chosen: list[int], blocks: int, forbid: int, start: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ConstructionInfeasible(f"B search exceeded {budget} nodes for k={k}, r={r}, t={t}")
        if len(chosen) == weight:
            yield list(chosen)
            return
        for row in range(start, k):
            if degree[row] >= target or (blocks >> (row // r)) & 1 or (forbid >> row) & 1:
                continue
            chosen.append(row)
            yield from extend(chosen, blocks | (1 << (row // r)), forbid | partners[row], row + 1)
            chosen.pop()

    def place() -> bool:
        if len(cols) == total:
            return all(d == target for d in degree)
        first = next(i for i in range(k) if degree[i] < target)
        for rows in extend([first], 1 << (first // r), partners[first], first + 1):
            mask = sum(1 << i for i in rows)
            for i in rows:
                degree[i] += 1
                partners[i] |= mask
            cols.append(mask)
            if place():
                return True
            cols.pop()
            for i in rows:
                degree[i] -= 1
                partners[i] = 0
                for other in cols:
                    if (other >> i) & 1:
                        partners[i] |= other
        return False

    if not place():
        raise ConstructionInfeasible(
            f"no B block exists for k={k}, r={r}, t={t}: search exhausted"
        )
    return cols


def _b_valid(k: int, r: int, t: int, A: list[int], B: list[int]) -> bool:
    m = k // r
    if any(c.bit_count() != min(r, m) or not _cells_hit_distinct_blocks(c, r) for c in B):
        return False
    AB = BitMatrix.from_columns(A + B, k)
    if any(w != t - 1 for w in AB.row_weights()):
        return False
    return not has_one_square(AB)


def construct_divisible(k: int, r: int, t: int) -> BitMatrix:
    """``[I_k | A | B]`` for ``r | k``: block parities plus a 1-square-free B.

    ``A`` has one all-ones column per block of ``r`` rows.  ``B`` has
    ``(t-2)·max(k/r, r)`` columns of weight ``min(r, k/r)`` with every row
    of weight ``t - 2`` and no 1-square in ``[A | B]``.
    """
    if r < 3:
        raise InvalidParams("construct_divisible needs r >= 3 (use construct_r2 for r = 2)")
    if k < 1 or k % r:
        raise InvalidParams("construct_divisible needs r | k")
    m = k // r
    zeta = max(m, r)
    if not 2 < t <= zeta + 2:
        raise InvalidParams(f"construct_divisible needs 2 < t <= {zeta + 2}")
    A = _block_columns(k, r, m)
    B = _b_pattern(k, r, t)
    if B is None or not _b_valid(k, r, t, A, B):
        B = _b_search(k, r, t)
    _check(_b_valid(k, r, t, A, B), "B weights and no 1-square in [A|B]")
    G = _systematic(k, A + B)
    _check(G.ncols == divisible_length(k, r, t), "length (r+1)k/r + (t-2)zeta")
    return G


# -- t = 3, r does not divide k ----------------------------------------------


def construct_t3_remainder(k: int, r: int) -> BitMatrix:
    """``[I_k | A | B | C]`` for ``t = 3`` when ``r`` does not divide ``k``.

    ``B1`` ones are spread over blocks as evenly as possible so that the
    leftover rows split into ``C`` columns of ``gamma`` ones each.
    """
    if r < 3:
        raise InvalidParams("construct_t3_remainder needs r >= 3")
    if k < 1 or k % r == 0:
        raise InvalidParams("construct_t3_remainder needs r not dividing k")
    p = RemainderParams.from_kr(k, r)
    m = k // r
    s = p.s

    A = _block_columns(k, r, m)

    used = [0] * m
    b1 = []
    for weight in [p.tau] + [p.eta] * s:
        blocks = sorted(range(m), key=lambda j: (used[j], j))[:weight]
        col = 0
        for j in sorted(blocks):
            col |= 1 << (j * r + used[j])
            used[j] += 1
        b1.append(col)
    tail = [k - s + i for i in range(s)]
    B = [b1[0] | sum(1 << i for i in tail)] + [b1[1 + i] | (1 << tail[i]) for i in range(s)]

    free = [list(range(j * r + used[j], (j + 1) * r)) for j in range(m)]
    C = []
    while any(free):
        blocks = sorted((j for j in range(m) if free[j]), key=lambda j: (-len(free[j]), j))
        col = 0
        for j in blocks[: p.gamma]:
            col |= 1 << free[j].pop(0)
        C.append(col)

    G = _systematic(k, A + B + C)
    ABC = BitMatrix.from_columns(A + B + C, k)
    _check(G.ncols == remainder_length(k, r), "closed-form length")
    _check(all(w == 2 for w in ABC.row_weights()), "row weight 2 in [A|B|C]")
    _check(all(c.bit_count() == p.gamma for c in C[:-1]), "C columns of weight gamma")
    _check(not has_one_square(BitMatrix.from_columns(B + C, k)), "no 1-square in [B|C]")
    _check(all(_cells_hit_distinct_blocks(c, r) for c in b1 + C), "one 1 per block")
    return G


# -- simplex ----------------------------------------------------------------


def construct_simplex(m: int) -> BitMatrix:
    """All ``2**m - 1`` nonzero ``m``-bit columns, in increasing binary order."""
    if m < 2:
        raise InvalidParams("simplex code needs m >= 2")
    if m > SIMPLEX_MAX_M:
        raise DimensionTooLarge(f"m={m} exceeds {SIMPLEX_MAX_M}")
    return BitMatrix.from_columns(list(range(1, 1 << m)), m)


# -- dispatcher -------------------------------------------------------------


@dataclass(frozen=True)
class Construction:
    family: str
    matrix: BitMatrix
    params: CodeParams

    @property
    def n(self) -> int:
        return self.matrix.ncols

    @property
    def mode(self) -> str:
        """Property the family is claimed to have at its ``t``."""
        return "batch" if self.params.t <= 4 else "pir"

    def header(self) -> str:
        p = self.params
        return f"# family={self.family} k={p.k} r={p.r} t={p.t} n={self.n}"


FAMILIES = ("identity", "t2", "r2", "divisible", "t3_remainder")

FAMILY_SHAPES = (
    "t=1 (identity), any r",
    "t=2, r>=2",
    "r=2, 2<=t<=max(ceil(k/2),2)+2, k>=2",
    "r>=3, r|k, 2<t<=max(k/r,r)+2",
    "t=3, r>=3, r does not divide k",
)


def choose_family(params: CodeParams) -> str:
    k, r, t = params.k, params.r, params.t
    if params.q != 2:
        raise NoConstructionKnown("only binary constructions are available")
    if t == 1:
        return "identity"
    if t == 2 and r >= 2:
        return "t2"
    if r == 2 and k >= 2 and t <= max(ceil(k / 2), 2) + 2:
        return "r2"
    if r >= 3 and k % r == 0 and 2 < t <= max(k // r, r) + 2:
        return "divisible"
    if r >= 3 and t == 3 and k % r:
        return "t3_remainder"
    raise NoConstructionKnown(
        f"no family covers k={k}, r={r}, t={t}; known shapes: " + "; ".join(FAMILY_SHAPES)
    )


def construct(params: CodeParams) -> Construction:
    family = choose_family(params)
    k, r, t = params.k, params.r, params.t
    if family == "identity":
        G = BitMatrix.identity(k)
    elif family == "t2":
        G = construct_t2(k, r)
    elif family == "r2":
        G = construct_r2(k, t)
    elif family == "divisible":
        G = construct_divisible(k, r, t)
    else:
        G = construct_t3_remainder(k, r)
    return Construction(family, G, params)
