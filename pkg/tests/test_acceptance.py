"""Exit criteria.  Each test carries an ``acceptance`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""

import csv
import io
import math
import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

import pytest

from batchcodes import bounds
from batchcodes.cli import main
from batchcodes.constructions import (
    construct_divisible,
    construct_r2,
    construct_t2,
    construct_t3_remainder,
)
from batchcodes.errors import ConditionViolated
from batchcodes.gf2core import BitMatrix, min_distance, projection_dimension
from batchcodes.kopt import embedded_table, griesmer_max_k
from batchcodes.verifier import is_batch, is_pir, supports_query

acceptance = pytest.mark.acceptance


def ceil_div(a, b):
    return -(-a // b)


def constructed_codes():
    """(G, r, t, mode) for every code built in criteria 1 to 6."""
    out = [(construct_t2(k, r), r, 2, "batch") for k in range(1, 13) for r in range(2, 6)]
    out += [
        (construct_r2(5, 3), 2, 3, "batch"),
        (construct_r2(5, 4), 2, 4, "batch"),
        (construct_divisible(8, 4, 3), 4, 3, "batch"),
        (construct_divisible(12, 3, 5), 3, 5, "pir"),
        (construct_t3_remainder(11, 3), 3, 3, "batch"),
    ]
    return out


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


# -- 1 ----------------------------------------------------------------------


@acceptance(1, "t=2 codes have n = k + ceil(k/r) and are batch (k<=12, 2<=r<=5)")
def test_t2_optimal_length():
    for k, r in product(range(1, 13), range(2, 6)):
        G = construct_t2(k, r)
        assert G.ncols == k + ceil_div(k, r)
        assert is_batch(G, r, 2)


# -- 2 to 6 -----------------------------------------------------------------


@acceptance(2, "5x10 printed matrix and construction are batch r=2 t=3")
def test_k5_t3(example):
    assert is_batch(example(1), 2, 3)
    G = construct_r2(5, 3)
    assert G.ncols == 10 and is_batch(G, 2, 3)


@acceptance(3, "5x13 printed matrix and construction are batch r=2 t=4")
def test_k5_t4(example):
    assert example(2).shape == (5, 13)
    assert is_batch(example(2), 2, 4)
    G = construct_r2(5, 4)
    assert G.ncols == 13 and is_batch(G, 2, 4)


@acceptance(4, "8x14 printed matrix and construction are batch r=4 t=3")
def test_k8_r4(example):
    assert example(3).shape == (8, 14)
    assert is_batch(example(3), 4, 3)
    G = construct_divisible(8, 4, 3)
    assert G.ncols == 14 and is_batch(G, 4, 3)


@acceptance(5, "12x28 printed matrix is PIR r=3 t=5")
def test_k12_printed_pir(example):
    # expected to fail: the printed matrix has a 1-square and serves only
    # four disjoint recovery sets for x6 (see the decisions ledger)
    assert is_pir(example(4), 3, 5)


@acceptance(5, "12x28 rate is exactly 3/7 and construction is PIR r=3 t=5")
def test_k12_construction_pir(example):
    G = example(4)
    assert Fraction(G.nrows, G.ncols) == Fraction(3, 7)
    C = construct_divisible(12, 3, 5)
    assert C.shape == (12, 28)
    assert Fraction(C.nrows, C.ncols) == Fraction(3, 7)
    assert is_pir(C, 3, 5)


@acceptance(6, "11x19 printed matrix and construction are batch r=3 t=3")
def test_k11_r3(example):
    assert example(5).shape == (11, 19)
    assert is_batch(example(5), 3, 3)
    G = construct_t3_remainder(11, 3)
    assert G.ncols == 19 and is_batch(G, 3, 3)


# -- 7 ----------------------------------------------------------------------


@acceptance(7, "bounds CLI reports 9 <= B(5,2,3) <= 10 and 11 <= B(5,2,4) <= 13")
def test_bound_sandwich(capsys):
    code, out = cli(capsys, "bounds", "-k", 5, "-r", 2, "-t", 3)
    assert code == 0 and out.splitlines()[-1] == "lower=9 upper=10"
    code, out = cli(capsys, "bounds", "-k", 5, "-r", 2, "-t", 4)
    assert code == 0 and out.splitlines()[-1] == "lower=11 upper=13"


# -- 8 to 10 ----------------------------------------------------------------


@acceptance(8, "every constructed code has d >= t")
def test_distance_at_least_t():
    for G, r, t, mode in constructed_codes():
        check = is_batch if mode == "batch" else is_pir
        assert check(G, r, t)
        assert min_distance(G) >= t, (G.shape, r, t)


@acceptance(9, "k <= recursive dimension bound for constructed batch codes; tight for t=2 k=4 r=2")
def test_dimension_bound_consistency():
    checked = skipped = 0
    for G, r, t, mode in constructed_codes():
        if mode != "batch":
            continue
        d = min_distance(G)
        try:
            rep = bounds.cm_dimension_bound_recursive(G.ncols, r, t, d, 2)
        except ConditionViolated:
            # n - r < d: no admissible beta, the bound says nothing
            assert G.ncols - r < d
            skipped += 1
            continue
        assert G.nrows <= rep.value
        checked += 1
    print(f"dimension bound checked on {checked} codes, {skipped} without admissible beta")
    assert checked
    G = construct_t2(4, 2)
    assert bounds.cm_dimension_bound_recursive(G.ncols, 2, 2, min_distance(G), 2).value == 4


@acceptance(10, "union of t disjoint recovery sets has rank <= size - (t-1), 100 samples")
def test_union_rank():
    rng = random.Random(20240601)
    codes = constructed_codes()
    for _ in range(100):
        G, r, t, _ = rng.choice(codes)
        i = rng.randrange(G.nrows)
        tt = rng.randint(2, t)
        cert = supports_query(G, (i,) * tt, r)
        assert cert is not None and cert.check(G, r)
        union = cert.union()
        assert projection_dimension(G, union) <= len(union) - (tt - 1)


# -- 11 ---------------------------------------------------------------------


def oracle_batch(cols, k, r, t) -> bool:
    """Unrestricted search: any column subset of size <= r, minimal or not."""
    sets = {i: [] for i in range(k)}
    for size in range(1, r + 1):
        for S in combinations(range(len(cols)), size):
            acc = 0
            for j in S:
                acc ^= cols[j]
            if acc and acc & (acc - 1) == 0:
                mask = 0
                for j in S:
                    mask |= 1 << j
                sets[acc.bit_length() - 1].append(mask)

    def serve(query, used):
        if not query:
            return True
        return any(not m & used and serve(query[1:], used | m) for m in sets[query[0]])

    return all(serve(q, 0) for q in combinations_with_replacement(range(k), t))


def systematic(k, n, parity_bits):
    cols = [1 << i for i in range(k)]
    for c in range(n - k):
        cols.append((parity_bits >> (c * k)) & ((1 << k) - 1))
    return BitMatrix.from_columns(cols, k), cols


def agree(k, n, bits):
    G, cols = systematic(k, n, bits)
    for r, t in product(range(1, 4), range(1, 4)):
        if is_batch(G, r, t) != oracle_batch(cols, k, r, t):
            return (k, n, bits, r, t)
    return None


@acceptance(11, "minimal-set verifier agrees with unrestricted brute force (k<=4, n<=8, r,t<=3)")
def test_verifier_oracle_equivalence():
    # exhaustive where the space is small, 1000 seeded samples elsewhere
    mismatches = []
    exhaustive = 0
    for k, n_max in ((1, 8), (2, 7), (3, 7), (4, 6)):
        for n in range(k, n_max + 1):
            for bits in range(1 << (k * (n - k))):
                exhaustive += 1
                bad = agree(k, n, bits)
                if bad:
                    mismatches.append(bad)
    rng = random.Random(7)
    for _ in range(1000):
        k = rng.randint(1, 4)
        n = rng.randint(k, 8)
        bad = agree(k, n, rng.getrandbits(k * (n - k)) if n > k else 0)
        if bad:
            mismatches.append(bad)
    print(f"oracle comparison: {exhaustive} exhaustive + 1000 sampled matrices")
    assert not mismatches, mismatches[:5]


# -- 12 ---------------------------------------------------------------------


@acceptance(12, "embedded k_opt table obeys Singleton and Griesmer; (7,3)->4, (3,3)->1")
def test_kopt_sanity():
    table = embedded_table()
    for (q, n, d), k in table.items():
        assert k <= n - d + 1
        assert k <= griesmer_max_k(q, n, d)
    assert table[(2, 7, 3)] == 4
    assert table[(2, 3, 3)] == 1


# -- 13 ---------------------------------------------------------------------


def lower_closed(k, r, t):
    return {
        2: k + math.ceil(k / r),
        3: k + 1 + math.ceil((2 * k - 1) / (2 * r - 1)),
        4: k + 2 + math.ceil((3 * k - 2) / (3 * r - 2)),
    }[t]


def upper_closed(k, r, t):
    if t == 2:
        return k + math.ceil(k / r)
    if r == 2:
        return {3: 2 * k, 4: k + math.ceil(3 * k / 2)}[t]
    zeta = max(k // r, r)
    if k % r == 0:
        return (r + 1) * (k // r) + (t - 2) * zeta
    if t == 4:
        return "—"
    s, m = k % r, k // r
    tau, eta, gamma = min(r - s, m), min(r - 1, m), min(r, m)
    rest = (k - s) - tau - eta * s
    # k < r leaves no rows for the last block: its column count is 0
    return (r + 1) * m + 2 * s + 1 + (math.ceil(rest / gamma) if gamma else 0)


@acceptance(13, "table CLI matches the lower/upper closed forms for k in 4..12, r in 2..5")
def test_table_reproduction(capsys):
    code, out = cli(capsys, "table", "--k-range", "4..12", "--r-range", "2..5")
    assert code == 0
    lines = out.splitlines()
    header = lines[0].split()
    rows = [dict(zip(header, line.split())) for line in lines[1:]]
    assert len(rows) == 9 * 4
    for row in rows:
        k, r = int(row["k"]), int(row["r"])
        for t in (2, 3, 4):
            assert row[f"lower_t{t}"] == str(lower_closed(k, r, t)), (k, r, t)
            assert row[f"upper_t{t}"] == str(upper_closed(k, r, t)), (k, r, t)
            assert (row[f"upper_t{t}"] == "—") == (r >= 3 and t == 4 and k % r != 0)
    _, csv_out = cli(capsys, "table", "--k-range", "4..12", "--r-range", "2..5", "--format", "csv")
    assert [list(row.values()) for row in rows] == list(csv.reader(io.StringIO(csv_out)))[1:]


# -- 14 ---------------------------------------------------------------------


@acceptance(14, "asymptotic rate bounds at n=10^4, d=10^3, r=4 are finite and deterministic")
def test_asymptotic_substitute():
    n, d, r = 10**4, 10**3, 4
    k = n // 2
    first = [bounds.asymptotic_rate_bounds(n, k, d, r, beta, 2) for beta in range(1, 5)]
    again = [bounds.asymptotic_rate_bounds(n, k, d, r, beta, 2) for beta in range(1, 5)]
    assert first == again
    for beta, (a, b) in enumerate(first, start=1):
        assert math.isfinite(a.value) and math.isfinite(b.value)
        smaller = a.name if a.value < b.value else b.name
        print(f"beta={beta}: {a.name}={a.value} {b.name}={b.value} smaller={smaller}")
