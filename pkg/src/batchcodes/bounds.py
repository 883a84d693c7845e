"""Length and dimension bounds for batch and PIR codes.

Integer bounds use exact integer ceilings.  ``k_opt`` comes from the
embedded exhaustive table for q = 2, n <= 14, and from the Griesmer bound
otherwise; reports carry an assumption flag saying which was used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import divisible_length, r2_length, remainder_length
from .errors import ConditionViolated, DomainError, InvalidParams, NotCovered
from .kopt import KOPT_MAX_N, embedded_table, griesmer_max_k, griesmer_min_length

__all__ = [
    "BoundReport",
    "asymptotic_rate_bounds",
    "cm_dimension_bound",
    "cm_dimension_bound_recursive",
    "entropy_q",
    "griesmer_min_length",
    "k_opt",
    "k_opt_report",
    "lower_bound_nonsystematic",
    "lower_bound_rpdv",
    "lower_bound_systematic",
    "table_lower_bound",
    "table_upper_bound",
]

KINDS = ("lower-on-n", "upper-on-n", "upper-on-k", "upper-on-rate")


@dataclass(frozen=True)
class BoundReport:
    name: str
    kind: str
    value: int | Fraction | float
    beta_star: int | None = None
    assumptions: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if isinstance(self.value, float) and not math.isfinite(self.value):
            raise ValueError("bound value must be finite")

    def __int__(self) -> int:
        return int(self.value)

    def line(self) -> str:
        beta = "-" if self.beta_star is None else str(self.beta_star)
        value = f"{self.value:.6f}" if isinstance(self.value, float) else str(self.value)
        extra = ",".join(self.assumptions) or "-"
        return f"{self.name:<22} {self.kind:<13} {value:>8}  beta*={beta:<3} {extra}"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _positive(**kwargs) -> None:
    for name, value in kwargs.items():
        if value < 1:
            raise InvalidParams(f"{name} must be >= 1, got {value}")


# -- lower bounds on n -------------------------------------------------------


def lower_bound_nonsystematic(k: int, r: int, t: int, d: int) -> BoundReport:
    """n >= k + d - 1 + max over 1 <= beta <= t of (beta-1)(ceil(k/(r beta - beta + 1)) - 1)."""
    _positive(k=k, r=r, t=t, d=d)
    terms = {b: (b - 1) * (_ceil_div(k, r * b - b + 1) - 1) for b in range(1, t + 1)}
    beta = max(terms, key=lambda b: (terms[b], -b))
    return BoundReport(
        "nonsystematic", "lower-on-n", k + d + terms[beta] - 1, beta, ("general linear",)
    )


def lower_bound_systematic(k: int, r: int, t: int, d: int) -> BoundReport:
    _positive(k=k, r=r, t=t, d=d)
    if t < 2:
        raise InvalidParams("the systematic bound ranges over 2 <= beta <= t; t must be >= 2")
    terms = {b: (b - 1) * (_ceil_div(k, r * b - b - r + 2) - 1) for b in range(2, t + 1)}
    beta = max(terms, key=lambda b: (terms[b], -b))
    return BoundReport("systematic", "lower-on-n", k + d + terms[beta] - 1, beta, ("systematic",))


def lower_bound_rpdv(k: int, r: int, t: int, d: int) -> BoundReport:
    """Information-locality-with-availability bound, in batch-code form."""
    _positive(k=k, r=r, t=t, d=d)
    value = d + k + _ceil_div((t - 1) * (k - 1) + 1, (t - 1) * (r - 1) + 1) - 2
    return BoundReport("locality-availability", "lower-on-n", value, None, ("systematic",))


def table_lower_bound(k: int, r: int, t: int) -> int:
    _positive(k=k)
    if r < 2:
        raise InvalidParams("tabulated bounds need r >= 2")
    if t == 2:
        return k + _ceil_div(k, r)
    if t == 3:
        return k + 1 + _ceil_div(2 * k - 1, 2 * r - 1)
    if t == 4:
        return k + 2 + _ceil_div(3 * k - 2, 3 * r - 2)
    raise InvalidParams("tabulated bounds exist only for t in {2, 3, 4}")


def table_upper_bound(k: int, r: int, t: int) -> int:
    """Length achieved by the construction that covers ``(k, r, t)``."""
    _positive(k=k)
    if r < 2:
        raise InvalidParams("tabulated bounds need r >= 2")
    if t not in (2, 3, 4):
        raise InvalidParams("tabulated bounds exist only for t in {2, 3, 4}")
    if t == 2:
        return k + _ceil_div(k, r)
    if r == 2:
        if k < 2:
            raise NotCovered("no r = 2 construction for k = 1 and t > 2")
        return r2_length(k, t)
    if k % r == 0:
        return divisible_length(k, r, t)
    if t == 3:
        return remainder_length(k, r)
    raise NotCovered(f"no upper bound tabulated for r={r} >= 3, t=4 and r not dividing k={k}")


# -- k_opt ----------------------------------------------------------------------


def k_opt_report(q: int, n: int, d: int) -> BoundReport:
    """Largest dimension of a length-``n`` code with minimum distance >= ``d``."""
    if n < 1 or not 1 <= d <= n:
        raise InvalidParams("k_opt needs n >= 1 and 1 <= d <= n")
    if q < 2:
        raise InvalidParams("q must be >= 2")
    if q == 2 and n <= KOPT_MAX_N:
        return BoundReport("k_opt", "upper-on-k", embedded_table()[(2, n, d)], None, ("k_opt exact",))
    return BoundReport("k_opt", "upper-on-k", griesmer_max_k(q, n, d), None, ("k_opt griesmer",))


def k_opt(q: int, n: int, d: int) -> int:
    return k_opt_report(q, n, d).value


# -- dimension bounds --------------------------------------------------------


def _cm_term(n: int, r: int, beta: int, d: int, q: int) -> tuple[int, str]:
    rep = k_opt_report(q, n - beta * r, d)
    return beta * r - (beta - 1) + rep.value, rep.assumptions[0]


def cm_dimension_bound(n: int, r: int, t: int, d: int, q: int = 2) -> BoundReport:
    """k <= t r - (t - 1) + k_opt(n - t r, d), valid when n - t r >= d."""
    _positive(n=n, r=r, t=t, d=d)
    if n - t * r < d:
        raise ConditionViolated(
            f"n - t*r = {n - t * r} < d = {d}; use cm_dimension_bound_recursive"
        )
    value, source = _cm_term(n, r, t, d, q)
    return BoundReport("cadambe-mazumdar", "upper-on-k", value, t, (source,))


def cm_dimension_bound_recursive(n: int, r: int, t: int, d: int, q: int = 2) -> BoundReport:
    """Minimum of the single-``beta`` bound over every admissible ``beta <= t``."""
    _positive(n=n, r=r, t=t, d=d)
    if n - r < d:
        raise ConditionViolated(f"n - r = {n - r} < d = {d}: no admissible beta")
    best = None
    for beta in range(1, t + 1):
        if n - beta * r < d:
            break
        value, source = _cm_term(n, r, beta, d, q)
        if best is None or value < best[0]:
            best = (value, beta, source)
    value, beta, source = best
    return BoundReport("cadambe-mazumdar-min", "upper-on-k", value, beta, (source,))


# -- asymptotics -------------------------------------------------------------


def entropy_q(q: int, x: float) -> float:
    """q-ary entropy with 0 log 0 = 0."""
    if q < 2:
        raise DomainError("q must be >= 2")
    if not 0 <= x <= 1:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    lq = math.log(q)
    h = x * math.log(q - 1) / lq if q > 2 else 0.0
    if 0 < x:
        h -= x * math.log(x) / lq
    if x < 1:
        h -= (1 - x) * math.log(1 - x) / lq
    return h


def asymptotic_rate_bounds(n: int, k: int, d: int, r: int, beta: int, q: int = 2):
    """Rate upper bounds from the Singleton-type and the k_opt-type bound.

    The second one uses the sphere-packing rate ``1 - h_q(delta/2)`` in
    place of the optimal rate.  Values are floats rounded to 6 places.
    """
    if beta < 1 or r < 1 or n < 1 or k < 1 or d < 0:
        raise DomainError("need n, k, r, beta >= 1 and d >= 0")
    if n - beta * r < 1:
        raise DomainError("need n - beta*r >= 1")
    delta = d / n
    if delta > 1:
        raise DomainError("d exceeds n")
    singleton = 1 - delta - (beta - 1) / n * (_ceil_div(k, beta * r - beta + 1) - 1)
    packing = beta * (r - 1) / n + 1 - entropy_q(q, delta / 2)
    return (
        BoundReport("singleton-asymptotic", "upper-on-rate", round(singleton, 6), beta),
        BoundReport("packing-asymptotic", "upper-on-rate", round(packing, 6), beta, ("sphere-packing R_opt",)),
    )
