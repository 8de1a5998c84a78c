"""Asymptotic bit-flipping decoding threshold for regular (d_v, d_c) codes.

The threshold is the largest error count t for which Gallager-style density
evolution of the threshold-b flipping rule drives the expected number of
residual errors below one.  With q the current message error fraction and
p0 = t/n the channel error fraction, one evolution step reads

    r = (1 - (1 - 2q)^(d_c - 1)) / 2            unsatisfied-check fraction
    q' = p0 * (1 - T(d_v - 1, b, 1 - r))        errored bit, too few complaints
       + (1 - p0) * T(d_v - 1, b, r)            correct bit, spuriously flipped

where T(d, b, x) is the binomial tail P[Binom(d, x) >= b].  The recursion
must decrease monotonically below 1/n within the step budget; the reported
threshold maximizes over decision thresholds b in [ceil(d_v/2), d_v], and
the integer search over t is exponential-then-binary, using monotonicity
of convergence in t.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

from .errors import ParameterError

__all__ = ["ThresholdQuery", "bf_threshold", "bf_threshold_detail",
           "threshold_table", "write_threshold_csv"]


@dataclass(frozen=True)
class ThresholdQuery:
    n: int
    n0: int
    d_v: int
    max_recursion_steps: int = 100

    def __post_init__(self):
        if self.n0 * self.d_v >= self.n:
            raise ParameterError("check degree n0*d_v must be below n")
        if self.d_v < 1 or self.n0 < 1:
            raise ParameterError("n0 and d_v must be positive")
        if self.max_recursion_steps < 1:
            raise ParameterError("max_recursion_steps must be positive")


def binomial_tail(d: int, b: int, x: float) -> float:
    """P[Binom(d, x) >= b], by direct summation (d is small here)."""
    if b <= 0:
        return 1.0
    if b > d:
        return 0.0
    return sum(math.comb(d, j) * x**j * (1.0 - x) ** (d - j) for j in range(b, d + 1))


def evolution_step(d_c: int, d_v: int, b: int, p0: float, q: float) -> float:
    """One density-evolution step of the threshold-b flipping rule."""
    r = (1.0 - (1.0 - 2.0 * q) ** (d_c - 1)) / 2.0
    stay_wrong = 1.0 - binomial_tail(d_v - 1, b, 1.0 - r)
    go_wrong = binomial_tail(d_v - 1, b, r)
    return p0 * stay_wrong + (1.0 - p0) * go_wrong


def _converges(n: int, d_c: int, d_v: int, b: int, t: int, max_steps: int) -> bool:
    p0 = t / n
    q = p0
    for _ in range(max_steps):
        q_next = evolution_step(d_c, d_v, b, p0, q)
        if q_next < 1.0 / n:
            return True
        if q_next >= q:
            return False
        q = q_next
    return False


def _t_max_for_b(n: int, d_c: int, d_v: int, b: int, max_steps: int) -> int:
    if not _converges(n, d_c, d_v, b, 1, max_steps):
        return 0
    lo, hi = 1, 2
    while hi < n and _converges(n, d_c, d_v, b, hi, max_steps):
        lo, hi = hi, hi * 2
    hi = min(hi, n)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _converges(n, d_c, d_v, b, mid, max_steps):
            lo = mid
        else:
            hi = mid
    return lo


@lru_cache(maxsize=None)
def _threshold_cached(n: int, n0: int, d_v: int, max_steps: int) -> tuple[int, int]:
    d_c = n0 * d_v
    best_t, best_b = 0, math.ceil(d_v / 2)
    for b in range(math.ceil(d_v / 2), d_v + 1):
        tm = _t_max_for_b(n, d_c, d_v, b, max_steps)
        if tm > best_t:
            best_t, best_b = tm, b
    return best_t, best_b


def bf_threshold(q: ThresholdQuery) -> int:
    """Maximum correctable error count, optimized over decision thresholds."""
    return _threshold_cached(q.n, q.n0, q.d_v, q.max_recursion_steps)[0]


def bf_threshold_detail(q: ThresholdQuery) -> tuple[int, int]:
    """(t_max, optimizing b)."""
    return _threshold_cached(q.n, q.n0, q.d_v, q.max_recursion_steps)


def threshold_table(n0: int, d_v_values: Sequence[int],
                    n_values: Sequence[int]) -> list[dict]:
    """Threshold grid rows: one dict per (n, d_v) pair."""
    rows = []
    for d_v in d_v_values:
        for n in n_values:
            t_max, b_opt = bf_threshold_detail(ThresholdQuery(n, n0, d_v))
            rows.append({"n": n, "d_v": d_v, "b_opt": b_opt, "t_max": t_max})
    return rows


def write_threshold_csv(rows: Iterable[dict], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=["n", "d_v", "b_opt", "t_max"])
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
