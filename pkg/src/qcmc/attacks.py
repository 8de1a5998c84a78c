"""Work-factor estimation for the two dominant attacks on the cryptosystem.

Both attacks reduce to finding a low-weight codeword with a Stern-style
information-set decoder, costed per iteration as

    c_iter = (n-k)^2 (n+k)/2                      Gaussian elimination
           + 2 l p_s C(ceil(k/2), p_s)            collision-window search
           + 2 p_s (n-k) C(ceil(k/2), p_s)^2 / 2^l   candidate checking

with per-iteration success probability

    pi_one = C(floor(k/2), p_s) C(ceil(k/2), p_s) C(n-k-l, w-2 p_s) / C(n, w)

boosted by multiplicity: pi = 1 - (1 - pi_one)^n_targets.  The reported work
factor is log2(c_iter / pi), minimized over the (p_s, l) grid.

Dual-code attack (DCA): search the dual of the public code for the rows of
the sparse H' = H Q^T, so w = n0 * d_v' with multiplicity p.  Information-set
decoding attack (ISDA): append s block-wise cyclic shifts of an intercepted
ciphertext to the public generator and search the extended code for any of
the s shifted weight-t error patterns; the optimum s is part of the report.

Binomials are evaluated in log2 through lgamma, so code lengths in the tens
of thousands stay exact to float precision.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy.special import gammaln

from .errors import ParameterError

__all__ = [
    "IsdInstance", "WfReport", "isd_wf", "isd_success_probability",
    "dca_wf", "dca_wf_at", "isda_wf", "isda_wf_at",
    "q_space_size", "h_enumeration_wf", "dca_table", "isda_table",
]

PS_MAX = 10
ELL_MAX = 60
LN2 = math.log(2.0)


@dataclass(frozen=True)
class IsdInstance:
    """Low-weight-codeword search instance for a Stern-style decoder."""

    n: int
    k: int
    w: int
    n_targets: int = 1

    def __post_init__(self):
        if not 0 < self.w < self.n:
            raise ParameterError("need 0 < w < n")
        if not 0 < self.k < self.n:
            raise ParameterError("need 0 < k < n")
        if self.n_targets < 1:
            raise ParameterError("need at least one target codeword")


@dataclass(frozen=True)
class WfReport:
    """log2 work factor and the ISD parameters attaining it."""

    log2_wf: float
    p_s: int
    ell: int
    s: int = 0
    grid_edge: bool = False


def _log2_comb(a, b):
    """log2 C(a, b) via lgamma; array-friendly, -inf where undefined."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    ok = (b >= 0) & (b <= a)
    safe_b = np.where(ok, b, 0.0)
    val = (gammaln(a + 1.0) - gammaln(safe_b + 1.0) - gammaln(a - safe_b + 1.0)) / LN2
    return np.where(ok, val, -np.inf)


def _log2_success(log2_pi_one, n_targets: int):
    """log2(1 - (1 - pi)^T) elementwise, stable for tiny pi."""
    log2_pi_one = np.asarray(log2_pi_one, dtype=np.float64)
    ln_pi = log2_pi_one * LN2
    tiny = ln_pi < -500.0
    # for tiny pi, 1 - (1 - pi)^T ~ T*pi
    approx = log2_pi_one + math.log2(n_targets)
    with np.errstate(divide="ignore", invalid="ignore"):
        pi = np.exp(np.where(tiny, -500.0, ln_pi))
        pi = np.clip(pi, 0.0, 1.0 - 1e-16)
        exact = np.log2(-np.expm1(n_targets * np.log1p(-pi)))
    out = np.where(tiny, approx, exact)
    return np.minimum(out, 0.0)


def _grid_eval(inst: IsdInstance, ps_max: int, ell_max: int):
    """Work factor over the (p_s, l) grid; +inf where infeasible."""
    n, k, w = inst.n, inst.k, inst.w
    k2a, k2b = k // 2, k - k // 2
    ps = np.arange(1, ps_max + 1)
    ell = np.arange(1, ell_max + 1)
    psg, ellg = np.meshgrid(ps, ell, indexing="ij")

    feasible = (2 * psg <= w) & (psg <= k2a) & (w - 2 * psg <= n - k - ellg)
    with np.errstate(divide="ignore", invalid="ignore"):
        log2_pi_one = (_log2_comb(k2a, psg) + _log2_comb(k2b, psg)
                       + _log2_comb(n - k - ellg, w - 2 * psg) - _log2_comb(n, w))
        log2_pi = _log2_success(log2_pi_one, inst.n_targets)

        half_rows = np.exp2(_log2_comb(k2b, psg))
        cost = ((n - k) ** 2 * (n + k) / 2.0
                + 2.0 * ellg * psg * half_rows
                + 2.0 * psg * (n - k) * half_rows**2 / np.exp2(ellg))
        wf = np.where(feasible, np.log2(cost) - log2_pi, np.inf)
    return wf, psg, ellg


def isd_wf(inst: IsdInstance, ps_max: int = PS_MAX, ell_max: int = ELL_MAX) -> WfReport:
    """Minimum Stern work factor over p_s in [1, ps_max], l in [1, ell_max]."""
    wf, psg, ellg = _grid_eval(inst, ps_max, ell_max)
    if not np.isfinite(wf).any():
        raise ParameterError("no feasible (p_s, l) pair for this instance")
    flat = int(np.argmin(wf))
    i, j = np.unravel_index(flat, wf.shape)
    p_s, ell = int(psg[i, j]), int(ellg[i, j])
    edge = p_s == ps_max or ell == ell_max
    return WfReport(float(wf[i, j]), p_s, ell, 0, edge)


def isd_success_probability(inst: IsdInstance, p_s: int, ell: int) -> float:
    """Per-iteration success probability at fixed (p_s, l), multiplicity included."""
    n, k, w = inst.n, inst.k, inst.w
    k2a, k2b = k // 2, k - k // 2
    if 2 * p_s > w or p_s > k2a or w - 2 * p_s > n - k - ell:
        return 0.0
    l2 = float(_log2_comb(k2a, p_s) + _log2_comb(k2b, p_s)
               + _log2_comb(n - k - ell, w - 2 * p_s) - _log2_comb(n, w))
    return float(np.exp2(_log2_success(l2, inst.n_targets)))


def dca_wf_at(n0: int, p: int, d_v_prime) -> WfReport:
    """Dual-code attack work factor at public column weight d_v_prime.

    The dual of the public code has length n0*p and dimension p; the sought
    rows of H' have weight n0*d_v' and occur with multiplicity p.
    """
    w = int(round(n0 * d_v_prime))
    return isd_wf(IsdInstance(n=n0 * p, k=p, w=w, n_targets=p))


def dca_wf(params) -> WfReport:
    """Dual-code attack work factor for full system parameters."""
    return dca_wf_at(params.n0, params.p, params.d_v_prime)


@lru_cache(maxsize=None)
def _isda_cached(n0: int, p: int, t: int, ps_max: int, ell_max: int) -> WfReport:
    k0 = n0 - 1
    n = n0 * p
    best: WfReport | None = None
    for s in range(1, p + 1):
        k = k0 * p + s
        if k >= n:
            break
        try:
            rep = isd_wf(IsdInstance(n=n, k=k, w=t, n_targets=s), ps_max, ell_max)
        except ParameterError:
            continue
        if best is None or rep.log2_wf < best.log2_wf:
            best = WfReport(rep.log2_wf, rep.p_s, rep.ell, s, rep.grid_edge)
    if best is None:
        raise ParameterError("no feasible shift count for this instance")
    return best


def isda_wf_at(n0: int, p: int, t: int,
               ps_max: int = PS_MAX, ell_max: int = ELL_MAX) -> WfReport:
    """Information-set decoding attack work factor at t intentional errors.

    Minimizes over the number s of block-wise shifted ciphertexts appended to
    the public generator: length n0*p, dimension (n0-1)*p + s, weight t,
    multiplicity s.  The optimizing s is reported.
    """
    return _isda_cached(n0, p, t, ps_max, ell_max)


def isda_wf(params) -> WfReport:
    """ISDA work factor for full system parameters."""
    return isda_wf_at(params.n0, params.p, params.t)


def q_space_size(p: int, n0: int) -> float:
    """log2 of the number of QC permutation choices for Q in the m = 1 case."""
    if p < 1 or n0 < 1:
        raise ParameterError("p and n0 must be positive")
    return math.log2(p**n0 * math.factorial(n0))


def h_enumeration_wf(p: int, d_v: int) -> float:
    """log2 cost of enumerating one circulant block's first row: log2 C(p, d_v)."""
    if not 0 <= d_v <= p:
        raise ParameterError("need 0 <= d_v <= p")
    return math.log2(math.comb(p, d_v))


def dca_table(n0: int, p_values: Sequence[int], d_v_prime_values: Sequence[int]) -> list[dict]:
    rows = []
    for p in p_values:
        for dvp in d_v_prime_values:
            rep = dca_wf_at(n0, p, dvp)
            rows.append({"p": p, "d_v_prime": dvp, "log2_wf": round(rep.log2_wf, 2),
                         "p_s": rep.p_s, "ell": rep.ell})
    return rows


def isda_table(n0: int, p_values: Sequence[int], t_values: Sequence[int]) -> list[dict]:
    rows = []
    for p in p_values:
        for t in t_values:
            rep = isda_wf_at(n0, p, t)
            rows.append({"p": p, "t": t, "log2_wf": round(rep.log2_wf, 2),
                         "p_s": rep.p_s, "ell": rep.ell, "s": rep.s})
    return rows


def write_wf_csv(rows: Iterable[dict], out: TextIO) -> None:
    rows = list(rows)
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
