"""Monte Carlo estimation of residual error rates and decoder iteration counts.

Trials place a random weight-t error on the all-zero codeword (valid by code
linearity and decoder symmetry; a random-codeword mode is kept as a check),
decode, and count codeword errors (decoder failure or miscorrection), residual
bit errors, and iterations.  Trials are grouped into fixed-size lots with
per-lot derived seeds, so results are bit-identical for any worker count and
lots can run in parallel processes.  Codeword error rates carry a Wilson
score interval: the rates of interest span several orders of magnitude.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .crypto import random_error_vector
from .decoder import DecoderConfig, decode
from .design import ParityCheck, systematic_generator
from .errors import ParameterError
from .gf2 import int_to_bits, qc_vec_mul
from .prng import SeedStream, normalize_seed

LOT_SIZE = 64


@dataclass(frozen=True)
class TrialReport:
    trials: int
    codeword_errors: int
    bit_errors: int
    cer: float
    ber: float
    avg_iterations: float
    seed: bytes
    ci_low: float
    ci_high: float


def wilson_interval(errors: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    phat = errors / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if errors == 0 else max(center - half, 0.0)
    hi = 1.0 if errors == trials else min(center + half, 1.0)
    return lo, hi


def _run_lot(h: ParityCheck, cfg: DecoderConfig, t_err: int, count: int,
             seed: bytes, lot_index: int, random_codewords: bool) -> tuple[int, int, int]:
    params = h.params
    rng = SeedStream(seed, f"sim/lot{lot_index}")
    g = systematic_generator(h) if random_codewords else None
    cw_errors = bit_errors = iters = 0
    for _ in range(count):
        e = random_error_vector(params.n, t_err, rng)
        if g is not None:
            u = int_to_bits(rng.take_bits(params.k), params.k)
            codeword = qc_vec_mul(u, g)
        else:
            codeword = np.zeros(params.n, dtype=np.uint8)
        outcome = decode(h, codeword ^ e, cfg)
        residual = int((outcome.error_estimate != e).sum())
        if not outcome.success or residual:
            cw_errors += 1
            bit_errors += residual
        iters += outcome.iterations_used
    return cw_errors, bit_errors, iters


def run_trials(h: ParityCheck, cfg: DecoderConfig, t_err: int, trials: int,
               seed, jobs: int = 1, random_codewords: bool = False) -> TrialReport:
    """Decode `trials` random weight-t_err patterns; deterministic given seed.

    jobs > 1 distributes whole lots over worker processes; the lot split is
    independent of the worker count, so any jobs value reproduces the same
    report.
    """
    params = h.params
    if not 0 <= t_err <= params.n:
        raise ParameterError("t_err out of range")
    if trials < 1:
        raise ParameterError("need at least one trial")
    seed_bytes = normalize_seed(seed)

    lots = []
    done = 0
    index = 0
    while done < trials:
        count = min(LOT_SIZE, trials - done)
        lots.append((h, cfg, t_err, count, seed_bytes, index, random_codewords))
        done += count
        index += 1

    if jobs > 1 and len(lots) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_lot_star, lots))
    else:
        results = [_run_lot(*args) for args in lots]

    cw_errors = sum(r[0] for r in results)
    bit_errors = sum(r[1] for r in results)
    iters = sum(r[2] for r in results)
    lo, hi = wilson_interval(cw_errors, trials)
    return TrialReport(
        trials=trials,
        codeword_errors=cw_errors,
        bit_errors=bit_errors,
        cer=cw_errors / trials,
        ber=bit_errors / (trials * params.n),
        avg_iterations=iters / trials,
        seed=seed_bytes,
        ci_low=lo,
        ci_high=hi,
    )


def _run_lot_star(args):
    return _run_lot(*args)


def sweep_rows(h: ParityCheck, cfg: DecoderConfig, t_err_values: Sequence[int],
               trials: int, seed, jobs: int = 1) -> list[dict]:
    """One report row per error count (the error-rate-curve data)."""
    rows = []
    for t_err in t_err_values:
        rep = run_trials(h, cfg, t_err, trials, seed, jobs)
        rows.append({
            "t_err": t_err, "trials": rep.trials, "cer": rep.cer, "ber": rep.ber,
            "avg_iters": round(rep.avg_iterations, 3),
            "ci_low": round(rep.ci_low, 8), "ci_high": round(rep.ci_high, 8),
        })
    return rows


def write_sim_csv(rows: Iterable[dict], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=["t_err", "trials", "cer", "ber",
                                             "avg_iters", "ci_low", "ci_high"])
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
