"""Iterative decoders for the sparse private code: bit flipping and sum-product.

All decoders work directly on the circulant supports, never on an expanded
matrix.  For a block row H = [H_0 | ... | H_{n0-1}] with supports supp_i,
check s involves variable (i, j) exactly when j = (s + l) mod p for some
l in supp_i, so syndromes and per-bit unsatisfied-check counts reduce to
gathers through two precomputed index tables of shape (n0, d_v, p).

Decoders are pure: inputs are never modified, and identical
(inputs, config) always produce identical outcomes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .design import ParityCheck
from .errors import ParameterError

LLR_CLAMP = 25.0  # log-domain message magnitude cap


class Algorithm(Enum):
    BF_FIXED = "bf"
    BF_VARIABLE = "bfv"
    SPA = "spa"


@dataclass(frozen=True)
class DecoderConfig:
    """Decoder selection and tuning.

    b is the fixed flip threshold (BF_FIXED only, ceil(d_v/2) <= b <= d_v);
    delta lowers the variable threshold below the per-iteration maximum;
    p0 is the assumed channel error fraction for SPA initialization.
    """

    algorithm: Algorithm
    max_iterations: int = 100
    b: int | None = None
    delta: int = 0
    p0: float | None = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ParameterError("max_iterations must be positive")
        if self.delta < 0:
            raise ParameterError("delta must be nonnegative")
        if self.algorithm is Algorithm.BF_FIXED and self.b is None:
            raise ParameterError("BF_FIXED requires a flip threshold b")
        if self.p0 is not None and not 0.0 < self.p0 < 0.5:
            raise ParameterError("p0 must lie in (0, 0.5)")


@dataclass(frozen=True)
class DecodeOutcome:
    success: bool
    error_estimate: np.ndarray
    iterations_used: int


class _TannerIndex:
    """Gather tables tying check indices to variable indices per block."""

    def __init__(self, h: ParityCheck):
        n0, p, d_v = h.params.n0, h.params.p, h.params.d_v
        self.n0, self.p, self.d_v = n0, p, d_v
        supp = np.array([blk.support for blk in h.blocks], dtype=np.int64)
        js = np.arange(p, dtype=np.int64)
        # to_check[i, l, s] = variable position (s + supp_il) % p feeding check s
        self.to_check = (js[None, None, :] + supp[:, :, None]) % p
        # to_var[i, l, j] = check position (j - supp_il) % p watching variable j
        self.to_var = (js[None, None, :] - supp[:, :, None]) % p
        self.block_axis = np.arange(n0).reshape(n0, 1, 1)
        self.edge_axis = np.arange(d_v).reshape(1, d_v, 1)

    def syndrome(self, v_blocks: np.ndarray) -> np.ndarray:
        """H v^T over GF(2); v_blocks has shape (n0, p)."""
        gathered = v_blocks[self.block_axis, self.to_check]
        return (gathered.sum(axis=(0, 1), dtype=np.int64) & 1).astype(np.uint8)

    def unsatisfied_counts(self, synd: np.ndarray) -> np.ndarray:
        """Per-variable count of unsatisfied checks, shape (n0, p)."""
        return synd[self.to_var].sum(axis=1, dtype=np.int64)

    def spread_to_edges(self, var_blocks: np.ndarray) -> np.ndarray:
        """Per-variable data -> per-edge view indexed by check, shape (n0, d_v, p)."""
        return var_blocks[self.block_axis, self.to_check]

    def collect_at_vars(self, edge_vals: np.ndarray) -> np.ndarray:
        """Sum per-edge data (indexed by check) at each variable, shape (n0, p)."""
        return edge_vals[self.block_axis, self.edge_axis, self.to_var].sum(axis=1)


@lru_cache(maxsize=8)
def _index_for(h: ParityCheck) -> _TannerIndex:
    return _TannerIndex(h)


def syndrome(h: ParityCheck, v: np.ndarray) -> np.ndarray:
    """Syndrome of a length-n word against the sparse private matrix."""
    params = h.params
    v = np.asarray(v, dtype=np.uint8)
    if v.shape != (params.n,):
        raise ParameterError(f"word length must be {params.n}")
    return _index_for(h).syndrome(v.reshape(params.n0, params.p))


def decode_bf(h: ParityCheck, received: np.ndarray, cfg: DecoderConfig) -> DecodeOutcome:
    """Parallel bit flipping with a fixed or per-iteration variable threshold.

    Each iteration: compute the syndrome, count unsatisfied checks per bit,
    flip every bit whose count reaches the threshold (b for BF_FIXED,
    max-count minus delta for BF_VARIABLE), stop on a zero syndrome.
    Non-convergence is an unsuccessful outcome, not an exception.
    """
    if cfg.algorithm not in (Algorithm.BF_FIXED, Algorithm.BF_VARIABLE):
        raise ParameterError("decode_bf requires a BF algorithm")
    params = h.params
    if cfg.algorithm is Algorithm.BF_FIXED:
        if not math.ceil(params.d_v / 2) <= cfg.b <= params.d_v:
            raise ParameterError("b must lie in [ceil(d_v/2), d_v]")
    received = np.asarray(received, dtype=np.uint8)
    if received.shape != (params.n,):
        raise ParameterError(f"word length must be {params.n}")

    idx = _index_for(h)
    v = received.reshape(params.n0, params.p).copy()
    synd = idx.syndrome(v)
    if not synd.any():
        return DecodeOutcome(True, np.zeros(params.n, dtype=np.uint8), 0)

    iterations = 0
    success = False
    for iterations in range(1, cfg.max_iterations + 1):
        upc = idx.unsatisfied_counts(synd)
        if cfg.algorithm is Algorithm.BF_FIXED:
            threshold = cfg.b
        else:
            threshold = max(int(upc.max()) - cfg.delta, 1)
        flips = upc >= threshold
        if not flips.any():
            break
        v ^= flips.astype(np.uint8)
        synd = idx.syndrome(v)
        if not synd.any():
            success = True
            break
    return DecodeOutcome(success, (v.reshape(-1) ^ received), iterations)


def decode_spa(h: ParityCheck, received: np.ndarray, cfg: DecoderConfig) -> DecodeOutcome:
    """Log-domain sum-product decoding over the expanded Tanner graph.

    Channel LLRs assume a binary symmetric channel with crossover cfg.p0.
    Messages are clamped to +/-LLR_CLAMP; a hard decision is taken every
    iteration and decoding stops on a zero syndrome.
    """
    if cfg.algorithm is not Algorithm.SPA:
        raise ParameterError("decode_spa requires the SPA algorithm")
    if cfg.p0 is None:
        raise ParameterError("SPA needs an assumed channel error fraction p0")
    params = h.params
    received = np.asarray(received, dtype=np.uint8)
    if received.shape != (params.n,):
        raise ParameterError(f"word length must be {params.n}")

    idx = _index_for(h)
    rec_blocks = received.reshape(params.n0, params.p)
    synd = idx.syndrome(rec_blocks)
    if not synd.any():
        return DecodeOutcome(True, np.zeros(params.n, dtype=np.uint8), 0)

    llr0 = math.log((1.0 - cfg.p0) / cfg.p0)
    channel = llr0 * (1.0 - 2.0 * rec_blocks.astype(np.float64))
    v2c = idx.spread_to_edges(channel)

    success = False
    iterations = 0
    hard = rec_blocks
    for iterations in range(1, cfg.max_iterations + 1):
        tnh = np.tanh(0.5 * v2c)
        prod = tnh.reshape(-1, params.p).prod(axis=0)
        safe = np.where(np.abs(tnh) < 1e-30, np.copysign(1e-30, tnh), tnh)
        ratio = np.clip(prod[None, None, :] / safe, -1.0 + 1e-14, 1.0 - 1e-14)
        c2v = np.clip(2.0 * np.arctanh(ratio), -LLR_CLAMP, LLR_CLAMP)
        total = channel + idx.collect_at_vars(c2v)
        hard = (total < 0.0).astype(np.uint8)
        synd = idx.syndrome(hard)
        if not synd.any():
            success = True
            break
        v2c = np.clip(idx.spread_to_edges(total) - c2v, -LLR_CLAMP, LLR_CLAMP)
    return DecodeOutcome(success, (hard.reshape(-1) ^ received), iterations)


def decode(h: ParityCheck, received: np.ndarray, cfg: DecoderConfig) -> DecodeOutcome:
    """Dispatch on cfg.algorithm."""
    if cfg.algorithm is Algorithm.SPA:
        return decode_spa(h, received, cfg)
    return decode_bf(h, received, cfg)
