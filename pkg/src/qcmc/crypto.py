"""McEliece-style key generation, encryption, and decryption with sparse Q.

Private key: sparse parity check H, dense scrambler S (k0 x k0 blocks), and
sparse transformation Q (n0 x n0 blocks with weight pattern W).  Public key:
G' = S^-1 G Q^-1 (classic mode) or the systematic row-reduced form of
G Q^-1 (systematic mode, S dropped; for m = 1 also Q, so the public key is
the systematic private generator itself).  Either way the public code admits
the sparse parity check H' = H Q^T.

Decryption: multiply the ciphertext by Q, decode t' = ceil(m t) errors with
the sparse private code, take the systematic information part, multiply by
S.  The output is validated by re-encoding before it is returned; a decoder
that fails or miscorrects raises DecodingFailure rather than returning a
wrong plaintext.

Key and ciphertext files are plain text: a magic line, a key=value parameter
line, the weight matrix, then one lowercase-hex polynomial per circulant
block in row-major order (little-endian bit packing, see gf2).  This is a
research toolkit: no constant-time guarantees, no side-channel hardening.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .decoder import Algorithm, DecoderConfig, decode
from .design import (ParityCheck, SystemParams, pattern_det_gf2, sample_h_random,
                     sample_h_rdf, systematic_generator)
from .errors import DecodingFailure, KeygenFailure, ParameterError, SingularMatrixError
from .gf2 import (BitPolynomial, QcMatrix, SparseSupport, bits_to_int, int_to_bits,
                  qc_invert, qc_mul, qc_transpose, qc_vec_mul)
from .prng import SeedStream, normalize_seed

KEY_MAGIC = "QCMC1"
CT_MAGIC = "QCCT1"
KEYGEN_BUDGET = 100


class KeyMode(Enum):
    CLASSIC = "classic"
    SYSTEMATIC = "systematic"


@dataclass(frozen=True)
class PublicKey:
    params: SystemParams
    Gp: QcMatrix
    mode: KeyMode

    @property
    def payload_bits(self) -> int:
        """Serialized polynomial payload size in bits."""
        k0, n0, p = self.params.k0, self.params.n0, self.params.p
        return k0 * p if self.mode is KeyMode.SYSTEMATIC else k0 * n0 * p


@dataclass(frozen=True)
class PrivateKey:
    params: SystemParams
    h: ParityCheck
    S: QcMatrix
    S_inv: QcMatrix
    Q: QcMatrix
    Q_inv: QcMatrix
    seed: bytes
    mode: KeyMode

    @property
    def q_is_identity(self) -> bool:
        return self.Q == QcMatrix.identity(self.params.n0, self.params.p)


def random_error_vector(n: int, t: int, rng: SeedStream) -> np.ndarray:
    """Uniform weight-t binary vector of length n."""
    e = np.zeros(n, dtype=np.uint8)
    if t:
        e[list(rng.sample_distinct(n, t))] = 1
    return e


def sample_q(params: SystemParams, rng: SeedStream) -> QcMatrix:
    """Random invertible Q with block (i, j) a weight-W[i][j] circulant."""
    return _sample_q_with_inverse(params, rng)[0]


def _sample_q_with_inverse(params: SystemParams, rng: SeedStream) -> tuple[QcMatrix, QcMatrix]:
    if not pattern_det_gf2(params.W):
        raise ParameterError(
            "W mod 2 is singular over GF(2): no Q with these block weights "
            "is invertible (weight parity is a ring homomorphism)")
    p = params.p
    for _ in range(KEYGEN_BUDGET):
        blocks = tuple(
            tuple(BitPolynomial.from_support(p, rng.sample_distinct(p, w)) if w
                  else BitPolynomial.zero(p)
                  for w in row)
            for row in params.W
        )
        q = QcMatrix(params.n0, params.n0, p, blocks)
        try:
            return q, qc_invert(q)
        except SingularMatrixError:
            continue
    raise KeygenFailure("no invertible Q within the sampling budget")


def _sample_s_with_inverse(params: SystemParams, rng: SeedStream) -> tuple[QcMatrix, QcMatrix]:
    k0, p = params.k0, params.p
    for _ in range(KEYGEN_BUDGET):
        blocks = tuple(
            tuple(BitPolynomial(p, rng.poly_bits(p)) for _ in range(k0))
            for _ in range(k0)
        )
        s = QcMatrix(k0, k0, p, blocks)
        try:
            return s, qc_invert(s)
        except SingularMatrixError:
            continue
    raise KeygenFailure("no invertible S within the sampling budget")


def keygen(params: SystemParams, seed, mode: KeyMode = KeyMode.CLASSIC,
           h_design: str = "random") -> tuple[PrivateKey, PublicKey]:
    """Generate a key pair, deterministically from (params, seed, mode).

    h_design selects the parity-check construction: "random" or "rdf".
    In systematic mode the public key is row-reduced so only the k0
    non-identity blocks carry information ((n0-1)*p payload bits); the
    row reduction plays the role of S.  With m = 1 the transformation Q
    is dropped entirely and the public key is the private systematic G.
    """
    seed_bytes = normalize_seed(seed)
    root = SeedStream(seed_bytes, "keygen")
    sampler = {"random": sample_h_random, "rdf": sample_h_rdf}.get(h_design)
    if sampler is None:
        raise ParameterError("h_design must be 'random' or 'rdf'")

    h = sampler(params, root.child("h"))
    g = systematic_generator(h)
    n0, p = params.n0, params.p
    identity_n0 = QcMatrix.identity(n0, p)
    identity_k0 = QcMatrix.identity(params.k0, p)

    if mode is KeyMode.SYSTEMATIC and params.m == 1:
        q, q_inv = identity_n0, identity_n0
        s, s_inv = identity_k0, identity_k0
        gp = g
    elif mode is KeyMode.SYSTEMATIC:
        q_rng = root.child("q")
        for _ in range(KEYGEN_BUDGET):
            q, q_inv = _sample_q_with_inverse(params, q_rng)
            m_mat = qc_mul(g, q_inv)
            left = QcMatrix(params.k0, params.k0, p, tuple(
                tuple(row[:params.k0]) for row in m_mat.blocks))
            try:
                s_inv = qc_invert(left)
            except SingularMatrixError:
                continue
            s = left
            gp = qc_mul(s_inv, m_mat)
            break
        else:
            raise KeygenFailure("no systematic form within the sampling budget")
    else:
        q, q_inv = _sample_q_with_inverse(params, root.child("q"))
        s, s_inv = _sample_s_with_inverse(params, root.child("s"))
        gp = qc_mul(qc_mul(s_inv, g), q_inv)

    sk = PrivateKey(params, h, s, s_inv, q, q_inv, seed_bytes, mode)
    pk = PublicKey(params, gp, mode)
    return sk, pk


def encrypt(pk: PublicKey, u: np.ndarray, rng: SeedStream) -> np.ndarray:
    """c = u G' + e with e uniform of weight exactly t."""
    params = pk.params
    u = np.asarray(u, dtype=np.uint8)
    if u.shape != (params.k,):
        raise ParameterError(f"message length must be {params.k} bits")
    e = random_error_vector(params.n, params.t, rng)
    return qc_vec_mul(u, pk.Gp) ^ e


_generator_for = lru_cache(maxsize=8)(systematic_generator)


def decrypt(sk: PrivateKey, c: np.ndarray, cfg: DecoderConfig | None = None) -> np.ndarray:
    """Recover the message: multiply by Q, decode, extract, multiply by S.

    The candidate plaintext is re-encoded through the private pipeline and
    accepted only if it reproduces the decoded codeword within the error
    budget t * max_row_weight(Q); otherwise DecodingFailure is raised.
    """
    params = sk.params
    c = np.asarray(c, dtype=np.uint8)
    if c.shape != (params.n,):
        raise ParameterError(f"ciphertext length must be {params.n} bits")
    if cfg is None:
        cfg = DecoderConfig(Algorithm.SPA, p0=max(params.t_prime, 1) / params.n)
    if cfg.algorithm is Algorithm.SPA and cfg.p0 is None:
        cfg = DecoderConfig(Algorithm.SPA, cfg.max_iterations, cfg.b, cfg.delta,
                            max(params.t_prime, 1) / params.n)

    c_priv = c if sk.q_is_identity else qc_vec_mul(c, sk.Q)
    outcome = decode(sk.h, c_priv, cfg)
    if not outcome.success:
        raise DecodingFailure(
            f"decoder did not converge within {cfg.max_iterations} iterations")
    # weight(e Q) <= t * max row weight of Q, which can exceed ceil(m t)
    max_row_weight = max(sum(row) for row in params.W)
    if int(outcome.error_estimate.sum()) > max(params.t_prime, params.t * max_row_weight):
        raise DecodingFailure("decoded word is too far from the received word")

    codeword = c_priv ^ outcome.error_estimate
    info = codeword[:params.k]
    g = _generator_for(sk.h)
    if not np.array_equal(qc_vec_mul(info, g), codeword):
        raise DecodingFailure("re-encoding check failed")
    return qc_vec_mul(info, sk.S)


def public_parity_check(sk: PrivateKey) -> QcMatrix:
    """Sparse parity check H' = H Q^T admitted by the public code."""
    return qc_mul(sk.h.to_qc_matrix(), qc_transpose(sk.Q))


# --- file formats -----------------------------------------------------------

def _params_line(params: SystemParams, seed: bytes | None = None) -> str:
    parts = [f"n0={params.n0}", f"p={params.p}", f"dv={params.d_v}", f"t={params.t}"]
    if seed is not None:
        parts.append(f"seed={seed.hex()}")
    return " ".join(parts)


def _w_line(params: SystemParams) -> str:
    return "W=" + ",".join(str(x) for row in params.W for x in row)


def _parse_header(lines: list[str], magic: str) -> tuple[SystemParams, str, bytes | None, int]:
    if not lines or not lines[0].startswith(magic + " "):
        raise ParameterError(f"not a {magic} file")
    mode_token = lines[0].split()[1]
    fields = dict(tok.split("=", 1) for tok in lines[1].split())
    n0, p = int(fields["n0"]), int(fields["p"])
    d_v, t = int(fields["dv"]), int(fields["t"])
    seed = bytes.fromhex(fields["seed"]) if "seed" in fields else None
    if not lines[2].startswith("W="):
        raise ParameterError("missing weight matrix line")
    w_flat = [int(x) for x in lines[2][2:].split(",")]
    if len(w_flat) != n0 * n0:
        raise ParameterError("weight matrix length mismatch")
    W = tuple(tuple(w_flat[i * n0:(i + 1) * n0]) for i in range(n0))
    return SystemParams(n0, p, d_v, W, t), mode_token, seed, 3


def _write_lines(path: str | os.PathLike, lines: list[str]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def save_public_key(pk: PublicKey, path) -> None:
    params = pk.params
    lines = [f"{KEY_MAGIC} {pk.mode.value}", _params_line(params), _w_line(params)]
    if pk.mode is KeyMode.SYSTEMATIC:
        blocks = [pk.Gp.blocks[i][params.n0 - 1] for i in range(params.k0)]
    else:
        blocks = [blk for row in pk.Gp.blocks for blk in row]
    lines += [blk.to_hex() for blk in blocks]
    _write_lines(path, lines)


def load_public_key(path) -> PublicKey:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    params, mode_token, _, at = _parse_header(lines, KEY_MAGIC)
    mode = KeyMode(mode_token)
    polys = [BitPolynomial.from_hex(params.p, ln) for ln in lines[at:]]
    k0, n0, p = params.k0, params.n0, params.p
    if mode is KeyMode.SYSTEMATIC:
        if len(polys) != k0:
            raise ParameterError(f"expected {k0} blocks, found {len(polys)}")
        one, zero = BitPolynomial.one(p), BitPolynomial.zero(p)
        blocks = tuple(
            tuple(one if j == i else zero for j in range(k0)) + (polys[i],)
            for i in range(k0)
        )
    else:
        if len(polys) != k0 * n0:
            raise ParameterError(f"expected {k0 * n0} blocks, found {len(polys)}")
        blocks = tuple(tuple(polys[i * n0:(i + 1) * n0]) for i in range(k0))
    return PublicKey(params, QcMatrix(k0, n0, p, blocks), mode)


def save_private_key(sk: PrivateKey, path) -> None:
    params = sk.params
    lines = [f"{KEY_MAGIC} {sk.mode.value}", _params_line(params, sk.seed),
             _w_line(params)]
    lines += [blk.to_poly().to_hex() for blk in sk.h.blocks]
    lines += [blk.to_hex() for row in sk.S.blocks for blk in row]
    lines += [blk.to_hex() for row in sk.Q.blocks for blk in row]
    _write_lines(path, lines)


def load_private_key(path) -> PrivateKey:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    params, mode_token, seed, at = _parse_header(lines, KEY_MAGIC)
    mode = KeyMode(mode_token)
    n0, k0, p = params.n0, params.k0, params.p
    expected = n0 + k0 * k0 + n0 * n0
    polys = [BitPolynomial.from_hex(p, ln) for ln in lines[at:]]
    if len(polys) != expected:
        raise ParameterError(f"expected {expected} blocks, found {len(polys)}")
    h_polys, rest = polys[:n0], polys[n0:]
    h = ParityCheck(params, tuple(SparseSupport.from_poly(poly) for poly in h_polys))
    s_blocks = tuple(tuple(rest[i * k0:(i + 1) * k0]) for i in range(k0))
    rest = rest[k0 * k0:]
    q_blocks = tuple(tuple(rest[i * n0:(i + 1) * n0]) for i in range(n0))
    s = QcMatrix(k0, k0, p, s_blocks)
    q = QcMatrix(n0, n0, p, q_blocks)
    return PrivateKey(params, h, s, qc_invert(s), q, qc_invert(q),
                      seed or b"\x00" * 32, mode)


def save_ciphertext(c: np.ndarray, path) -> None:
    c = np.asarray(c, dtype=np.uint8)
    lines = [CT_MAGIC, f"n={c.size}", bits_to_int(c).to_bytes((c.size + 7) // 8, "little").hex()]
    _write_lines(path, lines)


def load_ciphertext(path) -> np.ndarray:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != CT_MAGIC:
        raise ParameterError(f"not a {CT_MAGIC} file")
    n = int(lines[1].split("=", 1)[1])
    value = int.from_bytes(bytes.fromhex(lines[2]), "little")
    if value >> n:
        raise ParameterError("stray bits beyond length n")
    return int_to_bits(value, n)
