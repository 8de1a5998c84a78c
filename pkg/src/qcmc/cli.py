"""Command-line front end: file-based, reproducible workflows for every module.

Every command that consumes randomness takes an explicit --seed and is
bit-deterministic given it.  Numeric reports are printed raw and in log2.
Exit codes: 0 success, 2 usage or parameter errors, 1 domain failures with a
machine-readable `error-category: <Name>` line on stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from fractions import Fraction

import numpy as np

from . import crypto
from .attacks import dca_table, isda_table, write_wf_csv
from .decoder import Algorithm, DecoderConfig
from .design import SystemParams, weight_matrix
from .errors import ParameterError, QcmcError
from .optimize import (OptimizerConfig, design_rows, optimize_design,
                       write_design_csv, DESIGN_FIELDS)
from .prng import SeedStream
from .simulate import sweep_rows, write_sim_csv
from .threshold import threshold_table, write_threshold_csv

DEFAULT_SEED = "00" * 32


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _parse_range(text: str) -> list[int]:
    """Either comma-separated values or start:stop:step (stop inclusive)."""
    if ":" in text:
        start, stop, step = (int(x) for x in text.split(":"))
        return list(range(start, stop + 1, step))
    return _parse_int_list(text)


def _decoder_config(args, params: SystemParams | None = None) -> DecoderConfig:
    algo = {"bf": Algorithm.BF_FIXED, "bfv": Algorithm.BF_VARIABLE,
            "spa": Algorithm.SPA}[args.decoder]
    b = args.b
    if algo is Algorithm.BF_FIXED and b is None and params is not None:
        b = params.d_v  # safe default: unanimous-vote flips
    p0 = None
    if algo is Algorithm.SPA and params is not None:
        p0 = max(params.t_prime, 1) / params.n
    return DecoderConfig(algo, max_iterations=args.max_iter, b=b, delta=args.delta, p0=p0)


def _build_params(args) -> SystemParams:
    if args.W:
        flat = _parse_int_list(args.W)
        n0 = args.n0
        if len(flat) != n0 * n0:
            raise ParameterError(f"--W needs {n0 * n0} comma-separated integers")
        W = tuple(tuple(flat[i * n0:(i + 1) * n0]) for i in range(n0))
    else:
        m = Fraction(args.m)
        sigma = m * args.n0
        if sigma.denominator != 1:
            raise ParameterError("--m times n0 must be an integer")
        W = weight_matrix(args.n0, int(sigma))
    return SystemParams(args.n0, args.p, args.dv, W, args.t)


def _out_stream(path: str | None):
    if path:
        return open(path, "w", newline="")
    return contextlib.nullcontext(sys.stdout)


def cmd_keygen(args) -> int:
    params = _build_params(args)
    mode = crypto.KeyMode(args.mode)
    sk, pk = crypto.keygen(params, args.seed, mode, h_design=args.design)
    crypto.save_private_key(sk, args.out + ".sk")
    crypto.save_public_key(pk, args.out + ".pk")
    print(f"wrote {args.out}.sk and {args.out}.pk")
    print(f"n={params.n} k={params.k} m={float(params.m):g} t'={params.t_prime}")
    print(f"public payload: {pk.payload_bits} bits ({pk.payload_bits / 8192:.1f} KiB)")
    return 0


def cmd_encrypt(args) -> int:
    pk = crypto.load_public_key(args.pk)
    data = open(args.infile, "rb").read()
    k = pk.params.k
    if len(data) * 8 != k:
        raise ParameterError(f"plaintext must be exactly {k} bits ({k // 8} bytes)")
    u = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    c = crypto.encrypt(pk, u, SeedStream(args.seed, "encrypt"))
    crypto.save_ciphertext(c, args.out)
    print(f"wrote {args.out} ({c.size} bits, {pk.params.t} intentional errors)")
    return 0


def cmd_decrypt(args) -> int:
    sk = crypto.load_private_key(args.sk)
    c = crypto.load_ciphertext(args.infile)
    cfg = _decoder_config(args, sk.params)
    u = crypto.decrypt(sk, c, cfg)
    data = np.packbits(u, bitorder="little").tobytes()
    with open(args.out, "wb") as fh:
        fh.write(data)
    print(f"wrote {args.out} ({u.size} bits)")
    return 0


def cmd_threshold(args) -> int:
    rows = threshold_table(args.n0, _parse_range(args.dv), _parse_range(args.p_range))
    with _out_stream(args.out) as out:
        write_threshold_csv(rows, out)
    return 0


def cmd_wf(args) -> int:
    p_values = _parse_range(args.p)
    if args.attack == "dca":
        if not args.dvp:
            raise ParameterError("--attack dca needs --dvp")
        rows = dca_table(args.n0, p_values, _parse_range(args.dvp))
    else:
        if not args.t:
            raise ParameterError("--attack isda needs --t")
        rows = isda_table(args.n0, p_values, _parse_range(args.t))
    with _out_stream(args.out) as out:
        write_wf_csv(rows, out)
    return 0


def cmd_optimize(args) -> int:
    cfg = OptimizerConfig(
        target_security_bits=args.security,
        n0=args.n0,
        I=args.I,
        alpha=args.alpha,
        d_v_candidates=tuple(_parse_int_list(args.candidates)),
    )
    report = optimize_design(cfg)
    rows = design_rows(report)
    if args.csv:
        with open(args.csv, "w", newline="") as out:
            write_design_csv(report, out)
    widths = {f: max(len(f), 9) for f in DESIGN_FIELDS}
    print("  ".join(f.rjust(widths[f]) for f in DESIGN_FIELDS))
    for row in rows:
        print("  ".join(str(row[f]).rjust(widths[f]) for f in DESIGN_FIELDS))
    for d_v, reason in report.rejections:
        print(f"rejected d_v={d_v}: {reason}")
    return 0 if rows else 1


def cmd_simulate(args) -> int:
    sk = crypto.load_private_key(args.key)
    cfg = _decoder_config(args, sk.params)
    t_values = _parse_range(args.t)
    rows = sweep_rows(sk.h, cfg, t_values, args.trials, args.seed, args.jobs)
    for row in rows:
        print(f"t_err={row['t_err']} trials={row['trials']} cer={row['cer']:.3e} "
              f"ber={row['ber']:.3e} avg_iters={row['avg_iters']} "
              f"ci=[{row['ci_low']:.3e}, {row['ci_high']:.3e}]")
    if args.out:
        with _out_stream(args.out) as out:
            write_sim_csv(rows, out)
    return 0


def cmd_inspect(args) -> int:
    path = args.key
    with open(path) as fh:
        first = fh.readline().split()
    if first[0] == crypto.CT_MAGIC:
        c = crypto.load_ciphertext(path)
        print(f"ciphertext: n={c.size} weight={int(c.sum())}")
        return 0
    try:
        sk = crypto.load_private_key(path)
    except (ParameterError, KeyError):
        sk = None
    if sk is not None:
        pr = sk.params
        print(f"private key ({sk.mode.value}): n0={pr.n0} p={pr.p} dv={pr.d_v} t={pr.t}")
        print(f"n={pr.n} k={pr.k} d_c={pr.d_c} m={float(pr.m):g} "
              f"t'={pr.t_prime} d_v'={float(pr.d_v_prime):g}")
        print(f"W rows: {[list(r) for r in pr.W]}")
        print(f"H block weights: {[b.weight for b in sk.h.blocks]}")
        print(f"Q total weight: {sk.Q.total_weight}, S total weight: {sk.S.total_weight}")
        return 0
    pk = crypto.load_public_key(path)
    pr = pk.params
    print(f"public key ({pk.mode.value}): n0={pr.n0} p={pr.p} dv={pr.d_v} t={pr.t}")
    print(f"n={pr.n} k={pr.k} payload={pk.payload_bits} bits")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcmc", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_seed(p):
        p.add_argument("--seed", default=DEFAULT_SEED,
                       help="hex seed (any length; canonicalized to 256 bits)")

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--n0", type=int, default=4)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dv", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--W", help="n0*n0 comma-separated block weights for Q")
    p.add_argument("--m", default="1", help="average Q row weight (used when --W absent)")
    p.add_argument("--mode", choices=["classic", "systematic"], default="classic")
    p.add_argument("--design", choices=["random", "rdf"], default="random")
    p.add_argument("--out", required=True, help="output path prefix")
    add_seed(p)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a k-bit file")
    p.add_argument("--pk", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    add_seed(p)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--sk", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--decoder", choices=["bf", "bfv", "spa"], default="spa")
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=100)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("threshold", help="BF decoding threshold grid (CSV)")
    p.add_argument("--n0", type=int, default=4)
    p.add_argument("--dv", required=True, help="values or start:stop:step")
    p.add_argument("--p-range", dest="p_range", required=True,
                   help="code lengths n as values or start:stop:step")
    p.add_argument("--out")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("wf", help="attack work factor curves (CSV)")
    p.add_argument("--attack", choices=["dca", "isda"], required=True)
    p.add_argument("--n0", type=int, default=4)
    p.add_argument("--p", required=True, help="circulant sizes, values or range")
    p.add_argument("--dvp", help="public column weights (dca)")
    p.add_argument("--t", help="intentional error counts (isda)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_wf)

    p = sub.add_parser("optimize", help="feasible designs sorted by decryption cost")
    p.add_argument("--security", type=float, required=True)
    p.add_argument("--n0", type=int, default=4)
    p.add_argument("--I", type=float, default=10.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--candidates", default="15,19,25,35,45,59,77")
    p.add_argument("--csv", help="also write the table as CSV")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("simulate", help="Monte Carlo residual error rates")
    p.add_argument("--key", required=True, help="private key file")
    p.add_argument("--t", required=True, help="error counts, values or range")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--decoder", choices=["bf", "bfv", "spa"], default="bfv")
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=100)
    p.add_argument("--jobs", type=int, default=int(os.environ.get("QCMC_JOBS", "1")))
    p.add_argument("--out")
    add_seed(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("inspect", help="print parameters and sizes of a key file")
    p.add_argument("--key", required=True)
    p.set_defaults(func=cmd_inspect)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error-category: {type(exc).__name__}", file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QcmcError as exc:
        print(f"error-category: {type(exc).__name__}", file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
