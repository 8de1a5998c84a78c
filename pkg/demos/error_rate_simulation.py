#!/usr/bin/env python3
"""Monte Carlo residual error rates for a code/decoder pair.

Places random weight-t errors on the zero codeword (linearity makes that
representative), decodes, and reports codeword/bit error rates with Wilson
intervals plus the average iteration count that feeds the complexity metric.
Scaled down here so it finishes in seconds; the same harness drives the
large nightly runs.
"""

from qcmc import Algorithm, DecoderConfig, SystemParams, sample_h_random
from qcmc.prng import SeedStream
from qcmc.simulate import run_trials
from qcmc.threshold import ThresholdQuery, bf_threshold

params = SystemParams.make(4, 512, 9, 9)
h = sample_h_random(params, SeedStream(7, "demo-h"))
threshold = bf_threshold(ThresholdQuery(params.n, params.n0, params.d_v))
print(f"code: n = {params.n}, d_v = {params.d_v}, BF threshold = {threshold} errors")

print("\nsum-product decoding, 300 trials per point:")
print("  t_err    cer        ber        avg_iters   95% interval")
for t_err in (threshold - 8, threshold, threshold + 8, threshold + 16):
    cfg = DecoderConfig(Algorithm.SPA, p0=t_err / params.n)
    rep = run_trials(h, cfg, t_err, 300, seed=2718)
    print(f"  {t_err:5d}  {rep.cer:9.3e}  {rep.ber:9.3e}  {rep.avg_iterations:9.2f}"
          f"   [{rep.ci_low:.3e}, {rep.ci_high:.3e}]")

print("\nvariable-threshold bit flipping at the same points:")
for t_err in (threshold - 8, threshold):
    rep = run_trials(h, DecoderConfig(Algorithm.BF_VARIABLE), t_err, 300, seed=2718)
    print(f"  t_err={t_err}: cer={rep.cer:.3e} avg_iters={rep.avg_iterations:.2f}")
