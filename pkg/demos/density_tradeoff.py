#!/usr/bin/env python3
"""The core tradeoff: how sparse should the private parity-check matrix be?

Decryption costs C(m) = n (d_v'/m) I + n m operations: multiplying by the
weight-m transformation Q gets dearer as m grows, while iterative decoding
gets cheaper because the private column weight d_v = d_v'/m shrinks.  With
the public weight d_v' pinned by the dual-code attack, the free parameter
is m, and the unconstrained optimum sits at m' = sqrt(d_v' I).  Error
correction drags the practical optimum back below m', but every feasible
m > 1 still beats the dense m = 1 (MDPC-style) corner.
"""

import math

from qcmc import OptimizerConfig, complexity_c, m_star, optimize_design
from qcmc.optimize import DESIGN_FIELDS, design_rows

n, dvp, I = 16384, 59, 10
print(f"C(m) in log2 for n={n}, d_v'={dvp}, I={I}  (m' = {m_star(dvp, I):.2f}):")
for m in (1, 2, 3.93, 8, 16, 24.29, 35):
    print(f"  m={m:6.2f}:  2^{math.log2(complexity_c(n, dvp, m, I)):.2f}")

for lam in (100, 128):
    print(f"\nfeasible designs at {lam}-bit security, cheapest first:")
    report = optimize_design(OptimizerConfig(lam))
    print("  " + "  ".join(f.rjust(9) for f in DESIGN_FIELDS))
    for row in design_rows(report):
        print("  " + "  ".join(str(row[f]).rjust(9) for f in DESIGN_FIELDS))
    best = report.designs[0]
    dense = min((d for d in report.designs if d.params.m == 1),
                key=lambda d: d.C_log2, default=None)
    if dense is not None:
        saved = dense.C_log2 - best.C_log2
        print(f"  sparse best 2^{best.C_log2:.2f} vs dense 2^{dense.C_log2:.2f}: "
              f"{saved:.2f} bits of decryption work saved")
