#!/usr/bin/env python3
"""Estimate the two attacks that dictate the system parameters.

Dual-code attack (DCA): hunt the sparse rows of H' = H Q^T in the dual of
the public code; its cost fixes the public column weight d_v'.
Information-set decoding attack (ISDA): recover the weight-t error vector
from an extended code that also contains every block-wise cyclic shift of
the ciphertext; its cost fixes t.  Both use a Stern-style search whose work
factor barely moves with the code length, so security is set by the weights.
"""

from qcmc import security_targets
from qcmc.attacks import dca_wf_at, isda_wf_at

n0 = 4

print("DCA work factor (log2) vs public column weight d_v':")
print("  d_v'    p=4096   p=16384")
for dvp in range(30, 91, 10):
    a = dca_wf_at(n0, 4096, dvp).log2_wf
    b = dca_wf_at(n0, 16384, dvp).log2_wf
    print(f"  {dvp:4d}  {a:8.2f}  {b:8.2f}")

print()
print("ISDA work factor (log2) vs intentional error count t:")
print("     t    p=4096   p=16384   (optimal shifts s at p=4096)")
for t in range(30, 81, 10):
    a = isda_wf_at(n0, 4096, t)
    b = isda_wf_at(n0, 16384, t)
    print(f"  {t:4d}  {a.log2_wf:8.2f}  {b.log2_wf:8.2f}   s={a.s}")

print()
for lam in (100, 128):
    dvp, t = security_targets(lam, n0, 4096)
    print(f"{lam}-bit security at the conservative length: d_v' >= {dvp}, t >= {t}")
    print(f"   checks: dca({dvp}) = {dca_wf_at(n0, 4096, dvp).log2_wf:.2f}, "
          f"isda({t}) = {isda_wf_at(n0, 4096, t).log2_wf:.2f}")
