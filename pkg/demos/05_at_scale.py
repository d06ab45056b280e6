"""Desk-scale honesty: what happens when exhaustive verification is too big.

The 15x15 staircase instance below has dimension 40 over GF(2), so the
code has 2^40 codewords.  The library refuses to pretend: certification
reports unverified-at-scale, the CLI exits 4, and a randomized probe
stands in for the impossible enumeration.
"""

import time

from fdrm import FerrersDiagram, build_tower, certify, singleton_bound
from fdrm.codes import sampled_min_rank
from fdrm.constructions import construct_staircase_l2

F = FerrersDiagram((10,) * 5 + (15,) * 10)
tower = build_tower(2, 1, (5, 15))
print(f"diagram {F}, tower {tower}")

t0 = time.time()
code = construct_staircase_l2(tower, F, delta=12, r=0, w=2)
print(f"built {code.describe()} in {time.time() - t0:.2f}s")

bound, _ = singleton_bound(F, 12)
print(f"bound equality: dimension {code.dimension} == bound {bound}")

code, status = certify(code)
print(f"certification status: {status} (2^{code.dimension} codewords)")

t0 = time.time()
probe = sampled_min_rank(code, 100_000, seed=1)
print(f"minimum rank over 1e5 random nonzero codewords: {probe} "
      f"(claimed {code.claimed_delta}) in {time.time() - t0:.2f}s")
