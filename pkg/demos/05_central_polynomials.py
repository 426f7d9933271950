"""Polynomial identities, central polynomials, and interpolation at points."""

import random
import time

from pitrace import (
    central_for_points,
    comm_sq,
    conjugate_test,
    generates,
    is_central,
    is_pi,
    std,
    verified_central,
)
from pitrace.linalg import random_tuple

v = is_pi(std(4), 2)
print("std(4) on M_2:", v.is_pi, v.mode, f"{v.substitutions} substitutions")
v = is_pi(std(3), 2)
print("std(3) on M_2:", v.is_pi, "witness", list(v.witness))

print("[X1,X2]^2 central for n=2:", is_central(comm_sq(), 2).is_central)

t = time.perf_counter()
built = verified_central(3, trials=128, seed=11)
ev = built.verdict.checks["evaluations_central"]
print(f"formanek(3): degree {built.poly.degree()}, {len(built.poly.items())} terms,",
      f"verified in {time.perf_counter() - t:.1f}s ({ev.mode}, seed {ev.seed})")

# a central polynomial that is a nonzero scalar at each chosen point
rng = random.Random(3)
pts = []
while len(pts) < 2:
    cand = random_tuple(rng, 2, 2, -3, 3)
    if generates(cand) and not any(conjugate_test(p, cand).conjugate for p in pts):
        pts.append(cand)
res = central_for_points(pts)
print("s has", len(res.poly.items()), "terms; values:", [r.scalar for r in res.reports])
