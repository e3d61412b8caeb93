"""
Circles and symmetric basis functions
=====================================

Raw masks keep sampled circles exactly on the circle when the tension
matches the sample spacing.
"""

import math

import numpy as np

from trigsubdiv import CircleSample, SchemeFamily, basis_limit_symmetry, verify_circle_reproduction
from trigsubdiv.reproduce import matched_tension

for m in (2, 3, 4):
    for n in (8, 12, 24):
        r = verify_circle_reproduction(CircleSample(n), SchemeFamily(m, matched_tension(n, m)), 4)
        print(f"m={m} n={n:2d} tension {r.tension:.4f} radius error {r.max_radius_error:.1e}")

# with tension 2 pi / n only the 2-point scheme stays on the circle
r = verify_circle_reproduction(CircleSample(12), SchemeFamily(3, 2 * math.pi / 12), 4)
print("m=3 at tension 2pi/12:", f"{r.max_radius_error:.3f}")

# delta data refine into a symmetric bump
for m in range(2, 7):
    s = basis_limit_symmetry(SchemeFamily(m, math.pi / 6), 5)
    bump = s.values[np.flatnonzero(s.values)]
    print(m, "symmetric" if s.symmetric else "asymmetric", len(bump), "nonzero values, peak", bump.max().round(4))
