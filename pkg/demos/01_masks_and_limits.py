"""
Masks and their stationary limits
=================================

Each level of refinement gets its own mask. As the level grows the masks
approach the fixed polynomial B-spline masks.
"""

import math

import numpy as np

from trigsubdiv import SchemeFamily, stationary_limit_fractions, stationary_limit_mask

alpha = math.pi / 6

# raw masks do not sum to one; the normalized ones do
for m in (2, 3, 4):
    fam = SchemeFamily(m, alpha)
    print(f"m={m}")
    for k in (0, 1, 2, 5, 10):
        mask = fam.mask(k)
        print(f"  k={k:2d} raw {np.round(mask.coefficients, 6)}  sum {mask.total:.8f}")
    print("  limit", [str(f) for f in stationary_limit_fractions(m)])

# distance to the limit shrinks by about 4 per level
limit = stationary_limit_mask(4).coefficients
norm = SchemeFamily(4, alpha, normalized=True)
dev = [np.max(np.abs(norm.mask(k).coefficients - limit)) for k in range(12)]
print("ratios", np.round(np.array(dev[1:]) / np.array(dev[:-1]), 4))
