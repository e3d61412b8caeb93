"""
Refining a control polygon
==========================

Refine a pentagon with the 2-, 3- and 4-point schemes and save the curves.
"""

import math
from pathlib import Path

import numpy as np

from trigsubdiv import ControlPolygon, SchemeFamily, refine_to_level
from trigsubdiv.cli import format_svg

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

t = 2 * np.pi * np.arange(5) / 5 + np.pi / 2
pentagon = ControlPolygon(np.column_stack([np.cos(t), np.sin(t)]))

curves = {}
for m in (2, 3, 4):
    curves[m] = refine_to_level(pentagon, SchemeFamily(m, math.pi / 12, normalized=True), 5)
    (out / f"pentagon_m{m}.svg").write_text(format_svg(pentagon, curves[m]))
    print(m, len(curves[m]), "points")

# wider stencils pull the curve further inside the polygon
for m, c in curves.items():
    print(m, "min radius", np.linalg.norm(c.points, axis=1).min().round(4))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    closed = np.vstack([pentagon.points, pentagon.points[:1]])
    plt.plot(closed[:, 0], closed[:, 1], "k--", lw=0.8)
    for m, c in curves.items():
        p = np.vstack([c.points, c.points[:1]])
        plt.plot(p[:, 0], p[:, 1], label=f"m={m}")
    plt.axis("equal")
    plt.legend()
    plt.savefig(out / "pentagon.png", dpi=120)
