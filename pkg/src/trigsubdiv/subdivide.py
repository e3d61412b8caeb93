"""Binary refinement of control polygons with level-dependent masks.

For an m-point mask ``(a_0, ..., a_{m-1})`` and window start ``o = -((m-1)//2)``

    f^{k+1}_{2i}   = sum_s a_s         f^k_{i+o+s}
    f^{k+1}_{2i+1} = sum_s a_{m-1-s}   f^k_{i+o+s}

which for ``m = 2, 3, 4`` uses the windows ``(i, i+1)``, ``(i-1..i+1)`` and
``(i-1..i+2)``. Closed polygons are indexed cyclically. Open polygons keep
only the points whose whole window lies inside the data; no end rules are
invented.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt

from .errors import ArityMismatch, TooFewPoints
from .mask import Mask, SchemeFamily

Topology = Literal["open", "closed"]


def stencil_offset(m: int) -> int:
    """Index of the first window point relative to ``i``."""
    return -((m - 1) // 2)


@dataclass(frozen=True)
class ControlPolygon:
    """Ordered points of shape ``(n, d)``; 1-D input is treated as ``d = 1``."""

    points: np.ndarray
    topology: Topology = "closed"
    level: int = 0

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ValueError(f"points must have shape (n, d), got {np.shape(self.points)}")
        if self.topology not in ("open", "closed"):
            raise ValueError(f"topology must be 'open' or 'closed', got {self.topology!r}")
        if self.level < 0:
            raise ValueError("level must be non-negative")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def closed(self) -> bool:
        return self.topology == "closed"

    def transformed(self, matrix: npt.ArrayLike, shift: npt.ArrayLike = 0.0) -> ControlPolygon:
        """Return ``points @ matrix.T + shift`` with the same topology and level."""
        pts = self.points @ np.asarray(matrix, dtype=float).T + np.asarray(shift, dtype=float)
        return ControlPolygon(pts, self.topology, self.level)

    def reversed(self) -> ControlPolygon:
        return ControlPolygon(self.points[::-1], self.topology, self.level)


def refined_count(n: int, m: int, topology: Topology) -> int:
    if topology == "closed":
        return 2 * n
    return max(0, 2 * (n - m + 1))


def refine_once(poly: ControlPolygon, mask: Mask) -> ControlPolygon:
    """Apply one refinement step.

    A closed polygon of ``n`` points becomes ``2n`` points; an open polygon of
    ``n`` points becomes ``2(n - m + 1)`` points.

    Raises:
        ArityMismatch: mask length differs from its declared arity.
        TooFewPoints: fewer than ``m`` input points.
    """
    c = mask.coefficients
    m = mask.arity_m
    if c.size != m or m < 2:
        raise ArityMismatch(f"mask declares m={m} but carries {c.size} coefficients")
    n = len(poly)
    if n < m:
        raise TooFewPoints(f"an {m}-point scheme needs at least {m} points, got {n}")
    o = stencil_offset(m)
    pts = poly.points
    if poly.closed:
        base = np.arange(n)
        idx = (base[:, None] + o + np.arange(m)[None, :]) % n
    else:
        base = np.arange(-o, n - m + 1 - o)
        idx = base[:, None] + o + np.arange(m)[None, :]
    window = pts[idx]  # (count, m, d)
    even = np.einsum("s,csd->cd", c, window)
    odd = np.einsum("s,csd->cd", c[::-1], window)
    out = np.empty((2 * base.size, pts.shape[1]))
    out[0::2] = even
    out[1::2] = odd
    return ControlPolygon(out, poly.topology, poly.level + 1)


def refine_to_level(poly: ControlPolygon, family: SchemeFamily, levels: int) -> ControlPolygon:
    """Refine ``levels`` times, using the mask of level ``poly.level + step``."""
    if levels < 0:
        raise ValueError("levels must be non-negative")
    for _ in range(levels):
        poly = refine_once(poly, family.mask(poly.level))
    return poly
