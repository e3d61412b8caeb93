"""Reproduction checks: circles, ellipses, trigonometric data, basis symmetry.

An ``m``-point raw mask of tension ``alpha`` keeps samples of ``cos`` and
``sin`` with angular step ``(m - 1) * alpha`` on the same curves: the order-m
trigonometric spline space contains ``cos((m-1)x)`` and ``sin((m-1)x)``. For
``m = 2`` the step equals the tension. A circle sampled at ``n`` points is
therefore reproduced by the family with tension ``2 pi / (n (m - 1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import TooFewPoints, WindowTooSmall
from .mask import SchemeFamily
from .subdivide import ControlPolygon, refine_once, refine_to_level


@dataclass(frozen=True)
class CircleSample:
    """``n`` samples ``(r_x cos((i + offset) step), r_y sin((i + offset) step))``."""

    n: int
    offset: float = -0.5
    radii: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"a closed conic needs n >= 3 samples, got {self.n!r}")

    @property
    def alpha(self) -> float:
        return 2.0 * math.pi / self.n


def matched_tension(n: int, m: int) -> float:
    """Tension for which the ``m``-point raw scheme reproduces an ``n``-gon's circle."""
    return 2.0 * math.pi / (n * (m - 1))


def matched_family(n: int, m: int, normalized: bool = False) -> SchemeFamily:
    return SchemeFamily(m, matched_tension(n, m), normalized)


def sample_conic(sample: CircleSample) -> ControlPolygon:
    t = (np.arange(sample.n) + sample.offset) * sample.alpha
    rx, ry = sample.radii
    return ControlPolygon(np.column_stack([rx * np.cos(t), ry * np.sin(t)]), "closed")


@dataclass(frozen=True)
class CircleReport:
    n: int
    arity_m: int
    tension: float
    levels: int
    points: int
    max_radius_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_radius_error <= self.tol


def verify_circle_reproduction(
    sample: CircleSample, family: SchemeFamily, levels: int, tol: float = 1e-9
) -> CircleReport:
    """Refine the sampled unit circle and measure ``max | ||p|| - 1 |``.

    The family must use raw masks; normalizing breaks the exact trigonometric
    identities the reproduction relies on.
    """
    if family.normalized:
        raise ValueError("circle reproduction requires raw (unnormalized) masks")
    if tuple(sample.radii) != (1.0, 1.0):
        raise ValueError("radius check needs unit radii; scale afterwards for ellipses")
    poly = refine_to_level(sample_conic(sample), family, levels)
    err = float(np.max(np.abs(np.linalg.norm(poly.points, axis=1) - 1.0)))
    return CircleReport(sample.n, family.arity_m, family.tension, levels, len(poly), err, tol)


def fit_phase(values: npt.ArrayLike, step: float, kind: str = "cos") -> tuple[float, float]:
    """Best phase ``phi`` for ``values[i] ~ f((i + phi) * step)`` with ``f`` = cos or sin.

    The phase comes from a linear least-squares fit of ``A cos + B sin``; the
    returned residual is ``max_i |values[i] - f((i + phi) step)|`` at unit
    amplitude.
    """
    v = np.asarray(values, dtype=float)
    i = np.arange(v.size)
    basis = np.column_stack([np.cos(i * step), np.sin(i * step)])
    (a, b), *_ = np.linalg.lstsq(basis, v, rcond=None)
    theta = math.atan2(-b, a)  # v ~ R cos(i step + theta)
    if kind == "sin":
        theta += math.pi / 2
    elif kind != "cos":
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
    theta = (theta + math.pi) % (2 * math.pi) - math.pi
    phi = theta / step
    f = np.cos if kind == "cos" else np.sin
    residual = float(np.max(np.abs(v - f((i + phi) * step))))
    return phi, residual


@dataclass(frozen=True)
class TrigReport:
    kind: str
    step: float
    phases: tuple[float, ...]
    residuals: tuple[float, ...]
    tol: float

    @property
    def residual(self) -> float:
        return max(self.residuals)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    @property
    def phase_increments(self) -> tuple[float, ...]:
        """``phi_{k+1} - 2 phi_k``; constant when the phase telescopes."""
        p = self.phases
        return tuple(p[k + 1] - 2 * p[k] for k in range(len(p) - 1))


def verify_trig_reproduction(
    family: SchemeFamily,
    step: float | None = None,
    levels: int = 1,
    tol: float = 1e-12,
    kind: str = "cos",
    offset: float = -0.5,
    samples: int = 64,
) -> TrigReport:
    """Refine scalar samples ``f((i + offset) step)`` and fit the phase at every level.

    ``step`` defaults to ``(m - 1) * tension``. Data live on an open index
    window, so only fully supported refined values are compared.
    ``phases[0]`` is the initial phase, ``phases[k]`` the fit after ``k`` levels.
    """
    m = family.arity_m
    step = (m - 1) * family.tension if step is None else float(step)
    f = np.cos if kind == "cos" else np.sin
    if kind not in ("cos", "sin"):
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
    poly = ControlPolygon(f((np.arange(samples) + offset) * step), "open", 0)
    phi0, res0 = fit_phase(poly.points[:, 0], step, kind)
    phases, residuals = [phi0], [res0]
    for _ in range(levels):
        poly = refine_once(poly, family.mask(poly.level))
        level_step = step / 2.0**poly.level
        phi, res = fit_phase(poly.points[:, 0], level_step, kind)
        phases.append(phi)
        residuals.append(res)
    return TrigReport(kind, step, tuple(phases), tuple(residuals), tol)


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    center: float | None
    max_asymmetry: float
    values: np.ndarray


def delta_data(half_width: int) -> np.ndarray:
    d = np.zeros(2 * half_width + 1)
    d[half_width] = 1.0
    return d


def basis_limit_symmetry(
    family: SchemeFamily,
    levels: int,
    tol: float = 1e-12,
    half_width: int | None = None,
    initial: npt.ArrayLike | None = None,
) -> SymmetryReport:
    """Refine delta data with normalized masks and test mirror symmetry.

    ``center`` is the centre of mass in output indices. ``initial`` replaces
    the delta sequence, e.g. with zeros.

    Raises:
        WindowTooSmall: when the refined support reaches the window edge.
    """
    m = family.arity_m
    if half_width is None:
        half_width = 2 * m + 2
    data = delta_data(half_width) if initial is None else np.asarray(initial, dtype=float)
    try:
        poly = refine_to_level(ControlPolygon(data, "open", 0), family.with_policy(True), levels)
    except TooFewPoints as exc:
        raise WindowTooSmall(f"window of {data.size} values is consumed before level {levels}") from exc
    v = poly.points[:, 0]
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return SymmetryReport(True, None, 0.0, v)
    if nz[0] == 0 or nz[-1] == v.size - 1:
        raise WindowTooSmall(
            f"support touches the window edge after {levels} levels; enlarge half_width"
        )
    core = v[nz[0] : nz[-1] + 1]
    asym = float(np.max(np.abs(core - core[::-1])))
    center = float(np.sum(np.arange(v.size) * v) / np.sum(v))
    return SymmetryReport(asym <= tol, center, asym, v)
