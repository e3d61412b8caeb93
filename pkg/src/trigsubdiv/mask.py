"""Level-dependent masks of the m-point binary scheme.

At level ``k`` the mesh is ``h = alpha / 2**k`` and the mask is

    a_i = T^m((m - i - 1) * h + h / 4),   i = 0, ..., m - 1,

where ``T^m`` is the order-``m`` trigonometric B-spline (support ``[0, m*h)``).
Order ``m`` is the one that reproduces the explicit 2-, 3- and 4-point sine
formulas; ``m = 2`` gives the piecewise-linear trigonometric spline.

Coefficients are stored in even-rule order: ``a_0`` weights the first point
of the stencil window and the odd rule uses the reversed sequence (see
:mod:`trigsubdiv.subdivide`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    ArityMismatch,
    DegenerateMask,
    InvalidMesh,
    InvalidTension,
    MeshTooLarge,
    Unsupported,
)
from .trig_basis import MESH_GUARD, eval_basis

TENSION_GUARD = 1e-12
TENSION_MAX = math.pi / 3


def check_tension(alpha: float) -> float:
    alpha = float(alpha)
    if not (TENSION_GUARD < alpha < TENSION_MAX - TENSION_GUARD):
        raise InvalidTension(f"tension must lie in the open interval (0, pi/3), got {alpha!r}")
    return alpha


def _check_arity(m: int) -> int:
    if int(m) != m or m < 2:
        raise Unsupported(f"arity m must be an integer >= 2, got {m!r}")
    return int(m)


@dataclass(frozen=True)
class Mask:
    """One level's refinement coefficients.

    ``level`` and ``tension`` are ``None``/``0.0`` for a stationary limit mask.
    """

    coefficients: np.ndarray
    level: int | None
    arity_m: int
    tension: float
    normalized: bool = False

    def __post_init__(self) -> None:
        c = np.array(self.coefficients, dtype=float)
        if c.ndim != 1 or c.size != self.arity_m:
            raise ArityMismatch(
                f"expected {self.arity_m} coefficients, got shape {np.shape(self.coefficients)}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def total(self) -> float:
        return float(self.coefficients.sum())

    @property
    def even_rule(self) -> np.ndarray:
        return self.coefficients

    @property
    def odd_rule(self) -> np.ndarray:
        return self.coefficients[::-1]

    def tolist(self) -> list[float]:
        return [float(v) for v in self.coefficients]


@dataclass(frozen=True)
class SchemeFamily:
    """Generator of the mask sequence for a given arity and tension."""

    arity_m: int
    tension: float
    normalized: bool = False
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _check_arity(self.arity_m)
        check_tension(self.tension)

    def mask(self, level: int) -> Mask:
        if level not in self._cache:
            self._cache[level] = generate_mask(self, level)
        return self._cache[level]

    def with_policy(self, normalized: bool) -> SchemeFamily:
        return SchemeFamily(self.arity_m, self.tension, normalized)


def _level_mesh(alpha: float, level: int) -> float:
    if int(level) != level or level < 0:
        raise ValueError(f"level must be a non-negative integer, got {level!r}")
    return alpha / 2.0**level


def generate_mask(family: SchemeFamily, level: int) -> Mask:
    """Evaluate the level-``level`` mask of ``family``.

    Raises:
        InvalidTension: tension outside ``(0, pi/3)``.
        MeshTooLarge: ``(m - 1) * alpha / 2**level`` reaches ``pi``.
    """
    m = _check_arity(family.arity_m)
    alpha = check_tension(family.tension)
    h = _level_mesh(alpha, level)
    if (m - 1) * h >= math.pi - MESH_GUARD:
        raise MeshTooLarge(
            f"m={m} at level {level} needs (m-1)*alpha/2^k < pi, got {(m - 1) * h!r}"
        )
    points = (m - 1 - np.arange(m)) * h + h / 4.0
    try:
        coeffs = eval_basis(m, points, h)
    except InvalidMesh as exc:  # pragma: no cover - guarded above
        raise MeshTooLarge(str(exc)) from exc
    mask = Mask(coeffs, int(level), m, alpha, False)
    return normalize(mask) if family.normalized else mask


def closed_form_mask(m: int, level: int, alpha: float) -> Mask:
    """Raw mask from the explicit sine expressions for ``m`` in ``{2, 3, 4}``.

    The 4-point expressions are conventionally written with the coefficient
    of ``sin^3(h/4)`` first; that ordering is the reverse of the stored
    even-rule order, so it is flipped here.
    """
    if m not in (2, 3, 4):
        raise Unsupported(f"closed forms exist only for m in {{2, 3, 4}}, got {m!r}")
    alpha = check_tension(alpha)
    h = _level_mesh(alpha, level)

    def s(q: int) -> float:
        return math.sin(q * h / 4.0)

    if m == 2:
        d = math.sin(h)
        coeffs = [s(3) / d, s(1) / d]
    elif m == 3:
        d = math.sin(h) * math.sin(2 * h)
        coeffs = [
            s(3) ** 2 / d,
            (s(3) * s(5) + s(1) * s(7)) / d,
            s(1) ** 2 / d,
        ]
    else:
        d = math.sin(h) * math.sin(2 * h) * math.sin(3 * h)
        nearest_first = [
            s(1) ** 3 / d,
            (s(3) * s(5) ** 2 + s(1) * s(5) * s(7) + s(1) ** 2 * s(11)) / d,
            (s(3) ** 2 * s(9) + s(3) * s(5) * s(7) + s(1) * s(7) ** 2) / d,
            s(3) ** 3 / d,
        ]
        coeffs = nearest_first[::-1]
    return Mask(np.array(coeffs), int(level), m, alpha, False)


@lru_cache(maxsize=None)
def _cardinal_bspline(order: int, x: Fraction) -> Fraction:
    # Small-angle limit of the trigonometric recurrence with unit mesh.
    if order == 1:
        return Fraction(1) if 0 <= x < 1 else Fraction(0)
    return (
        x * _cardinal_bspline(order - 1, x) + (order - x) * _cardinal_bspline(order - 1, x - 1)
    ) / (order - 1)


def stationary_limit_fractions(m: int) -> tuple[Fraction, ...]:
    """Exact ``k -> infinity`` limit of the mask as rationals.

    Every coefficient is a ratio of sine products whose arguments scale with
    ``h``, so the limit replaces ``sin(x)`` by ``x``; this is the cardinal
    polynomial B-spline of order ``m`` sampled at the same quarter points.
    """
    m = _check_arity(m)
    quarter = Fraction(1, 4)
    return tuple(_cardinal_bspline(m, (m - i - 1) + quarter) for i in range(m))


def stationary_limit_mask(m: int) -> Mask:
    """Limit mask as floats. Its coefficients already sum to one."""
    fr = stationary_limit_fractions(m)
    return Mask(np.array([float(f) for f in fr]), None, m, 0.0, sum(fr) == 1)


def normalize(mask: Mask) -> Mask:
    """Divide every coefficient by the coefficient sum.

    Raises:
        DegenerateMask: if the sum is not safely positive.
    """
    total = mask.total
    if not total > 1e-300:
        raise DegenerateMask(f"cannot normalize a mask with coefficient sum {total!r}")
    return Mask(mask.coefficients / total, mask.level, mask.arity_m, mask.tension, True)
