"""Uniform trigonometric B-splines on the knots ``t_i = i * mesh``.

The order-``r`` function is built from the order-1 box ``[0, mesh)`` by

    T^r(x) = (sin(x) T^{r-1}(x) + sin(r*mesh - x) T^{r-1}(x - mesh)) / sin((r-1)*mesh)

so ``T^r`` is supported on ``[0, r*mesh)`` and locally spans
``cos((r-1-2p) x), sin((r-1-2p) x)``. All evaluators accept scalars or arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
import numpy.typing as npt

from .errors import InvalidMesh, OutOfDomain

# Keeps sin((r-1)*mesh) away from zero.
MESH_GUARD = 1e-12

ArrayLike = Union[float, npt.ArrayLike]


@dataclass(frozen=True)
class TrigKnotGrid:
    """Uniform knot grid ``t_0 = 0, t_1 = mesh, ..., t_count = count * mesh``."""

    mesh: float
    count: int = 1

    def __post_init__(self) -> None:
        if not math.isfinite(self.mesh) or self.mesh <= 0.0:
            raise InvalidMesh(f"mesh must be positive, got {self.mesh!r}")
        if self.count < 1:
            raise InvalidMesh(f"knot count must be positive, got {self.count!r}")

    @property
    def knots(self) -> np.ndarray:
        return self.mesh * np.arange(self.count + 1, dtype=float)

    def check_order(self, order: int) -> None:
        check_order(order, self.mesh)


def _as_mesh(grid: TrigKnotGrid | float) -> float:
    if isinstance(grid, TrigKnotGrid):
        return grid.mesh
    mesh = float(grid)
    if not math.isfinite(mesh) or mesh <= 0.0:
        raise InvalidMesh(f"mesh must be positive, got {grid!r}")
    return mesh


def check_order(order: int, mesh: float) -> None:
    """Raise :class:`InvalidMesh` unless ``order`` can be evaluated on ``mesh``."""
    if int(order) != order or order < 1:
        raise InvalidMesh(f"basis order must be an integer >= 1, got {order!r}")
    if mesh <= 0.0:
        raise InvalidMesh(f"mesh must be positive, got {mesh!r}")
    if (order - 1) * mesh >= math.pi - MESH_GUARD:
        raise InvalidMesh(
            f"order {order} needs (order-1)*mesh < pi, got {(order - 1) * mesh!r}"
        )


def _basis(order: int, x: np.ndarray, mesh: float) -> np.ndarray:
    if order == 1:
        return ((x >= 0.0) & (x < mesh)).astype(float)
    left = _basis(order - 1, x, mesh)
    right = _basis(order - 1, x - mesh, mesh)
    return (np.sin(x) * left + np.sin(order * mesh - x) * right) / math.sin((order - 1) * mesh)


def _output(values: np.ndarray, x: ArrayLike):
    if np.ndim(x) == 0:
        return float(values)
    return values


def eval_basis(order: int, x: ArrayLike, grid: TrigKnotGrid | float):
    """Evaluate ``T_0^order(x)`` with mesh size taken from ``grid``.

    ``grid`` may be a :class:`TrigKnotGrid` or the mesh size itself. Returns a
    float for scalar ``x`` and an array otherwise.

    Raises:
        InvalidMesh: if ``mesh <= 0`` or ``(order - 1) * mesh >= pi``.
    """
    mesh = _as_mesh(grid)
    check_order(order, mesh)
    xa = np.asarray(x, dtype=float)
    return _output(_basis(int(order), xa, mesh), x)


def eval_shifted_basis(order: int, j: int, x: ArrayLike, grid: TrigKnotGrid | float):
    """Evaluate the translate ``T_j^order(x) = T_0^order(x - j * mesh)``."""
    mesh = _as_mesh(grid)
    xa = np.asarray(x, dtype=float)
    return eval_basis(order, _output(xa - j * mesh, x), mesh)


def spline_domain(n_coeffs: int, order: int, grid: TrigKnotGrid | float) -> tuple[float, float]:
    """Interval ``[t_{order-1}, t_{n_coeffs}]`` on which all translates are active."""
    mesh = _as_mesh(grid)
    return (order - 1) * mesh, n_coeffs * mesh


def eval_trig_spline(
    coeffs: npt.ArrayLike, order: int, x: ArrayLike, grid: TrigKnotGrid | float
):
    """Evaluate ``sum_j coeffs[j] * T_j^order(x)``.

    When ``grid`` is a :class:`TrigKnotGrid` its last knot index must equal
    ``len(coeffs) + order - 1``, i.e. the grid carries exactly the knots the
    translates need.

    Raises:
        OutOfDomain: if any ``x`` lies outside ``spline_domain(...)``.
        InvalidMesh: on an invalid mesh/order pair or a mismatched grid.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("coeffs must be a non-empty 1-D sequence")
    mesh = _as_mesh(grid)
    check_order(order, mesh)
    if isinstance(grid, TrigKnotGrid) and grid.count != c.size + order - 1:
        raise InvalidMesh(
            f"grid has knots t_0..t_{grid.count}, expected t_0..t_{c.size + order - 1} "
            f"for {c.size} coefficients of order {order}"
        )
    xa = np.asarray(x, dtype=float)
    lo, hi = spline_domain(c.size, order, mesh)
    # Endpoints are computed as k*mesh; allow rounding at the boundary.
    slack = 1e-12 * max(1.0, hi)
    if np.any((xa < lo - slack) | (xa > hi + slack)):
        raise OutOfDomain(f"x must lie in [{lo}, {hi}]")
    total = np.zeros_like(xa)
    for j, cj in enumerate(c):
        if cj != 0.0:
            total = total + cj * _basis(int(order), xa - j * mesh, mesh)
    return _output(total, x)
