"""Laurent symbols of binary masks and the contractivity smoothness test.

The symbol of a rule ``f^{k+1}_i = sum_j a_{i-2j} f^k_j`` is
``a(z) = sum_e a_e z^e``. With the stencils of :mod:`trigsubdiv.subdivide`
the 4-point mask ``(a_0, a_1, a_2, a_3)`` lands on exponents -4..3 as

    a_3 z^-4 + a_0 z^-3 + a_2 z^-2 + a_1 z^-1 + a_1 + a_2 z + a_0 z^2 + a_3 z^3.

A scheme is certified C^j when ``a(z) = ((1+z)/2)^j a_j(z)`` and the
difference scheme ``q_j(z) = a_j(z) / (1+z)`` has ``||S_{q_j}^L|| < 1`` for
some iterate ``L``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import NotDivisible
from .mask import Mask
from .subdivide import stencil_offset

CANONICAL_TOL = 1e-15
DIVISIBILITY_TOL = 1e-10


class LaurentPolynomial:
    """Real Laurent polynomial ``sum_e c_e z^e`` with finitely many terms.

    Stored densely as the lowest exponent plus a coefficient array. Terms with
    magnitude below ``1e-15`` are dropped from both ends.
    """

    __slots__ = ("_low", "_c")
    # Make numpy scalars defer to __rmul__ instead of building object arrays.
    __array_ufunc__ = None

    def __init__(self, coeffs: npt.ArrayLike = (), low: int = 0):
        c = np.array(coeffs, dtype=float).ravel()
        keep = np.flatnonzero(np.abs(c) >= CANONICAL_TOL)
        if keep.size == 0:
            self._low, self._c = 0, np.zeros(0)
        else:
            self._low = int(low) + int(keep[0])
            self._c = c[keep[0] : keep[-1] + 1].copy()
            self._c[np.abs(self._c) < CANONICAL_TOL] = 0.0
        self._c.setflags(write=False)

    @classmethod
    def from_dict(cls, terms: Mapping[int, float]) -> LaurentPolynomial:
        if not terms:
            return cls()
        low, high = min(terms), max(terms)
        c = np.zeros(high - low + 1)
        for e, v in terms.items():
            c[e - low] += v
        return cls(c, low)

    @classmethod
    def monomial(cls, exponent: int, value: float = 1.0) -> LaurentPolynomial:
        return cls([value], exponent)

    @property
    def low(self) -> int:
        return self._low

    @property
    def high(self) -> int:
        return self._low + self._c.size - 1

    @property
    def dense(self) -> np.ndarray:
        """Coefficients for exponents ``low..high``."""
        return self._c

    @property
    def coefficients(self) -> dict[int, float]:
        return {
            self._low + i: float(v) for i, v in enumerate(self._c) if abs(v) >= CANONICAL_TOL
        }

    def is_zero(self) -> bool:
        return self._c.size == 0

    def __call__(self, z):
        if self.is_zero():
            return 0.0 * z
        exps = np.arange(self._low, self.high + 1)
        return np.sum(self._c * np.power.outer(np.asarray(z, dtype=complex), exps), axis=-1)

    def _aligned(self, other: LaurentPolynomial) -> tuple[int, np.ndarray, np.ndarray]:
        if self.is_zero():
            return other._low, np.zeros_like(other._c), other._c
        if other.is_zero():
            return self._low, self._c, np.zeros_like(self._c)
        low = min(self._low, other._low)
        high = max(self.high, other.high)
        a = np.zeros(high - low + 1)
        b = np.zeros(high - low + 1)
        a[self._low - low : self.high - low + 1] = self._c
        b[other._low - low : other.high - low + 1] = other._c
        return low, a, b

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        low, a, b = self._aligned(other)
        return LaurentPolynomial(a + b, low)

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        low, a, b = self._aligned(other)
        return LaurentPolynomial(a - b, low)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial(-self._c, self._low)

    def __mul__(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            if self.is_zero() or other.is_zero():
                return LaurentPolynomial()
            return LaurentPolynomial(np.convolve(self._c, other._c), self._low + other._low)
        return LaurentPolynomial(self._c * float(other), self._low)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> LaurentPolynomial:
        return LaurentPolynomial(self._c / float(scalar), self._low)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._low == other._low and np.array_equal(self._c, other._c)

    def __hash__(self) -> int:
        return hash((self._low, self._c.tobytes()))

    def __repr__(self) -> str:
        terms = " + ".join(f"{v:.6g}*z^{e}" for e, v in self.coefficients.items())
        return f"LaurentPolynomial({terms or '0'})"

    def allclose(self, other: LaurentPolynomial, atol: float = 1e-12) -> bool:
        _, a, b = self._aligned(other)
        return bool(np.all(np.abs(a - b) <= atol))

    def shift(self, n: int) -> LaurentPolynomial:
        """Multiply by ``z**n``."""
        return LaurentPolynomial(self._c, self._low + n)

    def upsample(self, factor: int) -> LaurentPolynomial:
        """Substitute ``z -> z**factor``."""
        if self.is_zero():
            return LaurentPolynomial()
        c = np.zeros((self._c.size - 1) * factor + 1)
        c[::factor] = self._c
        return LaurentPolynomial(c, self._low * factor)

    def residue_sums(self, modulus: int = 2) -> np.ndarray:
        """``sum |c_e|`` over each residue class ``e mod modulus``."""
        out = np.zeros(modulus)
        if self.is_zero():
            return out
        exps = np.arange(self._low, self.high + 1) % modulus
        np.add.at(out, exps, np.abs(self._c))
        return out


SMOOTHING_FACTOR = LaurentPolynomial([0.5, 0.5])


def symbol_of_mask(mask: Mask) -> LaurentPolynomial:
    """Symbol of the even/odd refinement rule defined by ``mask``."""
    c = mask.coefficients
    m = mask.arity_m
    o = stencil_offset(m)
    terms: dict[int, float] = {}
    for s in range(m):
        # even point 2i reads f_{i+o+s} with a_s; odd point 2i+1 with a_{m-1-s}
        terms[-2 * (o + s)] = terms.get(-2 * (o + s), 0.0) + c[s]
        terms[1 - 2 * (o + s)] = terms.get(1 - 2 * (o + s), 0.0) + c[m - 1 - s]
    return LaurentPolynomial.from_dict(terms)


def _divide_by_one_plus_z(p: LaurentPolynomial) -> tuple[LaurentPolynomial, float]:
    c = p.dense
    if c.size < 2:
        return LaurentPolynomial(), float(np.max(np.abs(c), initial=0.0))
    r = np.empty(c.size - 1)
    acc = 0.0
    for i in range(c.size - 1):
        acc = c[i] - acc
        r[i] = acc
    remainder = abs(c[-1] - acc)
    return LaurentPolynomial(r, p.low), remainder


def divide_by_smoothing_factor(p: LaurentPolynomial) -> LaurentPolynomial:
    """Return ``q`` with ``p = ((1+z)/2) * q``.

    Raises:
        NotDivisible: if synthetic division leaves a remainder above ``1e-10``.
    """
    r, remainder = _divide_by_one_plus_z(p)
    if p.is_zero():
        return LaurentPolynomial()
    if remainder >= DIVISIBILITY_TOL:
        raise NotDivisible(
            f"symbol has no (1+z) factor (remainder {remainder:.3e}); even and odd "
            "coefficient sums differ",
            remainder,
        )
    return 2.0 * r


def scheme_norm(p: LaurentPolynomial) -> float:
    """``max(sum |c_{2e}|, sum |c_{2e+1}|)``."""
    return float(np.max(p.residue_sums(2)))


def iterated_norm(q: LaurentPolynomial, iterates: int) -> float:
    """Norm of ``S_q^L`` from the product symbol ``prod_{l<L} q(z^{2^l})``."""
    prod = LaurentPolynomial([1.0])
    for level in range(iterates):
        prod = prod * q.upsample(2**level)
    return float(np.max(prod.residue_sums(2**iterates)))


def is_contractive(q: LaurentPolynomial, max_iterates: int = 8) -> tuple[bool, int, float]:
    """First iterate ``L <= max_iterates`` with ``||S_q^L|| < 1``.

    Returns ``(found, L, norm)``; when nothing is found ``L`` is ``max_iterates``
    and ``norm`` is the last iterated norm.
    """
    norm = float("inf")
    for iterates in range(1, max_iterates + 1):
        norm = iterated_norm(q, iterates)
        if norm < 1.0:
            return True, iterates, norm
    return False, max_iterates, norm


@dataclass(frozen=True)
class SmoothnessCertificate:
    order: int
    difference_symbol: LaurentPolynomial | None
    iterates: int
    norm: float


def certify_smoothness(
    p: LaurentPolynomial, max_order: int = 8, max_iterates: int = 8
) -> SmoothnessCertificate:
    """Largest certified ``j`` with the difference symbol that proves it."""
    best = SmoothnessCertificate(-1, None, 0, float("nan"))
    current = p
    for j in range(max_order + 1):
        r, remainder = _divide_by_one_plus_z(current)
        if current.is_zero() or remainder >= DIVISIBILITY_TOL:
            break
        ok, iterates, norm = is_contractive(r, max_iterates)
        if ok:
            best = SmoothnessCertificate(j, r, iterates, norm)
        current = 2.0 * r
    return best


def smoothness_via_contractivity(
    p: LaurentPolynomial, max_order: int = 8, max_iterates: int = 8
) -> int:
    """Certified smoothness order of the stationary scheme with symbol ``p``.

    Returns the largest ``j <= max_order`` such that ``p = ((1+z)/2)^j a_j``
    and the difference scheme of ``a_j`` contracts within ``max_iterates``
    steps, or ``-1`` if even convergence cannot be certified.
    """
    return certify_smoothness(p, max_order, max_iterates).order
