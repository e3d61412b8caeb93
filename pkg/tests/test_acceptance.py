"""One PASS/FAIL line per acceptance criterion, tolerances pinned per criterion.

Lines are printed with ``-s`` and collected in the terminal summary.
"""

import json
import math
import time

import numpy as np
import pytest
from scipy.spatial.distance import directed_hausdorff

from trigsubdiv.analysis import check_mask_bounds, deviation_sequence, fit_decay, full_report
from trigsubdiv.mask import SchemeFamily, closed_form_mask, generate_mask, stationary_limit_mask
from trigsubdiv.reproduce import (
    CircleSample,
    basis_limit_symmetry,
    matched_family,
    sample_conic,
    verify_circle_reproduction,
)
from trigsubdiv.subdivide import ControlPolygon, refine_once, refine_to_level
from trigsubdiv.symbol import (
    LaurentPolynomial,
    certify_smoothness,
    divide_by_smoothing_factor,
    scheme_norm,
    smoothness_via_contractivity,
    symbol_of_mask,
)

PI = math.pi
ALPHAS = [PI / 180, PI / 12, PI / 6, PI / 4, PI / 3 - 1e-3]
PENTAGON_HAUSDORFF = 3.0338604899582406e-05  # raw masks, measured on the first verified run


def test_ac1_mask_oracle(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for m in (2, 3, 4):
        for k in range(11):
            for alpha in ALPHAS:
                g = generate_mask(SchemeFamily(m, alpha), k).coefficients
                c = closed_form_mask(m, k, alpha).coefficients
                worst = max(worst, float(np.max(np.abs(g - c))))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    assert criterion("AC1 mask oracle", ok, f"max diff {worst:.2e}, {elapsed * 1e3:.0f} ms")


def test_ac2_stationary_limits(criterion):
    two = generate_mask(SchemeFamily(2, PI / 4, normalized=True), 20).coefficients
    four = generate_mask(SchemeFamily(4, PI / 4, normalized=True), 20).coefficients
    err2 = np.max(np.abs(two - [0.75, 0.25]))
    # stored order runs opposite to the reference 4-point listing
    err4 = np.max(np.abs(four[::-1] - np.array([1, 121, 235, 27]) / 384))
    ok = err2 <= 1e-10 and err4 <= 1e-10
    assert criterion("AC2 stationary limits", ok, f"m=2 {err2:.1e}, m=4 {err4:.1e} at k=20")


def test_ac3_brackets(criterion):
    evaluated = violations = 0
    for alpha in ALPHAS:
        report = check_mask_bounds(SchemeFamily(4, alpha), 10)
        evaluated += len(report.evaluated)
        violations += len(report.violations)
    ok = violations == 0 and evaluated > 0
    assert criterion("AC3 coefficient brackets", ok, f"{violations} violations in {evaluated} checks")


def _four_point_pipeline():
    a = symbol_of_mask(stationary_limit_mask(4))
    b = divide_by_smoothing_factor(a)
    cert = certify_smoothness(b)
    return a, b, cert


def _same_scheme(p, q, atol):
    """Equal up to an even exponent shift, which relabels the data only."""
    shift = q.low - p.low
    return shift % 2 == 0 and p.shift(shift).allclose(q, atol=atol)


def test_ac4_divided_symbol(criterion):
    _, b, _ = _four_point_pipeline()
    want = LaurentPolynomial([1, 26, 95, 140, 95, 26, 1], -2) / 192
    ok = _same_scheme(b, want, 1e-14)
    assert criterion("AC4a b(z) = (1/192)(1,26,95,140,95,26,1)", ok, f"ours starts at z^{b.low}")


@pytest.mark.xfail(strict=True, reason="the expected 1/48 prefactor is inconsistent with the norm 11/12")
def test_ac4_difference_symbol_as_given(criterion):
    _, _, cert = _four_point_pipeline()
    given = LaurentPolynomial([1, 22, 1], -2) / 48
    d = cert.difference_symbol
    ok = _same_scheme(d, given, 1e-14)
    lead = d.dense[0]
    criterion("AC4b d(z) = (1/48)(1,22,1)", ok, f"computed (1/{1 / lead:.0f})(1,22,1)")
    assert ok


def test_ac4_norm(criterion):
    _, _, cert = _four_point_pipeline()
    norm = scheme_norm(cert.difference_symbol)
    ok = abs(norm - 11 / 12) <= 1e-14
    assert criterion("AC4c scheme_norm(d) = 11/12", ok, f"{norm!r}")


def test_ac4_certificate(criterion):
    a, b, cert = _four_point_pipeline()
    ok = cert.order == 3
    assert criterion(
        "AC4d C^3 certificate", ok,
        f"b(z) -> C^{cert.order}; full a(z) -> C^{smoothness_via_contractivity(a)}",
    )


def test_ac5_circle_and_ellipse(criterion):
    worst = 0.0
    for m in (2, 3):
        for n in (8, 12, 16, 24):
            report = verify_circle_reproduction(CircleSample(n), matched_family(n, m), 3)
            worst = max(worst, report.max_radius_error)
    fam = matched_family(12, 3)
    scaled = refine_to_level(sample_conic(CircleSample(12, radii=(2.0, 0.5))), fam, 3).points
    circle = refine_to_level(sample_conic(CircleSample(12)), fam, 3).points
    ell = float(np.max(np.abs(scaled - circle * [2.0, 0.5])))
    ok = worst <= 1e-9 and ell <= 1e-12
    assert criterion(
        "AC5 circle/ellipse", ok,
        f"radius err {worst:.1e} at tension 2pi/(n(m-1)), ellipse {ell:.1e}",
    )


@pytest.mark.xfail(strict=True, reason="3-point scheme reproduces cos(2 alpha x), not cos(alpha x)")
def test_ac5_three_point_at_sample_angle(criterion):
    worst = max(
        verify_circle_reproduction(CircleSample(n), SchemeFamily(3, 2 * PI / n), 3).max_radius_error
        for n in (8, 12, 16, 24)
    )
    ok = worst <= 1e-9
    criterion("AC5 (m=3 with tension 2pi/n)", ok, f"radius err {worst:.3f}")
    assert ok


class _Chaikin:
    def mask(self, level):
        return stationary_limit_mask(2)


def test_ac6_chaikin_pentagon(criterion):
    t = 2 * PI * np.arange(5) / 5 + PI / 2
    pentagon = ControlPolygon(np.column_stack([np.cos(t), np.sin(t)]))
    ours = refine_to_level(pentagon, SchemeFamily(2, PI / 180), 3).points
    ref = refine_to_level(pentagon, _Chaikin(), 3).points
    h = max(directed_hausdorff(ours, ref)[0], directed_hausdorff(ref, ours)[0])
    ok = h <= 1e-3 and h == pytest.approx(PENTAGON_HAUSDORFF, rel=1e-6)
    assert criterion("AC6 Chaikin coincidence", ok, f"Hausdorff {h:.3e}")


def test_ac7_symmetry(criterion):
    worst = 0.0
    for m in range(2, 7):
        report = basis_limit_symmetry(SchemeFamily(m, PI / 6), 5)
        worst = max(worst, report.max_asymmetry if report.symmetric else math.inf)
    ok = worst <= 1e-12
    assert criterion("AC7 basis limit symmetry", ok, f"max asymmetry {worst:.1e}, m=2..6")


def test_ac8_decay(criterion):
    fam = SchemeFamily(4, PI / 6)
    rho = fit_decay(deviation_sequence(fam, 12), start=4).exponent
    report = full_report(fam, 12)
    flagged = report.decay_matches_stated is False and any("stated" in n for n in report.notes)
    ok = abs(rho + 2) <= 0.1 and flagged
    assert criterion("AC8 deviation decay", ok, f"rho {rho:.4f}, stated -3 flagged: {flagged}")


def test_ac9_smoothness_table(criterion):
    chaikin = smoothness_via_contractivity(symbol_of_mask(stationary_limit_mask(2)))
    _, b, _ = _four_point_pipeline()
    b4 = smoothness_via_contractivity(b)
    r2 = full_report(SchemeFamily(2, PI / 6), 12)
    r4 = full_report(SchemeFamily(4, PI / 6), 12)
    again = full_report(SchemeFamily(4, PI / 6), 12)
    same = json.dumps(r4.to_dict()) == json.dumps(again.to_dict())
    side_by_side = (
        r2.claimed_smoothness_general == 1 and r2.stationary_smoothness == 1
        and (r4.claimed_smoothness_general, r4.claimed_smoothness_tabulated) == (3, 4)
        and r4.divided_smoothness == 3
    )
    ok = chaikin == 1 and b4 == 3 and side_by_side and same
    assert criterion(
        "AC9 smoothness certificates", ok,
        f"m=2 C^{chaikin}, m=4 C^{b4}; m=4 claimed C^3/C^4, "
        f"equivalence transfers C^{r4.equivalence_smoothness}",
    )


def test_ac10_refinement_invariants(criterion):
    rng = np.random.default_rng(20261014)
    failures = 0
    for trial in range(1000):
        m = (2, 3, 4)[trial % 3]
        n = int(rng.integers(m, 16))
        pts = rng.uniform(-5, 5, size=(n, 2))
        family = SchemeFamily(m, float(rng.uniform(0.01, 1.0)), normalized=True)
        mask = generate_mask(family, int(rng.integers(0, 6)))
        poly = ControlPolygon(pts)
        out = refine_once(poly, mask).points
        A = rng.normal(size=(2, 2))
        t = rng.normal(size=2)
        moved = refine_once(poly.transformed(A, t), mask).points
        affine = np.allclose(moved, out @ A.T + t, rtol=1e-12, atol=1e-12)
        count = len(out) == 2 * n
        o = -((m - 1) // 2)
        idx = (np.arange(len(out))[:, None] // 2 + o + np.arange(m)) % n
        windows = pts[idx]
        hull = np.all(out >= windows.min(axis=1) - 1e-12) and np.all(out <= windows.max(axis=1) + 1e-12)
        failures += not (affine and count and hull)
    assert criterion("AC10 refinement invariants", failures == 0, f"{failures} failures in 1000 polygons")
