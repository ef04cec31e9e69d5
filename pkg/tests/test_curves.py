import math

import numpy as np
import pytest

from harmtrans import (CurveError, CurveSpec, MobiusMap, curve_family,
                       curve_from_dict, enclosed_area, mobius_image_curve,
                       three_point_constant, validate_curve)

PI = math.pi


def test_eval_unit_circle():
    c = curve_family("circle", 0.0)
    assert c.eval(0.0) == pytest.approx(1.0)
    assert c.eval(PI / 2) == pytest.approx(1j)
    # periodicity
    assert c.eval(0.3 + 2 * PI) == pytest.approx(c.eval(0.3))


def test_eval_ellipse():
    c = curve_family("ellipse", 0.5)
    assert c.eval(PI) == pytest.approx(-1.0)
    assert c.eval(PI / 2) == pytest.approx(0.5j)


def test_derivative_circle():
    c = curve_family("circle", 0.0)
    assert c.derivative(0.0) == pytest.approx(1j)
    assert c.derivative(PI) == pytest.approx(-1j)


def test_derivative_scaled_circle():
    c = CurveSpec(np.array([2.0 + 0j]), 1)
    assert c.derivative(0.0) == pytest.approx(2j)


@pytest.mark.parametrize("name,param", [("circle", 0.0), ("ellipse", 0.5),
                                        ("star", 0.1), ("cusp", 0.5)])
def test_derivative_matches_finite_differences(name, param):
    c = curve_family(name, param)
    rng = np.random.default_rng(5)
    t = rng.random(32) * 2 * PI
    fd = (c.eval(t + 1e-5) - c.eval(t - 1e-5)) / 2e-5
    d = c.derivative(t)
    assert np.abs(fd - d).max() / np.abs(d).max() < 1e-8


@pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
def test_area_circle_radii(radius):
    c = CurveSpec(np.array([radius + 0j]), 1)
    assert enclosed_area(c) == pytest.approx(PI * radius ** 2, abs=1e-12)


@pytest.mark.parametrize("b", [0.3, 0.5, 1.0])
def test_area_ellipse(b):
    c = curve_family("ellipse", b)
    assert enclosed_area(c) == pytest.approx(PI * b, abs=1e-12)


def test_area_perturbed_circle_quadrature_oracle():
    # r(t) = 1 + 0.1 cos 3t; refine the quadrature until stable
    c = CurveSpec(np.array([0.05, 0, 0, 1.0, 0, 0, 0.05], dtype=complex), -2)
    coarse = enclosed_area(c, 4096)
    fine = enclosed_area(c, 8192)
    assert abs(coarse - fine) < 1e-12
    # exact: pi (1 + eps^2/2) for r = 1 + eps cos 3t
    assert coarse == pytest.approx(PI * (1 + 0.1 ** 2 / 2), abs=1e-12)


def test_three_point_circle_is_half_pi():
    c = curve_family("circle", 0.0)
    assert three_point_constant(c, 256) == pytest.approx(PI / 2, abs=1e-3)
    # dense-sampling oracle: value stable with m
    assert three_point_constant(c, 1024) == pytest.approx(PI / 2, abs=1e-6)


def test_three_point_ellipse_exceeds_circle():
    c = curve_family("ellipse", 0.5)
    assert three_point_constant(c, 256) > PI / 2


def test_three_point_cusp_divergence():
    assert three_point_constant(curve_family("cusp", 0.99), 1024) > 100


def test_three_point_similarity_invariance():
    c = curve_family("star", 0.1)
    val = three_point_constant(c, 512)
    a, b = 0.37 - 1.2j, 2.0 + 3.0j
    coeffs = (a * c.coeffs).astype(complex)
    coeffs[-c.k_min] += b              # translation lands on the k = 0 slot
    moved = CurveSpec(coeffs, c.k_min)
    assert three_point_constant(moved, 512) == pytest.approx(val, abs=1e-10)


def test_three_point_requires_enough_samples():
    with pytest.raises(CurveError):
        three_point_constant(curve_family("circle", 0.0), 8)


def test_family_parameter_degeneracies():
    ellipse1 = curve_family("ellipse", 1.0)
    t = np.linspace(0, 2 * PI, 64, endpoint=False)
    assert np.abs(ellipse1.eval(t) - np.exp(1j * t)).max() < 1e-14


def test_family_cusp_is_injective():
    c = curve_family("cusp", 0.5)     # validate_curve runs inside
    assert validate_curve(c) is c


def test_family_errors():
    with pytest.raises(CurveError):
        curve_family("square", 0.1)
    with pytest.raises(CurveError):
        curve_family("ellipse", 0.0)
    with pytest.raises(CurveError):
        curve_family("ellipse", 1.5)
    with pytest.raises(CurveError):
        curve_family("cusp", 1.0)
    with pytest.raises(CurveError):
        curve_family("star", 0.2)


def test_validate_rejects_nonsimple_curve():
    # figure-eight-like: fails injectivity
    bad = CurveSpec(np.array([1.0, 0, 1.0], dtype=complex), -1)
    with pytest.raises(CurveError):
        validate_curve(bad)


def test_validate_rejects_negative_orientation():
    bad = CurveSpec(np.array([1.0 + 0j]), -1)      # clockwise circle
    with pytest.raises(CurveError):
        validate_curve(bad)


def test_serialization_roundtrip():
    c = curve_family("cusp", 0.3)
    again = curve_from_dict(c.to_dict())
    assert again.family_tag == "cusp"
    assert again.distortion_param == 0.3
    raw = curve_from_dict({"coeffs": [[1, 1.0, 0.0], [-1, -0.3, 0.0]]})
    t = np.linspace(0, 2 * PI, 32, endpoint=False)
    assert np.abs(raw.eval(t) - c.eval(t)).max() < 1e-14


def test_mobius_image_is_valid_curve():
    c = curve_family("ellipse", 0.5)
    mob = MobiusMap.disk_automorphism(0.2)
    img = mobius_image_curve(c, mob)
    t = np.linspace(0, 2 * PI, 64, endpoint=False)
    assert np.abs(img.eval(t) - mob(c.eval(t))).max() < 1e-12
    assert enclosed_area(img) > 0


def test_mobius_pole_near_curve_rejected():
    c = curve_family("circle", 0.0)
    with pytest.raises(CurveError):
        mobius_image_curve(c, MobiusMap(0.0, 1.0, 1.0, -1.01))  # pole at 1.01
