"""Parametrized Jordan curves in the plane.

Curves are trigonometric polynomials gamma(t) = sum_k c_k e^{ikt},
which keeps every downstream quadrature spectrally accurate.  Families
interpolating from the circle toward degenerate shapes (ellipse, star,
Joukowski slit family) provide the test corpus, and an arc-chord
distortion constant serves as a quasicircle-distortion proxy.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

TWO_PI = 2.0 * np.pi


class CurveError(ValueError):
    """Invalid curve data or a failed curve invariant."""


@dataclass(frozen=True, eq=False)
class CurveSpec:
    """Trigonometric-polynomial parametrization of a Jordan curve.

    gamma(t) = sum_j coeffs[j] * exp(i (k_min + j) t), t in [0, 2*pi).

    Immutable after construction; all methods are pure.
    """

    coeffs: np.ndarray          # complex Fourier coefficients
    k_min: int                  # frequency of coeffs[0]
    family_tag: str = ""
    distortion_param: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise CurveError("coeffs must be a non-empty 1-d array")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def frequencies(self) -> np.ndarray:
        return self.k_min + np.arange(self.coeffs.size)

    @property
    def degree(self) -> int:
        nz = np.abs(self.coeffs) > 0
        if not nz.any():
            return 0
        return int(np.max(np.abs(self.frequencies[nz])))

    def _eval_with_factor(self, t, power):
        t = np.asarray(t, dtype=float)
        k = self.frequencies
        phases = np.exp(1j * np.multiply.outer(t, k))
        fac = (1j * k) ** power
        return phases @ (self.coeffs * fac)

    def eval(self, t):
        """Point gamma(t); 2*pi-periodic, accepts scalars or arrays."""
        return self._eval_with_factor(t, 0)

    def derivative(self, t):
        """gamma'(t), term-by-term differentiation (exact)."""
        return self._eval_with_factor(t, 1)

    def second_derivative(self, t):
        return self._eval_with_factor(t, 2)

    def samples(self, m: int):
        """Equispaced parameters and curve points, t_j = 2*pi*j/m."""
        t = TWO_PI * np.arange(m) / m
        return t, self.eval(t)

    def diameter(self, m: int = 512) -> float:
        _, z = self.samples(m)
        return float(np.abs(z[:, None] - z[None, :]).max())

    def to_dict(self) -> dict:
        """JSON-ready form: named family or raw coefficient triples."""
        if self.family_tag in FAMILY_RANGES:
            return {"family": self.family_tag, "param": self.distortion_param}
        return {"coeffs": [[int(k), float(c.real), float(c.imag)]
                           for k, c in zip(self.frequencies, self.coeffs)]}


def curve_from_dict(data: dict) -> "CurveSpec":
    if "family" in data:
        return curve_family(data["family"], float(data.get("param", 0.0)))
    if "coeffs" in data:
        triples = data["coeffs"]
        ks = [int(k) for k, _, _ in triples]
        k_min, k_max = min(ks), max(ks)
        c = np.zeros(k_max - k_min + 1, dtype=complex)
        for k, re, im in triples:
            c[int(k) - k_min] += complex(re, im)
        return validate_curve(CurveSpec(c, k_min, family_tag="custom"))
    raise CurveError("curve spec needs 'family' or 'coeffs'")


# family name -> (param range, inclusive flags)
FAMILY_RANGES = {
    "circle": ((0.0, 0.0), (True, True)),
    "ellipse": ((0.0, 1.0), (False, True)),
    "star": ((0.0, 0.2), (True, False)),
    "cusp": ((0.0, 1.0), (True, False)),
}

STAR_WAVES = 5


def curve_family(name: str, param: float) -> CurveSpec:
    """Construct a member of one of the built-in curve families.

    circle:   gamma = e^{it}                         (param unused, 0)
    ellipse:  gamma = cos t + i*param*sin t,         param in (0, 1]
    star:     r(t)  = 1 + param*cos(5 t),            param in [0, 0.2)
    cusp:     gamma = e^{it} - param*e^{-it},        param in [0, 1)
              (Joukowski-type; param -> 1 collapses to a slit)
    """
    if name not in FAMILY_RANGES:
        raise CurveError(f"unknown curve family {name!r}")
    (lo, hi), (lo_inc, hi_inc) = FAMILY_RANGES[name]
    ok_lo = param >= lo if lo_inc else param > lo
    ok_hi = param <= hi if hi_inc else param < hi
    if not (ok_lo and ok_hi):
        raise CurveError(f"param {param} outside range of family {name!r}")

    if name == "circle":
        spec = CurveSpec(np.array([1.0 + 0j]), 1, "circle", 0.0)
    elif name == "ellipse":
        # cos t + i b sin t = (1+b)/2 e^{it} + (1-b)/2 e^{-it}
        b = param
        spec = CurveSpec(np.array([(1 - b) / 2, 0, (1 + b) / 2], dtype=complex),
                         -1, "ellipse", b)
    elif name == "star":
        # (1 + p cos 5t) e^{it} = e^{it} + p/2 (e^{6it} + e^{-4it})
        c = np.zeros(11, dtype=complex)
        c[0] = param / 2          # k = -4
        c[5] = 1.0                # k = 1
        c[10] = param / 2         # k = 6
        spec = CurveSpec(c, -4, "star", param)
    else:  # cusp
        spec = CurveSpec(np.array([-param, 0, 1.0], dtype=complex), -1,
                         "cusp", param)
    return validate_curve(spec)


def validate_curve(curve: CurveSpec, m: int = 512) -> CurveSpec:
    """Check the Jordan-curve invariants on an m-point sample.

    Raises CurveError unless the sampled curve is injective (all
    non-adjacent pairwise distances exceed 1e-6 of the diameter), has
    speed bounded away from zero, and is positively oriented.
    """
    t, z = curve.samples(m)
    diam = float(np.abs(z[:, None] - z[None, :]).max())
    if diam <= 0:
        raise CurveError("degenerate curve (single point)")
    dist = np.abs(z[:, None] - z[None, :])
    idx = np.arange(m)
    sep = np.abs(idx[:, None] - idx[None, :])
    adjacent = np.minimum(sep, m - sep) <= 1
    if dist[~adjacent].min() < 1e-6 * diam:
        raise CurveError("curve fails the injectivity tolerance")
    speed = np.abs(curve.derivative(t))
    if speed.min() < 1e-8 * diam:
        raise CurveError("curve speed drops below tolerance")
    if enclosed_area(curve) <= 0:
        raise CurveError("curve is not positively oriented")
    return curve


def enclosed_area(curve: CurveSpec, n: int = 4096) -> float:
    """Signed area (1/2) Int (x dy - y dx) by periodic trapezoid rule."""
    t, z = curve.samples(n)
    dz = curve.derivative(t)
    return float(0.5 * (TWO_PI / n) * np.sum(np.imag(np.conj(z) * dz)))


def arclengths(curve: CurveSpec, m: int):
    """Cumulative arclength at the m equispaced parameters (spectral)."""
    # integrate |gamma'| through its Fourier series on a fine grid
    fine = max(4096, 8 * m)
    fine = int(np.ceil(fine / m)) * m
    t = TWO_PI * np.arange(fine) / fine
    speed = np.abs(curve.derivative(t))
    shat = np.fft.fft(speed)
    k = np.fft.fftfreq(fine, 1.0 / fine)
    with np.errstate(divide="ignore", invalid="ignore"):
        integ = np.where(k == 0, 0.0, shat / (1j * k))
    integ[0] = 0.0
    osc = np.fft.ifft(integ).real
    cum = shat[0].real / fine * t + (osc - osc[0])
    total = shat[0].real / fine * TWO_PI
    return cum[::fine // m], total


def three_point_constant(curve: CurveSpec, m: int = 1024) -> float:
    """Arc-chord distortion: max over sampled pairs of
    (length of the shorter subarc between the points) / (chord length).

    Equals pi/2 for a circle (antipodal points) and grows without bound
    along families that degenerate out of the quasicircle class.
    """
    if m < 16:
        raise CurveError("three_point_constant needs m >= 16")
    s, total = arclengths(curve, m)
    _, z = curve.samples(m)
    chord = np.abs(z[:, None] - z[None, :])
    diam = chord.max()
    iu = np.triu_indices(m, 1)
    chords = chord[iu]
    if chords.min() < 1e-9 * diam:
        raise CurveError("degenerate chord: sampled points coincide")
    darc = np.abs(s[:, None] - s[None, :])[iu]
    darc = np.minimum(darc, total - darc)
    return float(np.max(darc / chords))


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) < 1e-14:
            raise CurveError("singular Mobius map")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return (self.a * z + self.b) / (self.c * z + self.d)

    @property
    def pole(self):
        if self.c == 0:
            return None
        return -self.d / self.c

    @staticmethod
    def disk_automorphism(p: complex) -> "MobiusMap":
        """z -> (z - p) / (1 - conj(p) z)."""
        if abs(p) >= 1:
            raise CurveError("disk automorphism needs |p| < 1")
        return MobiusMap(1.0, -p, -np.conj(p), 1.0)

    @staticmethod
    def rotation(angle: float) -> "MobiusMap":
        return MobiusMap(np.exp(1j * angle), 0.0, 0.0, 1.0)


def mobius_image_curve(curve: CurveSpec, mob: MobiusMap, n_samples: int = 4096,
                       coeff_tol: float = 1e-13) -> CurveSpec:
    """Trig-polynomial fit of t -> mob(gamma(t)).

    The image of an analytic curve under a Mobius map whose pole stays
    away from the curve has exponentially decaying Fourier coefficients;
    they are truncated at coeff_tol relative to the largest one.
    """
    t, z = curve.samples(n_samples)
    if mob.pole is not None:
        gap = np.abs(z - mob.pole).min()
        if gap < 0.05 * curve.diameter():
            raise CurveError("Mobius pole too close to the curve")
    w = mob(z)
    spec = np.fft.fft(w) / n_samples
    k = np.fft.fftfreq(n_samples, 1.0 / n_samples).astype(int)
    keep = np.abs(spec) > coeff_tol * np.abs(spec).max()
    ks, cs = k[keep], spec[keep]
    k_min, k_max = int(ks.min()), int(ks.max())
    coeffs = np.zeros(k_max - k_min + 1, dtype=complex)
    coeffs[ks - k_min] = cs
    out = CurveSpec(coeffs, k_min, family_tag=f"{curve.family_tag}+mobius",
                    distortion_param=curve.distortion_param)
    return validate_curve(out)
