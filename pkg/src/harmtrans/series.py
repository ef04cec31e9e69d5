"""Harmonic functions on disks, exterior disks and annuli as coefficient
series, with exact Dirichlet inner products.

A series is  h(z) = sum_n a_n z^n + sum_n b_n conj(z)^n + c log|z|,
finitely supported.  The admissible index ranges depend on the domain:
disk n >= 0 (c = 0), exterior n <= 0, annulus any n.  The inner product
follows the ``series`` convention of :mod:`harmtrans.conventions`:

    (f, g) = IntInt [ f_z conj(g_z) + f_zbar conj(g_zbar) ] dA,

so (z^n, z^n) = n*pi on the unit disk, and the holomorphic/antiholomorphic
parts are exactly orthogonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


class SeriesError(ValueError):
    """Invalid series data or an unsupported operation."""


@dataclass(frozen=True)
class Domain:
    """disk(R): |z| < R;  exterior(R): |z| > R;  annulus(r, R): r < |z| < R."""

    kind: str
    r_inner: float
    r_outer: float

    @staticmethod
    def disk(radius: float = 1.0) -> "Domain":
        if radius <= 0:
            raise SeriesError("disk radius must be positive")
        return Domain("disk", 0.0, float(radius))

    @staticmethod
    def exterior(radius: float = 1.0) -> "Domain":
        if radius <= 0:
            raise SeriesError("exterior radius must be positive")
        return Domain("exterior", float(radius), math.inf)

    @staticmethod
    def annulus(r_inner: float, r_outer: float = 1.0) -> "Domain":
        if not 0 < r_inner < r_outer:
            raise SeriesError("annulus needs 0 < r_inner < r_outer")
        return Domain("annulus", float(r_inner), float(r_outer))

    def contains(self, z) -> np.ndarray:
        r = np.abs(np.asarray(z, dtype=complex))
        return (r > self.r_inner) & (r < self.r_outer)


def _clean(coeffs) -> dict:
    out = {}
    for n, v in dict(coeffs or {}).items():
        v = complex(v)
        if v != 0:
            out[int(n)] = v
    return out


@dataclass(frozen=True, eq=False)
class HarmonicSeries:
    domain: Domain
    a: dict          # analytic part, n -> coefficient of z^n
    b: dict          # anti-analytic part, n -> coefficient of conj(z)^n
    c: complex = 0.0  # coefficient of log|z|

    def __post_init__(self):
        a, b = _clean(self.a), _clean(self.b)
        if 0 in b:                       # constant stored once, in a[0]
            a[0] = a.get(0, 0.0) + b.pop(0)
            if a[0] == 0:
                del a[0]
        kind = self.domain.kind
        idx = set(a) | set(b)
        if kind == "disk":
            if any(n < 0 for n in idx):
                raise SeriesError("disk series admits indices n >= 0 only")
            if self.c != 0:
                raise SeriesError("disk series has no log term")
        elif kind == "exterior":
            if any(n > 0 for n in idx):
                raise SeriesError("exterior series admits indices n <= 0 only")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", complex(self.c))

    def __add__(self, other: "HarmonicSeries") -> "HarmonicSeries":
        if self.domain != other.domain:
            raise SeriesError("cannot add series on different domains")
        a = dict(self.a)
        for n, v in other.a.items():
            a[n] = a.get(n, 0.0) + v
        b = dict(self.b)
        for n, v in other.b.items():
            b[n] = b.get(n, 0.0) + v
        return HarmonicSeries(self.domain, a, b, self.c + other.c)

    def scaled(self, factor: complex) -> "HarmonicSeries":
        return HarmonicSeries(self.domain,
                              {n: factor * v for n, v in self.a.items()},
                              {n: factor * v for n, v in self.b.items()},
                              factor * self.c)


def evaluate(h: HarmonicSeries, z):
    """Pointwise value of the series; z must lie strictly in the domain."""
    z = np.asarray(z, dtype=complex)
    if not np.all(h.domain.contains(z)):
        raise SeriesError(f"evaluation point outside {h.domain.kind} domain")
    out = np.zeros(z.shape, dtype=complex)
    for n, v in h.a.items():
        out = out + v * z ** n
    zb = np.conj(z)
    for n, v in h.b.items():
        out = out + v * zb ** n
    if h.c != 0:
        out = out + h.c * np.log(np.abs(z))
    return out


def _radial_moment(domain: Domain, n: int) -> float:
    """IntInt_domain |z|^(2n-2) dA  (finite combinations only)."""
    r, R = domain.r_inner, domain.r_outer
    if domain.kind == "disk":
        return math.pi * R ** (2 * n) / n          # n >= 1
    if domain.kind == "exterior":
        return -math.pi * r ** (2 * n) / n         # n <= -1
    return math.pi * (R ** (2 * n) - r ** (2 * n)) / n


def dirichlet_inner(h1: HarmonicSeries, h2: HarmonicSeries) -> complex:
    """Dirichlet inner product (h1, h2), series convention.

    Closed form from the coefficients:
      sum_n n^2 M_n (a_n conj(a'_n) + b_n conj(b'_n)) + pi log(R/r) c conj(c')
    with M_n the radial moment of |z|^(2n-2) over the domain.  The
    holomorphic and antiholomorphic parts are orthogonal, and the log
    term couples to nothing else.
    """
    if h1.domain != h2.domain:
        raise SeriesError("dirichlet_inner requires a common domain")
    dom = h1.domain
    if dom.kind == "exterior" and (h1.c != 0 or h2.c != 0):
        raise SeriesError("log|z| has infinite energy on an exterior domain")
    total = 0.0 + 0.0j
    for part1, part2 in ((h1.a, h2.a), (h1.b, h2.b)):
        for n in set(part1) & set(part2):
            if n == 0:
                continue
            total += n * n * _radial_moment(dom, n) * part1[n] * np.conj(part2[n])
    if dom.kind == "annulus" and h1.c != 0 and h2.c != 0:
        total += math.pi * math.log(dom.r_outer / dom.r_inner) * h1.c * np.conj(h2.c)
    return complex(total)


def energy(h: HarmonicSeries) -> float:
    """(h, h), real and >= 0."""
    return dirichlet_inner(h, h).real


def annulus_decompose(h: HarmonicSeries, p1: complex = 0.0):
    """Split an annulus series into disk + exterior + log parts.

    Returns (h1, h2, c) with h1 on disk(R) collecting indices n >= 0,
    h2 on exterior(r) collecting n < 0 (so h2 -> 0 at infinity, which
    pins the free additive constant), and c the multiple of
    g_0(z) = -log|z| absorbing the log term:
    h = h1 + h2 + c * g_0 pointwise on the annulus.
    """
    if h.domain.kind != "annulus":
        raise SeriesError("annulus_decompose expects an annulus series")
    if p1 != 0:
        raise SeriesError("annulus_decompose supports the singularity at 0 "
                          "only; conjugate by a disk automorphism first")
    disk = Domain.disk(h.domain.r_outer)
    ext = Domain.exterior(h.domain.r_inner)
    h1 = HarmonicSeries(disk,
                        {n: v for n, v in h.a.items() if n >= 0},
                        {n: v for n, v in h.b.items() if n >= 0})
    h2 = HarmonicSeries(ext,
                        {n: v for n, v in h.a.items() if n < 0},
                        {n: v for n, v in h.b.items() if n < 0})
    return h1, h2, -h.c


def greens_disk(p: complex, z):
    """Green's function of the unit disk, g(z, p) = -log|(z-p)/(1-conj(p)z)|.

    Positive on the punctured disk, zero on the boundary, symmetric in
    (z, p).  Raises on z = p and outside the open disk.
    """
    p = complex(p)
    if abs(p) >= 1:
        raise SeriesError("Green's pole must lie in the open unit disk")
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise SeriesError("Green's argument must lie in the open unit disk")
    if np.any(np.abs(z - p) < 1e-15):
        raise SeriesError("Green's function is singular at z = p")
    vals = -np.log(np.abs((z - p) / (1.0 - np.conj(p) * z)))
    return vals if vals.ndim else float(vals)


def greens_coperiod(p: complex, radius: float = 0.9, n: int = 256) -> float:
    """Period of the conjugate differential of g_p around |z| = radius.

    Int *dg_p = Int_0^{2pi} r (d g_p/d r) dtheta, evaluated with the
    periodic trapezoid rule on the analytic closed-form integrand;
    equals -2*pi whenever |p| < radius < 1.
    """
    p = complex(p)
    if not abs(p) < radius < 1:
        raise SeriesError("need |p| < radius < 1")
    theta = TWO_PI * np.arange(n) / n
    z = radius * np.exp(1j * theta)
    gz = -0.5 / (z - p) - 0.5 * np.conj(p) / (1.0 - np.conj(p) * z)
    dgdr = 2.0 * np.real(gz * np.exp(1j * theta))
    return float(TWO_PI / n * np.sum(radius * dgdr))


@dataclass(frozen=True)
class CollarChart:
    """Canonical boundary chart of the disk side of the unit circle.

    The chart is the disk automorphism moving the Green's pole p to the
    origin (for p = 0 it is the identity, up to the usual rotation
    freedom).  It is valid on the annulus rho < |z| < 1, maps the unit
    circle homeomorphically onto itself, and the conjugate period of the
    generating Green's function is -2*pi.
    """

    p: complex
    rho: float
    coperiod: float = -TWO_PI

    def map(self, z):
        z = np.asarray(z, dtype=complex)
        return (z - self.p) / (1.0 - np.conj(self.p) * z)

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        return (w + self.p) / (1.0 + np.conj(self.p) * w)

    def boundary_angles(self, theta):
        """Image angles of boundary points e^{i theta}, continuous lift."""
        w = self.map(np.exp(1j * np.asarray(theta, dtype=float)))
        return np.unwrap(np.angle(w))


def canonical_collar_chart(p: complex, rho: float | None = None) -> CollarChart:
    p = complex(p)
    if abs(p) >= 1:
        raise SeriesError("collar chart needs |p| < 1")
    if rho is None:
        rho = (1.0 + abs(p)) / 2.0
    if not abs(p) < rho < 1:
        raise SeriesError("collar annulus must avoid the Green's pole")
    return CollarChart(p, float(rho))


def greens_series_on_annulus(p: complex, rho: float,
                             tol: float = 1e-18) -> HarmonicSeries:
    """Expansion of g_p on the collar annulus rho < |z| < 1 (|p| < rho).

    g_p(z) = -log|z| + Re sum_k (p/z)^k / k - Re sum_k (conj(p) z)^k / k.
    """
    p = complex(p)
    if not abs(p) < rho < 1:
        raise SeriesError("need |p| < rho < 1")
    a, b = {}, {}
    if p != 0:
        ratio = abs(p) / rho
        K = max(8, int(math.ceil(math.log(tol) / math.log(max(ratio, abs(p), 1e-300)))))
        K = min(K, 2000)
        for k in range(1, K + 1):
            a[-k] = p ** k / (2 * k)
            b[-k] = np.conj(p) ** k / (2 * k)
            a[k] = -np.conj(p) ** k / (2 * k)
            b[k] = -(p ** k) / (2 * k)
    return HarmonicSeries(Domain.annulus(rho, 1.0), a, b, c=-1.0)


def collar_energy_greens(p: complex, rho: float) -> float:
    """Classical Dirichlet integral of g_p over the collar rho < |z| < 1.

    Finite for every |p| < rho; equals 2*pi*(-log rho) at p = 0 (the
    level-set collar identity: co-period times the Green's level).
    """
    g = greens_series_on_annulus(p, rho)
    return 2.0 * energy(g)          # gradient convention


def trace_on_circle(h: HarmonicSeries) -> dict:
    """Fourier coefficients of the boundary values on |z| = 1.

    Mode k receives a_k + b_{-k}; the log term vanishes on the circle.
    Exact coefficient arithmetic.
    """
    if not (h.domain.kind == "annulus" and h.domain.r_outer == 1.0):
        raise SeriesError("trace_on_circle expects a series on annulus(r, 1)")
    out = {}
    for n, v in h.a.items():
        out[n] = out.get(n, 0.0) + v
    for n, v in h.b.items():
        out[-n] = out.get(-n, 0.0) + v
    return {k: v for k, v in out.items() if v != 0}


@dataclass(frozen=True)
class CollarExtension:
    extension: HarmonicSeries   # harmonic on the unit disk
    collar_energy: float        # (h, h) on the annulus
    disk_energy: float          # (Gh, Gh) on the disk
    energy_ratio: float         # disk_energy / collar_energy


def collar_extension(h: HarmonicSeries) -> CollarExtension:
    """Extend the circle trace of a collar series harmonically to the disk.

    The disk series with matching boundary trace puts mode k >= 0 into
    the analytic part and mode k < 0 into the antianalytic part (z^k and
    conj(z)^{-k} share the trace e^{ikt}).  Energies and their ratio are
    reported in the series convention.
    """
    tr = trace_on_circle(h)
    a = {k: v for k, v in tr.items() if k >= 0}
    b = {-k: v for k, v in tr.items() if k < 0}
    ext = HarmonicSeries(Domain.disk(1.0), a, b)
    e_collar = energy(h)
    e_disk = energy(ext)
    ratio = e_disk / e_collar if e_collar > 0 else 0.0
    return CollarExtension(ext, e_collar, e_disk, ratio)


def nontangential_limit(f, boundary_point: complex, alpha: float = math.pi / 4,
                        n_steps: int = 12, ray_tol: float = 1e-7,
                        inc_tol: float = 1e-8):
    """Probe the non-tangential limit of f at a point of the unit circle.

    Approaches along two rays at angles +-alpha/2 inside the Stolz angle,
    z_k = p (1 - 2^-k e^{i beta}) for k = 1..n_steps, extrapolates each
    ray to the boundary, and flags convergence when the two ray limits
    agree within ray_tol and the final extrapolation increment is below
    inc_tol.  Returns (limit_estimate, converged).
    """
    if not 0 < alpha < math.pi / 2:
        raise SeriesError("Stolz opening must lie in (0, pi/2)")
    if n_steps < 8:
        raise SeriesError("need n_steps >= 8")
    p = complex(boundary_point)
    p /= abs(p)
    ts = 2.0 ** -np.arange(1, n_steps + 1)
    limits, incs = [], []
    for beta in (-alpha / 2, alpha / 2):
        zs = p * (1.0 - ts * np.exp(1j * beta))
        vals = np.array([f(z) for z in zs])
        lim, inc = _extrapolate_to_zero(ts, vals)
        limits.append(lim)
        incs.append(inc)
    converged = (abs(limits[0] - limits[1]) < ray_tol
                 and max(incs) < inc_tol)
    limit = 0.5 * (limits[0] + limits[1])
    if abs(limit.imag) == 0.0:
        limit = limit.real
    return limit, bool(converged)


def _extrapolate_to_zero(steps, vals):
    """Neville polynomial extrapolation of vals(steps) to steps -> 0.

    Returns (limit, last_increment); the increment is the change in the
    diagonal entry over the final Neville stage, a Cauchy-type
    convergence indicator for the extrapolated sequence.
    """
    steps = np.asarray(steps, dtype=float)
    cur = np.array(vals, dtype=complex)
    m = len(cur)
    last = cur[-1]
    inc = math.inf
    for k in range(1, m):
        nxt = np.empty(m - k, dtype=complex)
        for i in range(m - k):
            nxt[i] = cur[i + 1] + (cur[i + 1] - cur[i]) * steps[i + k] / (
                steps[i] - steps[i + k])
        cur = nxt
        inc = abs(cur[-1] - last)
        last = cur[-1]
    return complex(last), inc
