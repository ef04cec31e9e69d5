"""Spectrally accurate boundary-integral Dirichlet solver on smooth
Jordan curves.

Second-kind double-layer formulation with the smooth-curve limiting
diagonal; single layer with the periodic log-splitting quadrature
(singular part applied as a Fourier multiplier, smooth remainder by the
trapezoid rule); Neumann data through the tangential-derivative
factorization of the hypersingular operator.  All sign conventions are
fixed in :mod:`harmtrans.conventions`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import CurveSpec

TWO_PI = 2.0 * math.pi

INTERIOR = "interior"
EXTERIOR = "exterior"
SIDES = (INTERIOR, EXTERIOR)

# refuse direct node evaluation closer than this many maximal node spacings
NEAR_BOUNDARY_SPACINGS = 5.0
# oversampling headroom used by the refining evaluator
REFINE_SPACINGS = 7.0
MAX_REFINE_NODES = 1 << 17


class SolverError(RuntimeError):
    """Linear-system failure, with a condition estimate when available."""


class NearBoundaryError(ValueError):
    """Evaluation point too close to the curve for the plain rule."""


def _check_side(side: str):
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")


@dataclass(eq=False)
class NystromSystem:
    """Discretized boundary operators of one curve at n equispaced nodes.

    K is the double-layer boundary matrix (K 1 = -1/2), S the single
    layer with log-accurate quadrature, Dt the spectral differentiation
    matrix in the parameter.  Arrays are never mutated after assembly;
    solves for distinct right-hand sides are safe concurrently.
    """

    curve: CurveSpec
    n: int
    t: np.ndarray
    nodes: np.ndarray
    dnodes: np.ndarray
    speed: np.ndarray
    weights: np.ndarray          # arclength quadrature weights
    normals: np.ndarray          # outward unit normals (complex)
    K: np.ndarray
    S: np.ndarray
    Dt: np.ndarray
    _flux: np.ndarray | None = field(default=None, repr=False)
    _lu: dict = field(default_factory=dict, repr=False)

    @property
    def max_spacing(self) -> float:
        return float(self.weights.max())

    def flux_operator(self) -> np.ndarray:
        """Matrix taking a double-layer density to d/dn of its potential.

        d/dn D[mu] = d/ds S[d mu/ds]; the same value on both sides.
        """
        if self._flux is None:
            invsp = 1.0 / self.speed
            D_s = invsp[:, None] * self.Dt
            self._flux = D_s @ (self.S @ D_s)
        return self._flux

    def system_matrix(self, side: str) -> np.ndarray:
        _check_side(side)
        if side == INTERIOR:
            return -0.5 * np.eye(self.n) + self.K
        R = np.tile(self.weights / self.weights.sum(), (self.n, 1))
        return 0.5 * np.eye(self.n) + self.K + R

    def completion_constant(self, mu: np.ndarray):
        """Arclength mean of the density: the exterior additive constant."""
        return (self.weights * mu).sum() / self.weights.sum()


def build_system(curve: CurveSpec, n: int) -> NystromSystem:
    """Assemble the Nystrom matrices for a trig-polynomial curve.

    Requires n even, n >= 32 and n >= 4 * curve degree so the geometry
    itself is fully resolved by the node set.
    """
    if n % 2 or n < 32:
        raise ValueError("node count must be even and >= 32")
    if n < 4 * curve.degree:
        raise ValueError(f"n={n} too small for curve degree {curve.degree} "
                         "(need n >= 4*degree)")
    t = TWO_PI * np.arange(n) / n
    gam = curve.eval(t)
    dgam = curve.derivative(t)
    d2gam = curve.second_derivative(t)
    speed = np.abs(dgam)
    weights = TWO_PI / n * speed
    normals = -1j * dgam / speed

    diff = gam[None, :] - gam[:, None]            # [target, source]
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = np.imag(dgam[None, :] / diff)
    np.fill_diagonal(kernel, np.imag(d2gam / (2.0 * dgam)))
    K = -(1.0 / n) * kernel

    # single layer: -(1/2pi) log|x-y| = periodic-log part + smooth part
    dt_ij = t[:, None] - t[None, :]
    sin_fac = 2.0 * np.abs(np.sin(dt_ij / 2.0))
    np.fill_diagonal(sin_fac, 1.0)
    absdiff = np.abs(diff)
    np.fill_diagonal(absdiff, 1.0)
    smooth = absdiff / sin_fac
    np.fill_diagonal(smooth, speed)               # limiting value |gamma'|
    S = -(1.0 / n) * np.log(smooth) * speed[None, :]
    k = np.fft.fftfreq(n, 1.0 / n)
    symbol = np.zeros(n)
    symbol[1:] = 1.0 / (2.0 * np.abs(k[1:]))
    col = np.fft.ifft(symbol).real
    circulant = col[(np.arange(n)[:, None] - np.arange(n)[None, :]) % n]
    S = S + circulant * speed[None, :]

    sgn = np.where((np.arange(n)[:, None] - np.arange(n)[None, :]) % 2 == 0,
                   1.0, -1.0)
    with np.errstate(divide="ignore"):
        cot = 1.0 / np.tan(dt_ij / 2.0)
    Dt = 0.5 * sgn * cot
    np.fill_diagonal(Dt, 0.0)

    return NystromSystem(curve, n, t, gam, dgam, speed, weights, normals,
                         K, S, Dt)


def solve_dirichlet(sys: NystromSystem, h, side: str,
                    residual_tol: float = 1e-10) -> np.ndarray:
    """Solve the boundary equation for the double-layer density.

    interior: (-1/2 I + K) mu = h
    exterior: (+1/2 I + K + R) mu = h, R mu = arclength mean of mu

    The exterior potential is D[mu] + R mu (bounded at infinity, with
    the decaying double-layer part carrying all of the energy).
    Raises SolverError with a condition estimate if the residual
    exceeds residual_tol.
    """
    _check_side(side)
    h = np.asarray(h)
    if h.shape[0] != sys.n:
        raise ValueError("boundary data must be sampled at the system nodes")
    A = sys.system_matrix(side)
    try:
        mu = np.linalg.solve(A, h)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"singular {side} system "
                          f"(cond ~ {np.linalg.cond(A):.3e})") from exc
    scale = float(np.abs(h).max()) or 1.0
    resid = float(np.abs(A @ mu - h).max()) / scale
    if not resid < residual_tol:
        raise SolverError(f"{side} solve residual {resid:.3e} exceeds "
                          f"{residual_tol:.1e} (cond ~ {np.linalg.cond(A):.3e})")
    return mu


def _double_layer_at(nodes, dnodes, n, mu, z):
    kernel = np.imag(dnodes[None, :] / (nodes[None, :] - z[:, None]))
    return -(1.0 / n) * kernel @ mu


def winding_number(sys: NystromSystem, z) -> np.ndarray:
    """1 for points enclosed by the curve, 0 outside (trapezoid rule)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    vals = (TWO_PI / sys.n) * np.sum(
        sys.dnodes[None, :] / (sys.nodes[None, :] - z[:, None]), axis=1)
    return np.rint(np.real(vals / (2j * math.pi))).astype(int)


def evaluate_potential(sys: NystromSystem, mu, z, side: str):
    """Plain double-layer value at points a safe distance from the curve.

    Refuses points closer than NEAR_BOUNDARY_SPACINGS node spacings
    (raise NearBoundaryError) and points on the wrong side.  Use
    :func:`extension_evaluator` for the full solution near the boundary.
    """
    _check_side(side)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    dist = np.abs(sys.nodes[None, :] - z[:, None]).min(axis=1)
    if np.any(dist < NEAR_BOUNDARY_SPACINGS * sys.max_spacing):
        raise NearBoundaryError(
            "evaluation point within 5 node spacings of the curve; "
            "accuracy not guaranteed")
    wind = winding_number(sys, z)
    want = 1 if side == INTERIOR else 0
    if np.any(wind != want):
        raise ValueError(f"evaluation point not on the {side} side")
    vals = _double_layer_at(sys.nodes, sys.dnodes, sys.n, np.asarray(mu), z)
    return vals if vals.shape != (1,) else vals[0]


def _resample_periodic(values: np.ndarray, n_up: int) -> np.ndarray:
    """Trigonometric interpolation of node samples onto a finer grid."""
    n = len(values)
    if n_up == n:
        return values
    spec = np.fft.fft(values)
    out = np.zeros(n_up, dtype=complex)
    half = n // 2
    out[:half] = spec[:half]
    out[-half + 1:] = spec[-half + 1:]
    out[half] = 0.5 * spec[half]
    out[n_up - half] += 0.5 * spec[half]
    out *= n_up / n
    res = np.fft.ifft(out)
    if not np.iscomplexobj(values):
        res = res.real
    return res


def refined_potential(sys: NystromSystem, mu, z, side: str,
                      include_constant: bool = True):
    """Double-layer value with automatic quadrature refinement near the
    curve: the density is trigonometrically interpolated onto a grid
    fine enough that every target keeps REFINE_SPACINGS spacings of
    clearance, and the curve data are re-evaluated exactly from its
    coefficients.  For the exterior side the completion constant is
    added when include_constant is set.
    """
    _check_side(side)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    mu = np.asarray(mu)
    const = sys.completion_constant(mu) if (side == EXTERIOR and
                                            include_constant) else 0.0
    dist = np.abs(sys.nodes[None, :] - z[:, None]).min(axis=1)
    out = np.empty(len(z), dtype=mu.dtype if np.iscomplexobj(mu) else float)
    max_speed = sys.speed.max()
    # group targets by the grid size they need
    need = np.maximum(sys.n, REFINE_SPACINGS * TWO_PI * max_speed /
                      np.maximum(dist, 1e-14))
    levels = np.ceil(np.log2(need)).astype(int)
    for lev in np.unique(levels):
        n_up = min(1 << int(lev), MAX_REFINE_NODES)
        sel = levels == lev
        t_up = TWO_PI * np.arange(n_up) / n_up
        gam = sys.curve.eval(t_up) if n_up != sys.n else sys.nodes
        dgam = sys.curve.derivative(t_up) if n_up != sys.n else sys.dnodes
        mu_up = _resample_periodic(mu, n_up)
        out[sel] = _double_layer_at(gam, dgam, n_up, mu_up, z[sel])
    return out + const


@dataclass(frozen=True, eq=False)
class HarmonicField:
    """One-sided harmonic extension of boundary data: density plus an
    evaluator (with near-boundary refinement) and its Dirichlet energy
    in the gradient convention."""

    system: NystromSystem
    side: str
    boundary_data: np.ndarray
    density: np.ndarray
    constant: float
    energy: float

    def __call__(self, z):
        return refined_potential(self.system, self.density, z, self.side)


def solve_extension(sys: NystromSystem, h, side: str) -> HarmonicField:
    mu = solve_dirichlet(sys, h, side)
    const = sys.completion_constant(mu) if side == EXTERIOR else 0.0
    e = energy_from_density(sys, h, mu, side)
    return HarmonicField(sys, side, np.asarray(h), mu, float(np.real(const)), e)


def energy_from_density(sys: NystromSystem, h, mu, side: str) -> float:
    """Int h d u/dn ds with the normal outward for the chosen side."""
    dn = sys.flux_operator() @ np.asarray(mu)
    e = np.sum(np.conj(np.asarray(h)) * dn * sys.weights)
    return float(np.real(e if side == INTERIOR else -e))


def dirichlet_energy(sys: NystromSystem, h, side: str) -> float:
    """Dirichlet energy (gradient convention) of the one-sided harmonic
    extension of boundary samples h.

    The density solve is followed by the Neumann map
    d u/dn = d/ds S[d mu/ds] and the boundary pairing Int h du/dn ds;
    E(Re z^k; disk) = k*pi and E(Re z; Omega) = area(Omega).
    """
    mu = solve_dirichlet(sys, h, side)
    return energy_from_density(sys, h, mu, side)


@dataclass(frozen=True, eq=False)
class EnergyGram:
    """Dirichlet inner products of harmonically extended Fourier modes.

    A[j, k] = (extension of e^{i m_j t}, extension of e^{i m_k t}) in
    the series convention, so the unit circle gives diag(|m| pi).
    Hermitian positive semidefinite with the constant mode as kernel.
    """

    side: str
    curve: CurveSpec
    modes: np.ndarray
    n: int
    A: np.ndarray

    def deflated(self) -> np.ndarray:
        """Hermitized Gram with the constant mode removed."""
        keep = self.modes != 0
        Ah = 0.5 * (self.A + self.A.conj().T)
        return Ah[np.ix_(keep, keep)]


def energy_gram(curve: CurveSpec, N: int, n: int, side: str) -> EnergyGram:
    """Assemble the (2N+1) x (2N+1) mode-energy Gram matrix.

    Requires n >= 8N.  One Nystrom system solve with 2N+1 right-hand
    sides; the polarized energies are halved into the series convention
    so the circle oracle is diag(|k| pi).
    """
    _check_side(side)
    if n < 8 * N:
        raise ValueError("energy_gram requires n >= 8*N")
    sys = build_system(curve, n)
    modes = np.arange(-N, N + 1)
    B = np.exp(1j * np.outer(sys.t, modes))
    A_sys = sys.system_matrix(side)
    Mu = np.linalg.solve(A_sys, B)
    F = sys.flux_operator() @ Mu
    G = (B.conj().T * sys.weights[None, :]) @ F        # G[k, j] pairs (j, k)
    G = 0.5 * G.T
    if side == EXTERIOR:
        G = -G
    return EnergyGram(side, curve, modes, n, G)
