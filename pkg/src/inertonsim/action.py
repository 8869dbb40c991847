"""Effective-oscillator action: cyclic increments and the wave relations.

Seen from its centre of inertia, the particle of the pair is a harmonic
oscillator with angular frequency ``omega = pi/T``, amplitude
``A = v0/omega`` and energy ``E = M v0^2 / 2`` (``M`` relativistic). Its
abbreviated action obeys the usual Hamilton-Jacobi equation, and the
action picked up over one full cycle is

    S_cycle = loop integral of p dX = E * 2T = p0 * lam = M v0^2 T.

Setting that increment equal to an action quantum ``h`` yields the wave
relations ``lam = h/(M v0)`` and ``nu = E/h = 1/(2T)`` simultaneously;
`quantize` performs exactly that step.

A caution exposed as `lab_frame_action`: integrating ``p dX`` along the
lab-frame path instead of the oscillator orbit gives ``M v0^2 T (3 - 8/pi)``,
a different number. It is provided as a diagnostic so nobody mistakes one
integral for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .core import SystemParams

__all__ = [
    "OscillatorSpec",
    "QuantizedKinematics",
    "effective_hamiltonian",
    "shortened_action",
    "hj_residual",
    "cyclic_action",
    "lab_frame_action",
    "quantize",
]


@dataclass(frozen=True)
class OscillatorSpec:
    """Centre-of-inertia oscillator quantities.

    Satisfies ``M omega^2 A^2 / 2 = E`` by construction.
    """

    M: float          # relativistic particle mass
    omega: float      # angular frequency, pi / T
    E: float          # oscillator energy, M v0^2 / 2
    amplitude: float  # A = v0 / omega
    p_max: float      # M v0

    @classmethod
    def from_motion(cls, M: float, v0: float, T: float) -> "OscillatorSpec":
        if not (M > 0.0 and v0 > 0.0 and T > 0.0):
            raise ValueError(f"need M, v0, T > 0, got M={M}, v0={v0}, T={T}")
        omega = math.pi / T
        return cls(M=M, omega=omega, E=0.5 * M * v0 * v0,
                   amplitude=v0 / omega, p_max=M * v0)

    @classmethod
    def from_params(cls, params: SystemParams) -> "OscillatorSpec":
        return cls.from_motion(params.M, params.v0, params.T)


@dataclass(frozen=True)
class QuantizedKinematics:
    """Kinematic scales implied by a unit of cyclic action.

    ``nu`` equals ``1/(2 T)`` by construction, so both wave relations
    (energy-frequency and momentum-wavelength) hold at once.
    """

    h: float          # action quantum fed in
    lambda_dB: float  # h / (M v0)
    nu: float         # M v0^2 / (2 h)
    T: float          # h / (M v0^2)
    Lambda: float     # lambda_dB * c / v0

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "lambda_dB": self.lambda_dB,
            "nu": self.nu,
            "T": self.T,
            "Lambda": self.Lambda,
        }


def effective_hamiltonian(p: float, X: float, spec: OscillatorSpec) -> float:
    """Oscillator energy function ``p^2/(2M) + M omega^2 X^2 / 2``."""
    return p * p / (2.0 * spec.M) + 0.5 * spec.M * spec.omega ** 2 * X * X


def _momentum_of(spec: OscillatorSpec):
    two_me = 2.0 * spec.M * spec.E
    mw = spec.M * spec.omega

    def p_of(xi: float) -> float:
        # max() guards the last-ulp rounding right at the turning point
        return math.sqrt(max(two_me - (mw * xi) ** 2, 0.0))

    return p_of


def shortened_action(X: float, spec: OscillatorSpec) -> float:
    """Abbreviated action ``S1(X) = integral of p`` from 0 to X."""
    if abs(X) >= spec.amplitude:
        raise ValueError(
            f"|X|={abs(X)} is outside the classically allowed region "
            f"(amplitude {spec.amplitude})"
        )
    val, _ = quad(_momentum_of(spec), 0.0, X, epsabs=0.0, epsrel=1.0e-12, limit=200)
    return val


def hj_residual(X: float, spec: OscillatorSpec, fd_step: float = 1.0e-5) -> float:
    """Hamilton-Jacobi residual ``S1'(X)^2/(2M) + M omega^2 X^2/2 - E``.

    ``S1'`` is a central difference with step ``fd_step * amplitude``. The
    difference ``S1(X+d) - S1(X-d)`` is evaluated as one short integral over
    ``[X-d, X+d]`` rather than two long ones, which removes the cancellation
    that would otherwise dominate the error. Inside ``|X| <= 0.99 A`` the
    residual stays below ``1e-7 E``; approaching the turning point the
    integrand steepens and accuracy degrades gracefully (still below
    ``1e-4 E`` at ``0.999 A``).
    """
    A = spec.amplitude
    if abs(X) >= A:
        raise ValueError(f"|X|={abs(X)} is outside the classically allowed region (A={A})")
    d = fd_step * A
    if abs(X) + d >= A:
        raise ValueError(
            f"|X|+fd_step*A = {abs(X) + d} reaches the turning point; "
            "reduce fd_step or move X inward"
        )
    window, _ = quad(_momentum_of(spec), X - d, X + d, epsabs=0.0, epsrel=1.0e-12, limit=200)
    s1_prime = window / (2.0 * d)
    return s1_prime ** 2 / (2.0 * spec.M) + 0.5 * spec.M * spec.omega ** 2 * X * X - spec.E


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _composite_gauss(f, t_lo: float, t_hi: float, n_panels: int) -> float:
    """Composite 8-point Gauss-Legendre rule with n_panels equal panels."""
    edges = np.linspace(t_lo, t_hi, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])           # (n_panels,)
    mid = 0.5 * (edges[1:] + edges[:-1])
    # nodes: (n_panels, 8)
    ts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = f(ts)
    return float(np.sum(half[:, None] * _GL_WEIGHTS[None, :] * vals))


def cyclic_action(spec: OscillatorSpec, n_quadrature: int = 64) -> float:
    """Loop integral of ``p dX`` over one oscillator cycle.

    Parametrized as ``X = A sin(omega t)``, ``p = p_max cos(omega t)`` over
    ``t`` in ``[0, 2T]`` and evaluated by composite Gauss-Legendre
    quadrature. Equals ``E * 2T = p0 * lam = M v0^2 T`` to 1e-9 relative or
    better.
    """
    if n_quadrature < 64:
        raise ValueError(f"n_quadrature must be at least 64, got {n_quadrature}")
    period = 2.0 * math.pi / spec.omega  # = 2T

    def integrand(t):
        c = np.cos(spec.omega * t)
        return spec.p_max * c * spec.amplitude * spec.omega * c

    return _composite_gauss(integrand, 0.0, period, n_quadrature)


def lab_frame_action(params: SystemParams, n_quadrature: int = 64) -> float:
    """Diagnostic: ``integral of p dX`` along the lab-frame path over one
    cycle ``[0, 2T]``, i.e. ``M integral of (dX/dt)^2 dt``.

    Evaluates to ``M v0^2 T (3 - 8/pi)``, which is not the cyclic action;
    the loop integral lives on the oscillator orbit, not the lab path. The
    integrand has a kink at ``t = T``, so an even panel count is used to put
    a panel edge exactly on it.
    """
    if n_quadrature < 64:
        raise ValueError(f"n_quadrature must be at least 64, got {n_quadrature}")
    n_panels = n_quadrature + (n_quadrature % 2)

    def integrand(t):
        speed = params.v0 * (1.0 - np.abs(np.sin(np.pi * t / params.T)))
        return params.M * speed * speed

    return _composite_gauss(integrand, 0.0, 2.0 * params.T, n_panels)


def quantize(M: float, v0: float, c: float, h: float) -> QuantizedKinematics:
    """Impose a unit of cyclic action and read off the wave kinematics.

    From ``M v0^2 T = h``: wavelength ``h/(M v0)``, period ``h/(M v0^2)``,
    frequency ``M v0^2/(2h)`` and cloud amplitude ``lambda c / v0``.
    """
    if not (M > 0.0):
        raise ValueError(f"mass must be positive, got {M}")
    if not (h > 0.0):
        raise ValueError(f"action quantum must be positive, got {h}")
    if not (0.0 < v0 < c):
        raise ValueError(f"speeds must satisfy 0 < v0 < c, got v0={v0}, c={c}")
    lam = h / (M * v0)
    return QuantizedKinematics(
        h=h,
        lambda_dB=lam,
        nu=M * v0 * v0 / (2.0 * h),
        T=h / (M * v0 * v0),
        Lambda=lam * c / v0,
    )
