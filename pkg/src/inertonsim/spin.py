"""Spin channels, the total Hamiltonian and its Dirac linearization.

The intrinsic pulsation of the particle comes in two antipodal modes,
labelled up/down with sign ``e_alpha``. In a magnetic field the channels
split by ``e_alpha * e * hbar * B_z / (2 M)`` and project spin ``+hbar/2``
or ``-hbar/2`` on the field axis.

The full energy function ``c * sqrt(p^2 + pi^2 + M0^2 c^2)`` (``pi`` the
intrinsic momentum) linearizes at ``pi = 0`` into the standard 4x4 matrix
operator ``c alpha.p + rho3 M0 c^2``. The matrix algebra is verified
numerically: ten independent anticommutation identities, the squared
operator being a multiple of the identity plus the doubly degenerate
``+/- sqrt(c^2 p^2 + M0^2 c^4)`` spectrum. The positive branch is read as
a cloud wave running away from the particle and the negative branch as
the returning one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR

__all__ = [
    "SPIN_UP",
    "SPIN_DOWN",
    "SpinContext",
    "DiracOperator",
    "spin_eigenvalue",
    "chi_eigenfunction",
    "spin_projection",
    "total_hamiltonian",
    "pauli_matrices",
    "dirac_matrices",
    "dirac_hamiltonian",
    "dirac_verification_report",
    "classify_inerton_wave",
]

SPIN_UP = +1
SPIN_DOWN = -1

ArrayC = np.ndarray


@dataclass(frozen=True)
class SpinContext:
    """Channel sign, charge, field projection and vector potential.

    ``channel`` is +1 (up) or -1 (down); ``A`` holds the vector-potential
    components, of which only the first enters the intrinsic eigenfunction.
    """

    channel: int
    e: float
    B_z: float
    A: tuple[float, float, float] = (0.0, 0.0, 0.0)
    hbar: float = HBAR
    M: float = 1.0

    def __post_init__(self):
        if self.channel not in (SPIN_UP, SPIN_DOWN):
            raise ValueError(f"channel must be +1 or -1, got {self.channel}")


def spin_eigenvalue(ctx: SpinContext) -> float:
    """Channel energy ``e_alpha * e * hbar * B_z / (2 M)``."""
    if not (ctx.M > 0.0):
        raise ValueError(f"mass must be positive, got {ctx.M}")
    return ctx.channel * ctx.e * ctx.hbar * ctx.B_z / (2.0 * ctx.M)


def chi_eigenfunction(ctx: SpinContext, pi_x: float, variant: str = "literal") -> float:
    """Intrinsic-momentum eigenfunction of the channel problem.

    Two variants are shipped on purpose. ``literal`` uses a linear exponent,

        pi**(-1/4) * exp(-(pi_x - e A_x) / (2 e hbar B_z)),

    which is not normalizable but is kept as the defining form. ``gaussian``
    squares the deviation,

        pi**(-1/4) * exp(-(pi_x - e A_x)**2 / (2 e hbar B_z)),

    the bound-state form. Callers pick; the default stays ``literal``.
    """
    if variant not in ("literal", "gaussian"):
        raise ValueError(f"variant must be 'literal' or 'gaussian', got {variant!r}")
    denom = 2.0 * ctx.e * ctx.hbar * ctx.B_z
    if denom == 0.0:
        raise ValueError("e * hbar * B_z must be nonzero for the eigenfunction")
    dev = pi_x - ctx.e * ctx.A[0]
    exponent = dev / denom if variant == "literal" else dev * dev / denom
    return math.pi ** (-0.25) * math.exp(-exponent)


def spin_projection(channel: int, hbar: float = HBAR) -> tuple[float, float, float]:
    """Spin components ``(S_z, S_x, S_y) = (channel * hbar/2, 0, 0)``."""
    if channel not in (SPIN_UP, SPIN_DOWN):
        raise ValueError(f"channel must be +1 or -1, got {channel}")
    return (channel * hbar / 2.0, 0.0, 0.0)


def _sumsq(v) -> float:
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    return float(np.dot(arr, arr))


def total_hamiltonian(p, pi, M0: float, c: float) -> float:
    """Full energy ``c sqrt(p^2 + pi^2 + M0^2 c^2)``.

    ``p`` and ``pi`` may be scalars (magnitudes) or component sequences.
    Monotone nondecreasing in both magnitudes.
    """
    return c * math.sqrt(_sumsq(p) + _sumsq(pi) + (M0 * c) ** 2)


# ---------------------------------------------------------------------------
# Dirac matrices (standard representation)
# ---------------------------------------------------------------------------

def pauli_matrices() -> tuple[ArrayC, ArrayC, ArrayC]:
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    return sx, sy, sz


def dirac_matrices() -> tuple[ArrayC, ArrayC, ArrayC, ArrayC]:
    """The three alpha matrices and rho3 in the standard representation,
    ``alpha_i = offdiag(sigma_i, sigma_i)`` and ``rho3 = diag(1, 1, -1, -1)``."""
    sx, sy, sz = pauli_matrices()
    zeros = np.zeros((2, 2), dtype=np.complex128)
    eye = np.eye(2, dtype=np.complex128)
    alpha_x = np.block([[zeros, sx], [sx, zeros]])
    alpha_y = np.block([[zeros, sy], [sy, zeros]])
    alpha_z = np.block([[zeros, sz], [sz, zeros]])
    rho3 = np.block([[eye, zeros], [zeros, -eye]])
    return alpha_x, alpha_y, alpha_z, rho3


@dataclass(frozen=True)
class DiracOperator:
    """Linearized energy operator with its construction metadata.

    The matrix is Hermitian and traceless (every generator is traceless).
    """

    matrix: ArrayC
    p: tuple[float, float, float]
    M0: float
    c: float
    representation: str = "standard"

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def expected_branch_energy(self) -> float:
        """The magnitude ``sqrt(c^2 p^2 + M0^2 c^4)`` both branches share."""
        return total_hamiltonian(self.p, 0.0, self.M0, self.c)

    def square_deviation(self) -> float:
        """Max elementwise deviation of H^2 from its identity multiple."""
        target = self.expected_branch_energy() ** 2 * np.eye(4)
        return float(np.max(np.abs(self.matrix @ self.matrix - target)))


def dirac_hamiltonian(p, M0: float, c: float) -> DiracOperator:
    """Build ``c alpha.p + rho3 M0 c^2`` for a 3-vector momentum."""
    px, py, pz = (float(v) for v in p)
    ax, ay, az, rho3 = dirac_matrices()
    matrix = c * (ax * px + ay * py + az * pz) + rho3 * (M0 * c * c)
    return DiracOperator(matrix=matrix, p=(px, py, pz), M0=M0, c=c)


def _anticommutator(a: ArrayC, b: ArrayC) -> ArrayC:
    return a @ b + b @ a


def anticommutation_deviations() -> dict[str, float]:
    """Max elementwise deviation of the ten independent algebra identities:
    six ``{alpha_i, alpha_j} = 2 delta_ij I``, three ``{alpha_i, rho3} = 0``
    and ``rho3^2 = I``."""
    ax, ay, az, rho3 = dirac_matrices()
    eye = np.eye(4)
    alphas = {"alpha_x": ax, "alpha_y": ay, "alpha_z": az}
    names = list(alphas)
    out: dict[str, float] = {}
    for i, ni in enumerate(names):
        for nj in names[i:]:
            target = 2.0 * eye if ni == nj else 0.0 * eye
            dev = np.max(np.abs(_anticommutator(alphas[ni], alphas[nj]) - target))
            out[f"{{{ni},{nj}}}"] = float(dev)
    for ni in names:
        dev = np.max(np.abs(_anticommutator(alphas[ni], rho3)))
        out[f"{{{ni},rho3}}"] = float(dev)
    out["rho3^2"] = float(np.max(np.abs(rho3 @ rho3 - eye)))
    return out


def dirac_verification_report(op: DiracOperator) -> dict:
    """JSON-ready summary: per-identity deviations, the squared-operator
    deviation and the spectrum next to its expected branch energies."""
    eigs = op.eigenvalues()
    e_branch = op.expected_branch_energy()
    return {
        "representation": op.representation,
        "p": list(op.p),
        "M0": op.M0,
        "c": op.c,
        "anticommutation_max_deviation": anticommutation_deviations(),
        "h_squared_max_deviation": op.square_deviation(),
        "eigenvalues": [float(v) for v in eigs],
        "expected_eigenvalues": [-e_branch, -e_branch, e_branch, e_branch],
    }


def classify_inerton_wave(E: float) -> str:
    """Positive branch energies are outgoing cloud waves, negative ones
    incoming; zero has no direction and is rejected."""
    if E == 0.0:
        raise ValueError("cannot classify a zero branch energy")
    return "outgoing" if E > 0.0 else "incoming"
