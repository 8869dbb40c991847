import math

import numpy as np
import pytest

from inertonsim import (
    SPIN_DOWN,
    SPIN_UP,
    SpinContext,
    anticommutation_deviations,
    chi_eigenfunction,
    classify_inerton_wave,
    dirac_hamiltonian,
    dirac_matrices,
    pauli_matrices,
    spin_eigenvalue,
    spin_projection,
    total_hamiltonian,
)
from inertonsim.constants import ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR


def test_eigenvalue_plug_in():
    ctx = SpinContext(channel=SPIN_UP, e=2.0, B_z=3.0, hbar=1.0, M=1.0)
    assert spin_eigenvalue(ctx) == pytest.approx(3.0, rel=1e-15)


def test_electron_bohr_magneton_energy():
    ctx = SpinContext(
        channel=SPIN_UP, e=ELEMENTARY_CHARGE, B_z=1.0, hbar=HBAR, M=ELECTRON_MASS
    )
    assert spin_eigenvalue(ctx) == pytest.approx(9.274e-24, rel=1e-4)


def test_channel_antisymmetry_exact():
    for e, B, M in ((1.0, 1.0, 1.0), (ELEMENTARY_CHARGE, 0.37, ELECTRON_MASS)):
        up = spin_eigenvalue(SpinContext(channel=SPIN_UP, e=e, B_z=B, hbar=HBAR, M=M))
        dn = spin_eigenvalue(SpinContext(channel=SPIN_DOWN, e=e, B_z=B, hbar=HBAR, M=M))
        assert up + dn == 0.0


def test_channel_validation():
    with pytest.raises(ValueError):
        SpinContext(channel=0, e=1.0, B_z=1.0)


def test_chi_literal_example():
    ctx = SpinContext(channel=SPIN_UP, e=1.0, B_z=1.0, hbar=1.0, M=1.0)
    val = chi_eigenfunction(ctx, 2.0, variant="literal")
    assert val == pytest.approx(math.pi ** -0.25 * math.exp(-1.0), rel=1e-12)


def test_chi_gaussian_example():
    ctx = SpinContext(channel=SPIN_UP, e=1.0, B_z=1.0, hbar=1.0, M=1.0)
    val = chi_eigenfunction(ctx, 2.0, variant="gaussian")
    assert val == pytest.approx(math.pi ** -0.25 * math.exp(-2.0), rel=1e-12)


def test_chi_vector_potential_offset():
    ctx = SpinContext(channel=SPIN_UP, e=1.0, B_z=1.0, A=(2.0, 0.0, 0.0), hbar=1.0, M=1.0)
    # pi_x - e A_x = 0 leaves only the normalization factor
    assert chi_eigenfunction(ctx, 2.0) == pytest.approx(math.pi ** -0.25, rel=1e-12)


def test_chi_unknown_variant():
    ctx = SpinContext(channel=SPIN_UP, e=1.0, B_z=1.0, hbar=1.0, M=1.0)
    with pytest.raises(ValueError):
        chi_eigenfunction(ctx, 1.0, variant="octopus")


def test_spin_projection_half_hbar():
    assert spin_projection(SPIN_UP) == (HBAR / 2.0, 0.0, 0.0)
    assert spin_projection(SPIN_DOWN) == (-HBAR / 2.0, 0.0, 0.0)


def test_total_hamiltonian_pythagorean():
    assert total_hamiltonian(3.0, 4.0, 0.0, 1.0) == pytest.approx(5.0, rel=1e-15)


def test_total_hamiltonian_with_mass():
    val = total_hamiltonian(0.0, 0.0, 2.0, 3.0)
    assert val == pytest.approx(2.0 * 9.0, rel=1e-15)


# ------------------------------------------------------------ matrix algebra

def test_pauli_algebra():
    sx, sy, sz = pauli_matrices()
    assert np.allclose(sx @ sy - sy @ sx, 2j * sz)
    assert np.allclose(sx @ sx, np.eye(2))


def test_anticommutation_identities():
    devs = anticommutation_deviations()
    assert len(devs) == 10
    assert max(devs.values()) <= 1e-12


def test_generators_traceless_hermitian():
    ax, ay, az, rho3 = dirac_matrices()
    for g in (ax, ay, az, rho3):
        assert abs(np.trace(g)) == 0.0
        assert np.array_equal(g, g.conj().T)


def test_unit_momentum_spectrum():
    op = dirac_hamiltonian(np.array([1.0, 0.0, 0.0]), 1.0, 1.0)
    eigs = np.sort(op.eigenvalues())
    root2 = math.sqrt(2.0)
    assert np.allclose(eigs, [-root2, -root2, root2, root2], atol=1e-12)


def test_square_identity_random_momenta():
    rng = np.random.default_rng(5)
    for _ in range(100):
        p = rng.normal(size=3) * 10.0 ** rng.uniform(-2.0, 2.0)
        op = dirac_hamiltonian(p, rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0))
        rel = op.square_deviation() / op.expected_branch_energy() ** 2
        assert rel <= 1e-12


def test_spectrum_double_degeneracy_random():
    rng = np.random.default_rng(6)
    for _ in range(100):
        p = rng.normal(size=3)
        op = dirac_hamiltonian(p, rng.uniform(0.1, 2.0), 1.0)
        eigs = np.sort(op.eigenvalues())
        E = op.expected_branch_energy()
        assert np.allclose(eigs, [-E, -E, E, E], rtol=1e-10, atol=1e-10 * E)


def test_massless_spectrum():
    op = dirac_hamiltonian(np.array([0.0, 0.0, 2.0]), 0.0, 1.0)
    eigs = np.sort(op.eigenvalues())
    assert np.allclose(eigs, [-2.0, -2.0, 2.0, 2.0], atol=1e-12)


def test_wave_classification():
    assert classify_inerton_wave(1.5) == "outgoing"
    assert classify_inerton_wave(-0.2) == "incoming"
    with pytest.raises(ValueError):
        classify_inerton_wave(0.0)
