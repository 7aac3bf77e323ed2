"""Density operators, spectra, pinching, isometries, and pure-state ensembles."""

import math

import numpy as np
import pytest

from entrokit.classical import ProbVector, entropy_finite, majorizes
from entrokit.functionals import functional_from_spec, make_renyi, make_shannon
from entrokit.quantum import (
    DensityOperator,
    Ensemble,
    conjugate_isometry,
    eigen_spectrum,
    inf_ensemble_entropy,
    pinch,
    pinching_inequality_audit,
    pure_state,
    quantum_entropy,
    random_ensemble,
    spectral_ensemble,
)
from entrokit.rand import as_rng, random_density, random_isometry, random_state_vector, random_unitary

LN2 = 0.6931471805599453
ALL_SPECS = ["shannon", "renyi:alpha=0.5", "renyi:alpha=2", "tsallis:q=2", "kaniadakis:kappa=0.5"]

RHO_2x2 = np.array([[0.5, 0.25], [0.25, 0.5]])  # eigenvalues 3/4 and 1/4
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


# ------------------------------------------------------------ DensityOperator

def test_density_accepts_and_freezes():
    rho = DensityOperator(RHO_2x2)
    assert rho.dim == 2
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 0.9


def test_density_symmetrizes_hermitian_noise():
    noisy = RHO_2x2 + np.array([[0.0, 1e-12], [-1e-12, 0.0]])
    rho = DensityOperator(noisy)
    assert np.allclose(rho.matrix, rho.matrix.conj().T, rtol=0, atol=0)


def test_density_rejections():
    with pytest.raises(ValueError):
        DensityOperator(np.array([[0.9, 0.0], [0.0, 0.0]]))  # trace
    with pytest.raises(ValueError):
        DensityOperator(np.array([[1.2, 0.0], [0.0, -0.2]]))  # negative eigenvalue
    with pytest.raises(ValueError):
        DensityOperator(np.array([[0.5, 0.5j], [0.5j, 0.5]]))  # not Hermitian
    with pytest.raises(ValueError):
        DensityOperator(np.ones((2, 3)))


def test_pure_state_has_zero_entropy():
    # top eigenvalue comes back as 1 +- 2e-16, so demand criterion-level zero
    rng = as_rng(2)
    for d in (2, 5):
        psi = random_state_vector(d, rng)
        rho = pure_state(psi)
        assert abs(quantum_entropy(rho, make_shannon()).value) <= 1e-12


# ----------------------------------------------------------------- spectrum

def test_eigen_spectrum_frozen_2x2():
    rho = DensityOperator(RHO_2x2)
    spectrum, basis = eigen_spectrum(rho)
    assert np.allclose(spectrum.values, [0.75, 0.25], rtol=0, atol=1e-15)
    recon = (basis * spectrum.values) @ basis.conj().T
    assert np.max(np.abs(recon - rho.matrix)) < 1e-12


def test_spectrum_is_sorted_and_unit_sum():
    rng = as_rng(7)
    for _ in range(20):
        rho = random_density(int(rng.integers(2, 9)), rng)
        spectrum, _ = eigen_spectrum(rho)
        assert np.all(np.diff(spectrum.values) <= 1e-12)
        assert abs(spectrum.values.sum() - 1.0) <= 1e-8


def test_structural_zeros_are_exact():
    # rank-deficient state: solver jitter on null eigenvalues must be cleared,
    # otherwise sub-linear phi turns it into ~1e-8 entropy noise
    rng = as_rng(12)
    rho = random_density(6, rng, rank=3)
    spectrum, _ = eigen_spectrum(rho)
    assert np.count_nonzero(spectrum.values) == 3
    assert spectrum.values[3:].tolist() == [0.0, 0.0, 0.0]


def test_quantum_entropy_frozen_values():
    rho = DensityOperator(RHO_2x2)
    # -(3/4 ln 3/4 + 1/4 ln 1/4)
    assert abs(quantum_entropy(rho, make_shannon()).value - 0.5623351446188083) < 1e-12
    # -ln(9/16 + 1/16)
    assert abs(quantum_entropy(rho, make_renyi(2)).value - 0.47000362924573563) < 1e-12
    mixed = DensityOperator(np.eye(4) / 4.0)
    assert abs(quantum_entropy(mixed, make_shannon()).value - 2 * LN2) < 1e-12


def test_quantum_equals_classical_on_spectrum():
    rng = as_rng(31)
    fs = [functional_from_spec(s) for s in ALL_SPECS]
    for _ in range(25):
        rho = random_density(int(rng.integers(2, 9)), rng)
        spectrum, _ = eigen_spectrum(rho)
        p = ProbVector(spectrum.values)
        for F in fs:
            assert quantum_entropy(rho, F).value == entropy_finite(p, F).value


# ----------------------------------------------------------- isometry moves

def test_unitary_conjugation_preserves_entropy():
    rng = as_rng(41)
    fs = [functional_from_spec(s) for s in ALL_SPECS]
    for _ in range(15):
        d = int(rng.integers(2, 8))
        rho = random_density(d, rng)
        U = random_unitary(d, rng)
        sigma = conjugate_isometry(rho, U)
        for F in fs:
            assert abs(quantum_entropy(sigma, F).value - quantum_entropy(rho, F).value) <= 1e-8


def test_embedding_isometry_preserves_entropy():
    rng = as_rng(43)
    fs = [functional_from_spec(s) for s in ALL_SPECS]
    for _ in range(10):
        d = int(rng.integers(2, 6))
        D = d + int(rng.integers(1, 4))
        rho = random_density(d, rng)
        V = random_isometry(D, d, rng)
        sigma = conjugate_isometry(rho, V)
        assert sigma.dim == D
        for F in fs:
            assert abs(quantum_entropy(sigma, F).value - quantum_entropy(rho, F).value) <= 1e-8


def test_conjugate_isometry_rejects_nonisometry():
    rho = DensityOperator(RHO_2x2)
    with pytest.raises(ValueError):
        conjugate_isometry(rho, np.array([[1.0, 0.1], [0.0, 1.0]]))


# ----------------------------------------------------------------- pinching

def test_pinch_in_hadamard_basis_frozen():
    rho = DensityOperator(np.diag([0.75, 0.25]))
    p = pinch(rho, HADAMARD)
    assert np.allclose(p.entries, [0.5, 0.5], rtol=0, atol=1e-15)


def test_pinch_rejects_nonorthonormal_basis():
    rho = DensityOperator(RHO_2x2)
    with pytest.raises(ValueError):
        pinch(rho, np.array([[1.0, 0.9], [0.0, 1.0]]))


def test_pinching_never_decreases_entropy():
    rng = as_rng(51)
    fs = [functional_from_spec(s) for s in ALL_SPECS]
    for _ in range(20):
        d = int(rng.integers(2, 8))
        rho = random_density(d, rng)
        U = random_unitary(d, rng)
        spectrum, _ = eigen_spectrum(rho)
        assert majorizes(spectrum.values, pinch(rho, U).entries)
        for F in fs:
            entry = pinching_inequality_audit(rho, U, F)
            assert entry.passed, entry


def test_pinch_in_eigenbasis_recovers_spectrum_entropy():
    rng = as_rng(53)
    fs = [functional_from_spec(s) for s in ALL_SPECS]
    for _ in range(15):
        rho = random_density(int(rng.integers(2, 8)), rng)
        _, basis = eigen_spectrum(rho)
        p = pinch(rho, basis)
        for F in fs:
            assert abs(entropy_finite(p, F).value - quantum_entropy(rho, F).value) <= 1e-9


# ---------------------------------------------------------------- ensembles

def test_spectral_ensemble_is_exact():
    rng = as_rng(61)
    rho = random_density(5, rng)
    spectrum, _ = eigen_spectrum(rho)
    ens = spectral_ensemble(rho)
    assert ens.check_reconstructs(rho) < 1e-10
    assert np.allclose(np.sort(ens.weights.entries)[::-1], spectrum.values, rtol=0, atol=1e-12)


def test_random_ensemble_reconstructs_and_is_majorized():
    rng = as_rng(67)
    for _ in range(15):
        d = int(rng.integers(2, 7))
        rho = random_density(d, rng, rank=int(rng.integers(1, d + 1)))
        spectrum, _ = eigen_spectrum(rho)
        r = int(np.count_nonzero(spectrum.values > 1e-12))
        m = r + int(rng.integers(0, 4))
        ens = random_ensemble(rho, m, rng)
        assert ens.size == m
        ens.check_reconstructs(rho)
        assert majorizes(spectrum.values, ens.weights.entries)


def test_random_ensemble_rejects_small_m():
    rng = as_rng(71)
    rho = random_density(4, rng)  # full rank
    with pytest.raises(ValueError):
        random_ensemble(rho, 3, rng)


def test_random_ensemble_rejects_bad_mixing():
    rng = as_rng(73)
    rho = random_density(3, rng)
    with pytest.raises(ValueError):
        random_ensemble(rho, 3, mixing=np.ones((3, 3)))
    with pytest.raises(ValueError):
        random_ensemble(rho, 4, mixing=np.eye(3))


def test_identity_mixing_reduces_to_spectral():
    rng = as_rng(79)
    rho = random_density(4, rng)
    ens = random_ensemble(rho, 4, mixing=np.eye(4))
    spectrum, _ = eigen_spectrum(rho)
    assert np.allclose(ens.weights.entries, spectrum.values, rtol=0, atol=1e-12)


def test_hadamard_mixing_of_maximally_mixed_qubit():
    rho = DensityOperator(np.eye(2) / 2.0)
    ens = random_ensemble(rho, 2, mixing=HADAMARD.astype(complex))
    assert np.allclose(ens.weights.entries, [0.5, 0.5], rtol=0, atol=1e-15)


def test_ensemble_entropy_dominates_spectrum_entropy():
    rng = as_rng(83)
    fs = [functional_from_spec(s) for s in ALL_SPECS]
    for _ in range(10):
        d = int(rng.integers(2, 6))
        rho = random_density(d, rng)
        base = {F.name: quantum_entropy(rho, F).value for F in fs}
        for _ in range(10):
            ens = random_ensemble(rho, d + 2, rng)
            for F in fs:
                assert entropy_finite(ens.weights, F).value >= base[F.name] - 1e-9


def test_inf_ensemble_entropy_attains_spectrum():
    rng = as_rng(89)
    for _ in range(5):
        d = int(rng.integers(2, 6))
        rho = random_density(d, rng)
        for spec in ("shannon", "renyi:alpha=2"):
            F = functional_from_spec(spec)
            value, best = inf_ensemble_entropy(rho, F, trials=30, rng_seed=5)
            assert abs(value - quantum_entropy(rho, F).value) <= 1e-9
            best.check_reconstructs(rho)


def test_ensemble_validation():
    with pytest.raises(ValueError):
        Ensemble(weights=ProbVector([0.5, 0.5]), states=np.array([[1.0, 0.0]]))
    with pytest.raises(ValueError):
        Ensemble(weights=ProbVector([1.0]), states=np.array([[0.7, 0.0]]))
