import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfibath.probe_state import (
    EigenSystem,
    ProbeInit,
    QubitDensityMatrix,
    eigensystem,
    optimal_alpha,
    reduced_dm,
)

alphas = st.floats(0.0, math.pi)
exponents = st.floats(0.0, 100.0)


def test_optimal_alpha_is_the_equator():
    assert optimal_alpha() == 0.5 * math.pi


def test_probe_init_domain():
    ProbeInit(alpha=0.0)
    ProbeInit(alpha=math.pi)
    with pytest.raises(ValueError):
        ProbeInit(alpha=-0.1)
    with pytest.raises(ValueError):
        ProbeInit(alpha=math.pi + 0.1)


def test_plus_state_is_uniform():
    dm = reduced_dm(ProbeInit(), 0.0)
    for entry in (dm.rho00, dm.rho01, dm.rho10, dm.rho11):
        assert entry == pytest.approx(0.5, abs=1e-12)


def test_full_dephasing_kills_the_coherence():
    dm = reduced_dm(ProbeInit(), 800.0)
    assert dm.rho01 == 0.0
    assert dm.rho00 == pytest.approx(0.5, abs=1e-12)


def test_pointer_state_is_decoherence_free():
    for g in (0.0, 2.0, 50.0):
        dm = reduced_dm(ProbeInit(alpha=0.0), g)
        assert dm.rho00 == 1.0
        assert dm.rho11 == 0.0
        assert dm.rho01 == 0.0


def test_reduced_dm_rejects_negative_exponent():
    with pytest.raises(ValueError):
        reduced_dm(ProbeInit(), -1e-6)


@given(alpha=alphas, g=exponents)
def test_reduced_dm_invariants(alpha, g):
    # __post_init__ enforces Hermiticity, unit trace and positivity
    dm = reduced_dm(ProbeInit(alpha=alpha), g)
    assert dm.rho00.real + dm.rho11.real == pytest.approx(1.0, abs=1e-12)
    assert dm.rho01 == dm.rho10.conjugate()
    det = (dm.rho00 * dm.rho11 - dm.rho01 * dm.rho10).real
    assert det >= -1e-12


def test_density_matrix_validation_rejects_bad_matrices():
    with pytest.raises(ValueError):
        QubitDensityMatrix(0.6, 0.1, 0.2, 0.4)  # not Hermitian
    with pytest.raises(ValueError):
        QubitDensityMatrix(0.8, 0.0, 0.0, 0.4)  # trace 1.2
    with pytest.raises(ValueError):
        QubitDensityMatrix(0.5, 0.6, 0.6, 0.5)  # negative determinant


def test_equatorial_eigenvalues():
    init = ProbeInit()
    for g in (0.0, 0.2, 1.0, 4.0):
        dm = reduced_dm(init, g)
        es = eigensystem(dm, init, g)
        assert es.lambda_plus == pytest.approx(0.5 * (1.0 + math.exp(-g)), abs=1e-14)
        assert es.lambda_minus == pytest.approx(0.5 * (1.0 - math.exp(-g)), abs=1e-14)


def test_pure_state_eigenvalues_are_zero_and_one():
    for alpha in (0.0, 0.3, 0.5 * math.pi, 2.5, math.pi):
        init = ProbeInit(alpha=alpha)
        es = eigensystem(reduced_dm(init, 0.0), init, 0.0)
        assert es.lambda_plus == pytest.approx(1.0, abs=1e-12)
        assert es.lambda_minus == pytest.approx(0.0, abs=1e-12)


def test_equatorial_eigenvectors_are_decay_invariant():
    expected_plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
    expected_minus = np.array([1.0, -1.0]) / math.sqrt(2.0)
    init = ProbeInit()
    for g in (0.0, 0.3, 1.0, 5.0, 40.0):
        es = eigensystem(reduced_dm(init, g), init, g)
        assert np.max(np.abs(es.vec_plus - expected_plus)) <= 1e-12
        assert np.max(np.abs(es.vec_minus - expected_minus)) <= 1e-12


def test_eigensystem_matches_numeric_diagonalization():
    # 10x10 grid; numpy's eigh is the independent solver
    for alpha in np.linspace(0.0, math.pi, 10):
        for g in np.linspace(0.0, 3.0, 10):
            init = ProbeInit(alpha=float(alpha))
            dm = reduced_dm(init, float(g))
            es = eigensystem(dm, init, float(g))
            evals, evecs = np.linalg.eigh(dm.as_array())
            assert es.lambda_minus == pytest.approx(float(evals[0]), abs=1e-10)
            assert es.lambda_plus == pytest.approx(float(evals[1]), abs=1e-10)
            assert abs(np.vdot(es.vec_minus, evecs[:, 0])) == pytest.approx(1.0, abs=1e-10)
            assert abs(np.vdot(es.vec_plus, evecs[:, 1])) == pytest.approx(1.0, abs=1e-10)


def test_eigensystem_example_alpha_quarter_pi():
    init = ProbeInit(alpha=0.25 * math.pi)
    dm = reduced_dm(init, 0.5)
    es = eigensystem(dm, init, 0.5)
    evals, evecs = np.linalg.eigh(dm.as_array())
    assert es.lambda_minus == pytest.approx(float(evals[0]), abs=1e-10)
    assert es.lambda_plus == pytest.approx(float(evals[1]), abs=1e-10)
    assert abs(np.vdot(es.vec_plus, evecs[:, 1])) == pytest.approx(1.0, abs=1e-10)


@given(alpha=st.floats(0.0, math.pi), first=st.floats(0.0, 20.0), second=st.floats(0.0, 20.0))
def test_purity_non_increasing_in_decay(alpha, first, second):
    low, high = sorted((first, second))
    init = ProbeInit(alpha=alpha)
    assert reduced_dm(init, high).purity <= reduced_dm(init, low).purity + 1e-12


def test_eigenvector_phase_convention():
    # first significant component is real positive for every alpha
    for alpha in np.linspace(0.0, math.pi, 17):
        init = ProbeInit(alpha=float(alpha))
        es = eigensystem(reduced_dm(init, 0.7), init, 0.7)
        for vec in (es.vec_plus, es.vec_minus):
            leading = next(c for c in vec if abs(c) > 1e-12)
            assert leading.real > 0.0
            assert abs(leading.imag) <= 1e-15


def test_eigensystem_rejects_mismatched_matrix():
    init = ProbeInit(alpha=1.0)
    dm = reduced_dm(init, 0.5)
    with pytest.raises(ValueError):
        eigensystem(dm, init, 1.5)  # gamma does not match the matrix
    with pytest.raises(ValueError):
        eigensystem(dm, ProbeInit(alpha=2.0), 0.5)  # alpha does not match


def test_eigen_system_validation():
    good = np.array([1.0, 0.0], dtype=complex)
    other = np.array([0.0, 1.0], dtype=complex)
    with pytest.raises(ValueError):
        EigenSystem(0.7, 0.2, good, other)  # sum != 1
    with pytest.raises(ValueError):
        EigenSystem(0.6, 0.4, good, good)  # not orthogonal
