"""Reduced qubit state under pure dephasing, and its eigenstructure.

The probe starts in cos(alpha/2)|0> + sin(alpha/2)|1>. Dephasing leaves the
populations untouched and multiplies the off-diagonal element by
exp(-gamma), so the state is rho = (I + n . sigma) / 2 with Bloch vector
n = (exp(-gamma) sin(alpha), 0, cos(alpha)). The eigendecomposition used
here is written in that Bloch parametrization, which stays well conditioned
for every alpha, including the pointer states alpha = 0 and alpha = pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ProbeInit",
    "QubitDensityMatrix",
    "EigenSystem",
    "reduced_dm",
    "eigensystem",
    "optimal_alpha",
]

TRACE_TOL = 1e-12
HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-12
ORTHONORMALITY_TOL = 1e-10

# components below this magnitude are ignored when fixing eigenvector phases
_PHASE_FLOOR = 1e-12


@dataclass(frozen=True)
class ProbeInit:
    """Initial superposition angle alpha in [0, pi]."""

    alpha: float = 0.5 * math.pi

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= math.pi:
            raise ValueError(f"alpha must lie in [0, pi], got {self.alpha}")


def optimal_alpha() -> float:
    """Angle of the equatorial initial state (|0> + |1>) / sqrt(2).

    The extractable information scales with sin(alpha)**2 for every bath
    parameter, so alpha = pi/2 is optimal; it also makes the eigenvectors
    parameter-independent, turning the computational-basis projectors into
    an optimal measurement.
    """
    return 0.5 * math.pi


@dataclass(frozen=True)
class QubitDensityMatrix:
    """2x2 Hermitian, unit-trace, positive-semidefinite matrix in the {|0>, |1>} basis."""

    rho00: complex
    rho01: complex
    rho10: complex
    rho11: complex

    def __post_init__(self) -> None:
        for name in ("rho00", "rho01", "rho10", "rho11"):
            entry = complex(getattr(self, name))
            if not (math.isfinite(entry.real) and math.isfinite(entry.imag)):
                raise ValueError(f"{name} must be finite, got {entry!r}")
            object.__setattr__(self, name, entry)
        if abs(self.rho01 - self.rho10.conjugate()) > HERMITICITY_TOL:
            raise ValueError("matrix is not Hermitian")
        trace = self.rho00 + self.rho11
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must equal 1, got {trace}")
        if self.rho00.real < -PSD_TOL or self.rho11.real < -PSD_TOL:
            raise ValueError("populations must be non-negative")
        det = (self.rho00 * self.rho11 - self.rho01 * self.rho10).real
        if det < -PSD_TOL:
            raise ValueError(f"matrix is not positive semidefinite, det = {det}")

    def as_array(self) -> np.ndarray:
        return np.array([[self.rho00, self.rho01], [self.rho10, self.rho11]], dtype=complex)

    @property
    def purity(self) -> float:
        """tr(rho^2); 1 for a pure state, 1/2 when fully dephased at alpha = pi/2."""
        return float(
            (self.rho00 * self.rho00 + 2.0 * self.rho01 * self.rho10 + self.rho11 * self.rho11).real
        )


def reduced_dm(init: ProbeInit, gamma_value: float) -> QubitDensityMatrix:
    """Dephased probe state: populations cos^2, sin^2 of alpha/2, coherence damped by exp(-gamma)."""
    if not gamma_value >= 0.0:
        raise ValueError(f"decoherence exponent must be >= 0, got {gamma_value}")
    cos_half = math.cos(0.5 * init.alpha)
    sin_half = math.sin(0.5 * init.alpha)
    coherence = sin_half * cos_half * math.exp(-gamma_value)
    return QubitDensityMatrix(
        rho00=complex(cos_half * cos_half),
        rho01=complex(coherence),
        rho10=complex(coherence),
        rho11=complex(sin_half * sin_half),
    )


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues and orthonormal eigenvectors of the dephased probe state."""

    lambda_plus: float
    lambda_minus: float
    vec_plus: np.ndarray
    vec_minus: np.ndarray

    def __post_init__(self) -> None:
        for name in ("lambda_plus", "lambda_minus"):
            lam = getattr(self, name)
            if not -TRACE_TOL <= lam <= 1.0 + TRACE_TOL:
                raise ValueError(f"{name} must lie in [0, 1], got {lam}")
        if abs(self.lambda_plus + self.lambda_minus - 1.0) > TRACE_TOL:
            raise ValueError("eigenvalues must sum to 1")
        overlap = abs(np.vdot(self.vec_plus, self.vec_minus))
        norms = (np.linalg.norm(self.vec_plus), np.linalg.norm(self.vec_minus))
        if overlap > ORTHONORMALITY_TOL or any(abs(n - 1.0) > ORTHONORMALITY_TOL for n in norms):
            raise ValueError("eigenvectors must be orthonormal")


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate the first significant component onto the positive real axis."""
    for component in vec:
        if abs(component) > _PHASE_FLOOR:
            vec = vec * (abs(component) / component)
            break
    out = np.ascontiguousarray(vec)
    out.setflags(write=False)
    return out


def eigensystem(dm: QubitDensityMatrix, init: ProbeInit, gamma_value: float) -> EigenSystem:
    """Closed-form eigendecomposition of the dephased probe state.

    lambda_(+/-) = (1 +/- R) / 2 with R = |Bloch vector|
                 = sqrt(cos(alpha)^2 + exp(-2 gamma) sin(alpha)^2),
    and the eigenvectors are the spinors along +/- the Bloch direction. The
    phase convention makes the first significant component real positive.
    """
    if not gamma_value >= 0.0:
        raise ValueError(f"decoherence exponent must be >= 0, got {gamma_value}")
    cos_half = math.cos(0.5 * init.alpha)
    sin_half = math.sin(0.5 * init.alpha)
    expected_coherence = sin_half * cos_half * math.exp(-gamma_value)
    if (
        abs(dm.rho00.real - cos_half * cos_half) > 1e-9
        or abs(dm.rho01.real - expected_coherence) > 1e-9
    ):
        raise ValueError("density matrix was not built from the given (alpha, gamma)")

    damping = math.exp(-gamma_value)
    cos_a = math.cos(init.alpha)
    if abs(cos_a) < 1e-15:  # alpha indistinguishable from pi/2 in double precision
        cos_a = 0.0
    sin_a = math.sin(init.alpha)  # >= 0 on [0, pi]
    radius = math.hypot(cos_a, damping * sin_a)
    lambda_plus = min(1.0, 0.5 * (1.0 + radius))
    lambda_minus = max(0.0, 0.5 * (1.0 - radius))

    # polar angle of the Bloch vector in the x-z plane; alpha = pi/2 gives
    # beta = pi/2 independent of gamma, hence gamma-independent eigenvectors
    beta = math.atan2(damping * sin_a, cos_a)
    vec_plus = np.array([math.cos(0.5 * beta), math.sin(0.5 * beta)], dtype=complex)
    vec_minus = np.array([-math.sin(0.5 * beta), math.cos(0.5 * beta)], dtype=complex)
    return EigenSystem(
        lambda_plus=lambda_plus,
        lambda_minus=lambda_minus,
        vec_plus=_fix_phase(vec_plus),
        vec_minus=_fix_phase(vec_minus),
    )
