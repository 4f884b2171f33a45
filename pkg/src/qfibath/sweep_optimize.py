"""Parameter sweeps, (t, T) density grids and optimal-time search.

Each sweep/grid point is an independent `qfi_point` evaluation; the
implementation runs them sequentially so identical specs always produce
bit-identical tables. The optimal-time search brackets the global maximum
with a coarse scan before golden-section refinement, because the squeezing
kernel can make the information oscillate in t and unimodal search alone
would lock onto the wrong peak.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from math import isfinite, sqrt

import numpy as np

from .decoherence import DEFAULT_QUADRATURE, ConvergenceError, QuadratureConfig
from .probe_state import ProbeInit
from .qfi_engine import Estimand, QfiSample, qfi_point
from .spectral_bath import BathPoint, SpectralParams, SqueezeParams

__all__ = [
    "SWEEP_AXES",
    "SweepSpec",
    "SweepTable",
    "GridSpec",
    "GridTable",
    "OptimalTimeResult",
    "sweep",
    "density_grid",
    "optimal_time",
]

SWEEP_AXES = ("T", "t", "r", "theta", "alpha")

_INV_PHI = 0.5 * (sqrt(5.0) - 1.0)


def _axis_domain_check(axis: str, lo: float, hi: float) -> None:
    if axis in ("T", "t", "r") and lo < 0.0:
        raise ValueError(f"axis {axis} starts below its domain: {lo} < 0")
    if axis == "alpha" and not (0.0 <= lo and hi <= np.pi):
        raise ValueError(f"alpha range must lie inside [0, pi], got [{lo}, {hi}]")


@dataclass(frozen=True)
class SweepSpec:
    """One-axis sweep: which estimand, which axis, its range, and the fixed rest."""

    estimand: Estimand
    axis: str
    lo: float
    hi: float
    points: int
    point: BathPoint
    sq: SqueezeParams
    sp: SpectralParams
    init: ProbeInit = ProbeInit()

    def __post_init__(self) -> None:
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        if not (isfinite(self.lo) and isfinite(self.hi) and self.lo < self.hi):
            raise ValueError(f"range must satisfy lo < hi, got [{self.lo}, {self.hi}]")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        _axis_domain_check(self.axis, self.lo, self.hi)
        if self.estimand is Estimand.TEMPERATURE and self.axis == "T" and self.lo <= 0.0:
            raise ValueError("temperature-estimand sweeps over T must start above 0")


@dataclass(frozen=True)
class SweepTable:
    """Sweep result: (axis value, gamma, dgamma, qfi) rows in ascending axis order."""

    spec: SweepSpec
    rows: tuple[tuple[float, float, float, float], ...]
    metadata: dict = field(compare=False)


@dataclass(frozen=True)
class GridSpec:
    """Two-axis (t, T) grid with everything else fixed."""

    estimand: Estimand
    t_lo: float
    t_hi: float
    T_lo: float
    T_hi: float
    t_points: int
    T_points: int
    sq: SqueezeParams
    sp: SpectralParams
    init: ProbeInit = ProbeInit()

    def __post_init__(self) -> None:
        for name, lo, hi in (("t", self.t_lo, self.t_hi), ("T", self.T_lo, self.T_hi)):
            if not (isfinite(lo) and isfinite(hi) and lo < hi):
                raise ValueError(f"{name} range must satisfy lo < hi, got [{lo}, {hi}]")
            if lo < 0.0:
                raise ValueError(f"{name} range starts below its domain: {lo} < 0")
        if self.t_points < 2 or self.T_points < 2:
            raise ValueError("grid needs at least 2 points per axis")
        if self.estimand is Estimand.TEMPERATURE and self.T_lo <= 0.0:
            raise ValueError("temperature-estimand grids must start above T = 0")


@dataclass(frozen=True)
class GridTable:
    """Row-major grid of samples, temperature outer, time inner."""

    spec: GridSpec
    samples: tuple[QfiSample, ...]
    metadata: dict = field(compare=False)


@dataclass(frozen=True)
class OptimalTimeResult:
    """Interaction time maximizing the information at one temperature."""

    temperature: float
    t_star: float
    qfi_star: float
    bracket: float


def _metadata(qc: QuadratureConfig) -> dict:
    from . import __version__

    return {
        "tool": "qfibath",
        "version": __version__,
        "quadrature": {
            "rel_tol": qc.rel_tol,
            "abs_tol": qc.abs_tol,
            "max_subdivisions": qc.max_subdivisions,
            "omega_max_factor": qc.omega_max_factor,
        },
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _with_axis_value(
    axis: str, value: float, point: BathPoint, sq: SqueezeParams, init: ProbeInit
) -> tuple[BathPoint, SqueezeParams, ProbeInit]:
    if axis == "T":
        return replace(point, temperature=value), sq, init
    if axis == "t":
        return replace(point, time=value), sq, init
    if axis == "r":
        return point, replace(sq, r=value), init
    if axis == "theta":
        return point, replace(sq, theta=value), init
    return point, sq, replace(init, alpha=value)


def sweep(spec: SweepSpec, qc: QuadratureConfig = DEFAULT_QUADRATURE) -> SweepTable:
    """Evaluate qfi_point at `points` equally spaced axis values.

    A failure at any point aborts the whole sweep with the axis value
    attached; tables never contain silent gaps.
    """
    rows = []
    for value in np.linspace(spec.lo, spec.hi, spec.points):
        value = float(value)
        point, sq, init = _with_axis_value(spec.axis, value, spec.point, spec.sq, spec.init)
        try:
            sample = qfi_point(spec.estimand, point, sq, spec.sp, init, qc)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"sweep aborted at {spec.axis} = {value!r}: {exc}",
                value=exc.value,
                est_error=exc.est_error,
                evaluations=exc.evaluations,
            ) from exc
        except ValueError as exc:
            raise ValueError(f"sweep aborted at {spec.axis} = {value!r}: {exc}") from exc
        if not all(map(isfinite, (sample.gamma, sample.dgamma, sample.qfi))):
            raise ConvergenceError(
                f"sweep produced a non-finite row at {spec.axis} = {value!r}",
                value=sample.gamma,
                est_error=float("nan"),
                evaluations=0,
            )
        rows.append((value, sample.gamma, sample.dgamma, sample.qfi))
    return SweepTable(spec=spec, rows=tuple(rows), metadata=_metadata(qc))


def density_grid(spec: GridSpec, qc: QuadratureConfig = DEFAULT_QUADRATURE) -> GridTable:
    """Full t x T grid of qfi_point evaluations, temperature outer, time inner."""
    samples = []
    for temperature in np.linspace(spec.T_lo, spec.T_hi, spec.T_points):
        for time in np.linspace(spec.t_lo, spec.t_hi, spec.t_points):
            point = BathPoint(temperature=float(temperature), time=float(time))
            try:
                samples.append(qfi_point(spec.estimand, point, spec.sq, spec.sp, spec.init, qc))
            except ConvergenceError as exc:
                raise ConvergenceError(
                    f"grid aborted at (T, t) = ({float(temperature)!r}, {float(time)!r}): {exc}",
                    value=exc.value,
                    est_error=exc.est_error,
                    evaluations=exc.evaluations,
                ) from exc
            except ValueError as exc:
                raise ValueError(
                    f"grid aborted at (T, t) = ({float(temperature)!r}, {float(time)!r}): {exc}"
                ) from exc
    return GridTable(spec=spec, samples=tuple(samples), metadata=_metadata(qc))


def optimal_time(
    temperature: float,
    estimand: Estimand,
    sq: SqueezeParams,
    sp: SpectralParams,
    init: ProbeInit = ProbeInit(),
    t_max: float = 10.0,
    qc: QuadratureConfig = DEFAULT_QUADRATURE,
    coarse_points: int = 64,
) -> OptimalTimeResult:
    """Interaction time maximizing qfi at fixed temperature.

    A coarse scan over [0, t_max] brackets the global maximum, then
    golden-section refinement shrinks the bracket to 1e-4 * t_max. Ties break
    toward the smallest t. A coarse scan flatter than 1e-14 is degenerate and
    returns t_star = 0 with qfi_star = 0.
    """
    if not t_max > 0.0:
        raise ValueError(f"t_max must be > 0, got {t_max}")
    if coarse_points < 3:
        raise ValueError(f"coarse_points must be >= 3, got {coarse_points}")

    def evaluate(time: float) -> float:
        point = BathPoint(temperature=temperature, time=time)
        return qfi_point(estimand, point, sq, sp, init, qc).qfi

    times = np.linspace(0.0, t_max, coarse_points)
    values = [evaluate(float(time)) for time in times]
    if max(values) - min(values) < 1e-14:
        return OptimalTimeResult(
            temperature=temperature, t_star=0.0, qfi_star=0.0, bracket=float(t_max)
        )

    peak = int(np.argmax(values))  # first occurrence, i.e. the smallest t
    best_t, best_q = float(times[peak]), values[peak]

    def consider(time: float, value: float) -> None:
        nonlocal best_t, best_q
        if value > best_q or (value == best_q and time < best_t):
            best_t, best_q = time, value

    lo = float(times[peak - 1]) if peak > 0 else float(times[0])
    hi = float(times[peak + 1]) if peak < coarse_points - 1 else float(times[-1])
    tolerance = 1e-4 * t_max

    left = hi - _INV_PHI * (hi - lo)
    right = lo + _INV_PHI * (hi - lo)
    f_left, f_right = evaluate(left), evaluate(right)
    consider(left, f_left)
    consider(right, f_right)
    while hi - lo > tolerance:
        if f_left >= f_right:  # keep the left interval on ties
            hi, right, f_right = right, left, f_left
            left = hi - _INV_PHI * (hi - lo)
            f_left = evaluate(left)
            consider(left, f_left)
        else:
            lo, left, f_left = left, right, f_right
            right = lo + _INV_PHI * (hi - lo)
            f_right = evaluate(right)
            consider(right, f_right)

    return OptimalTimeResult(
        temperature=temperature, t_star=best_t, qfi_star=best_q, bracket=float(hi - lo)
    )
