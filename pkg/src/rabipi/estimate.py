"""The nine-step pi-estimation pipeline on sampled Rabi data.

Given measured |1> fractions f(t) over roughly one oscillation period, the
pipeline estimates pi as (t2 - t1) / I where t1, t2 are the half-level
crossings of the normalized curve and I is the trapezoidal integral of
(f1 - 1/2) between them:

  1. rough amplitude/offset from min/max of f
  2. normalize f to [0, 1]
  3. linear interpolation between grid points
  4. bracket + bisection root search for both crossings
  5. refine amplitude/offset from plateau averages near the extrema
  6. re-normalize with the refined constants
  7. refine each crossing with a local least-squares line
  8. trapezoidal integral of the normalized curve minus 1/2
  9. pi_hat = (t2 - t1) / I

Also provides the full four-parameter curve fit used for plotting and a
screener that rejects datasets with calibration jumps.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .model import NoiseModel
from .simulate import Dataset

__all__ = [
    "EstimateConfig",
    "EstimateResult",
    "NormalizedCurve",
    "ScreenVerdict",
    "PipelineError",
    "rough_alpha_beta",
    "normalize",
    "interpolate",
    "find_crossing",
    "refine_alpha_beta",
    "refine_crossing_linear",
    "trapezoid_integral",
    "estimate_pi",
    "fit_model",
    "screen_dataset",
]


class PipelineError(ValueError):
    """Estimation failure, tagged with the pipeline step that raised it."""

    def __init__(self, step: str, message: str):
        super().__init__(f"{step}: {message}")
        self.step = step


@dataclass(frozen=True)
class EstimateConfig:
    """Tuning knobs of the pipeline; defaults follow the reference protocol."""

    delta: float = 0.1          # half-width of the extremum averaging window
    root_start_1: float = 1.5   # root search start for the first crossing
    root_start_2: float = 4.5   # root search start for the second crossing
    refine_window: float = 0.5  # half-width of the linear-fit window
    level: float = 0.5          # crossing level

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if self.refine_window <= 0:
            raise ValueError(f"refine_window must be > 0, got {self.refine_window}")
        if not 0 < self.level < 1:
            raise ValueError(f"level must be in (0, 1), got {self.level}")
        if self.root_start_1 >= self.root_start_2:
            raise ValueError("root_start_1 must be below root_start_2")


@dataclass(frozen=True)
class EstimateResult:
    """All pipeline outputs, including diagnostics."""

    alpha_hat: float
    beta_hat: float
    t1_hat: float
    t2_hat: float
    integral_I: float
    pi_hat: float
    c_hat: float
    t_minval: float
    t_maxval: float


@dataclass(frozen=True)
class NormalizedCurve:
    """Sampled normalized fractions f1(t) with strictly increasing times."""

    t: np.ndarray
    f1: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        f1 = np.asarray(self.f1, dtype=float)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "f1", f1)
        if t.shape != f1.shape or t.ndim != 1 or len(t) < 2:
            raise ValueError("curve needs matching 1-d arrays of length >= 2")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(f1))):
            raise ValueError("curve values must be finite")

    @property
    def grid_step(self) -> float:
        return float(np.min(np.diff(self.t)))


def rough_alpha_beta(ds: Dataset) -> tuple[float, float]:
    """Rough amplitude/offset: beta = min f, alpha = max f - min f."""
    f = ds.fractions()
    lo, hi = float(f.min()), float(f.max())
    if hi == lo:
        raise PipelineError("rough_alpha_beta",
                            "all fractions are equal; no oscillation signal")
    return hi - lo, lo


def normalize(ds: Dataset, alpha_hat: float, beta_hat: float) -> NormalizedCurve:
    """Affine rescale f1 = (f - beta)/alpha; values are not clamped."""
    if alpha_hat <= 0:
        raise PipelineError("normalize", f"alpha_hat must be > 0, got {alpha_hat}")
    return NormalizedCurve(ds.times(), (ds.fractions() - beta_hat) / alpha_hat)


def interpolate(curve: NormalizedCurve, t) -> float | np.ndarray:
    """Piecewise-linear interpolant of the curve; exact at grid points."""
    tq = np.asarray(t, dtype=float)
    if np.any(tq < curve.t[0]) or np.any(tq > curve.t[-1]):
        raise PipelineError(
            "interpolate",
            f"query outside data range [{curve.t[0]}, {curve.t[-1]}]")
    out = np.interp(tq, curve.t, curve.f1)
    return float(out) if np.isscalar(t) or tq.ndim == 0 else out


def find_crossing(curve: NormalizedCurve, start: float, level: float = 0.5,
                  time_tol: float = 1e-10) -> float:
    """Locate a crossing of the interpolated curve with ``level`` near ``start``.

    The bracket grows from ``start`` by one grid step alternately right and
    left until the sign of (f1 - level) changes over a newly covered segment;
    bisection then narrows the crossing to ``time_tol``.
    """
    tmin, tmax = float(curve.t[0]), float(curve.t[-1])
    start = min(max(start, tmin), tmax)
    step = curve.grid_step

    def g(x):
        return float(np.interp(x, curve.t, curve.f1)) - level

    if g(start) == 0.0:
        return start

    segments = []  # newly covered segments, in expansion order
    lo = hi = start
    right_done = left_done = False
    while not (right_done and left_done):
        if not right_done:
            new_hi = min(hi + step, tmax)
            if new_hi > hi:
                segments.append((hi, new_hi))
                hi = new_hi
            else:
                right_done = True
        if not left_done:
            new_lo = max(lo - step, tmin)
            if new_lo < lo:
                segments.append((new_lo, lo))
                lo = new_lo
            else:
                left_done = True
        while segments:
            a, b = segments.pop(0)
            ga, gb = g(a), g(b)
            if ga == 0.0:
                return a
            if gb == 0.0:
                return b
            if ga * gb < 0:
                while b - a > time_tol:
                    m = (a + b) / 2
                    gm = g(m)
                    if gm == 0.0:
                        return m
                    if ga * gm < 0:
                        b = m
                    else:
                        a, ga = m, gm
                return (a + b) / 2
    raise PipelineError(
        "find_crossing",
        f"no crossing of level {level} within [{tmin}, {tmax}] near t={start}")


def refine_alpha_beta(curve: NormalizedCurve, t1_hat: float, t2_hat: float,
                      delta: float = 0.1) -> tuple[float, float, float, float]:
    """Refine amplitude/offset from plateau averages near the extrema.

    The maximum of the curve sits midway between the crossings; the minimum
    a half-period below the first crossing or, when that falls outside the
    data range, a half-period above the second (clamping to the range edge
    would average over a window that misses the true minimum and bias the
    offset).  Returns (alpha, beta, t_minval, t_maxval) on the scale of the
    given curve.
    """
    t_lo, t_hi = float(curve.t[0]), float(curve.t[-1])
    t_maxval = (t1_hat + t2_hat) / 2
    below, above = (3 * t1_hat - t2_hat) / 2, (3 * t2_hat - t1_hat) / 2
    if below >= t_lo:
        t_minval = below
    elif above <= t_hi:
        t_minval = above
    else:
        t_minval = min(max(below, t_lo), t_hi)
    # strict window |t - t_hat| < delta; ties at exactly delta are excluded
    in_min = np.abs(curve.t - t_minval) < delta
    in_max = np.abs(curve.t - t_maxval) < delta
    if not in_min.any():
        raise PipelineError("refine_alpha_beta",
                            f"no grid points within {delta} of t_minval={t_minval}")
    if not in_max.any():
        raise PipelineError("refine_alpha_beta",
                            f"no grid points within {delta} of t_maxval={t_maxval}")
    beta_hat = float(curve.f1[in_min].mean())
    alpha_hat = float(curve.f1[in_max].mean()) - beta_hat
    return alpha_hat, beta_hat, t_minval, t_maxval


def refine_crossing_linear(curve: NormalizedCurve, t_i: float,
                           window: float = 0.5, level: float = 0.5) -> float:
    """Refine a crossing by fitting a line to the points with |t - t_i| <= window."""
    mask = np.abs(curve.t - t_i) <= window
    if mask.sum() < 2:
        raise PipelineError("refine_crossing_linear",
                            f"need >= 2 points within {window} of t={t_i}, "
                            f"got {int(mask.sum())}")
    slope, intercept = np.polyfit(curve.t[mask], curve.f1[mask], 1)
    if abs(slope) < 1e-12:
        raise PipelineError("refine_crossing_linear",
                            f"fitted slope {slope} too small; no crossing defined")
    return float((level - intercept) / slope)


def trapezoid_integral(curve: NormalizedCurve, t1: float, t2: float,
                       level: float = 0.5) -> float:
    """Integral of (f1~(t) - level) over [t1, t2], exact for the interpolant.

    Composite trapezoid over interior grid points plus partial panels at
    both ends using interpolated endpoint values.
    """
    tmin, tmax = float(curve.t[0]), float(curve.t[-1])
    if not (tmin <= t1 < t2 <= tmax):
        raise PipelineError("trapezoid_integral",
                            f"limits [{t1}, {t2}] invalid for range [{tmin}, {tmax}]")
    interior = curve.t[(curve.t > t1) & (curve.t < t2)]
    pts = np.concatenate(([t1], interior, [t2]))
    g = np.interp(pts, curve.t, curve.f1) - level
    return float(np.sum((g[:-1] + g[1:]) / 2 * np.diff(pts)))


def estimate_pi(ds: Dataset, cfg: EstimateConfig = EstimateConfig()) -> EstimateResult:
    """Run the full nine-step pipeline on one dataset."""
    alpha1, beta1 = rough_alpha_beta(ds)
    curve = normalize(ds, alpha1, beta1)
    t1_rough = find_crossing(curve, cfg.root_start_1, cfg.level)
    t2_rough = find_crossing(curve, cfg.root_start_2, cfg.level)
    alpha5, beta5, t_minval, t_maxval = refine_alpha_beta(
        curve, t1_rough, t2_rough, cfg.delta)
    if alpha5 <= 0:
        raise PipelineError("refine_alpha_beta",
                            f"refined amplitude {alpha5} is not positive")
    # compose the normalized-scale refinement with the rough estimates so the
    # second normalization acts on raw fractions
    alpha_hat = alpha1 * alpha5
    beta_hat = beta1 + alpha1 * beta5
    curve = normalize(ds, alpha_hat, beta_hat)
    t1_hat = refine_crossing_linear(curve, t1_rough, cfg.refine_window, cfg.level)
    t2_hat = refine_crossing_linear(curve, t2_rough, cfg.refine_window, cfg.level)
    if t1_hat >= t2_hat:
        raise PipelineError("refine_crossing_linear",
                            f"refined crossings out of order: {t1_hat} >= {t2_hat}")
    integral = trapezoid_integral(curve, t1_hat, t2_hat, cfg.level)
    if integral <= 0:
        raise PipelineError("trapezoid_integral",
                            f"integral {integral} is not positive")
    return EstimateResult(
        alpha_hat=alpha_hat,
        beta_hat=beta_hat,
        t1_hat=t1_hat,
        t2_hat=t2_hat,
        integral_I=integral,
        pi_hat=(t2_hat - t1_hat) / integral,
        c_hat=1.0 / integral,
        t_minval=t_minval,
        t_maxval=t_maxval,
    )


def fit_model(ds: Dataset, max_evals: int = 10_000) -> NoiseModel:
    """Least-squares fit of all four curve parameters to the fractions.

    Derivative-free (Nelder-Mead) minimization of the residual sum of
    squares, started from the rough amplitude/offset, a one-period rate
    guess and the phase implied by the first half-crossing.
    """
    t = ds.times()
    f = ds.fractions()
    alpha0, beta0 = rough_alpha_beta(ds)

    # initial rate from the assumed ~one-period span; phase from the first
    # crossing of the roughly normalized curve
    c0 = 2 * math.pi / 6.28
    try:
        curve = normalize(ds, alpha0, beta0)
        t1 = find_crossing(curve, float(t[0]) + (float(t[-1]) - float(t[0])) / 4)
        phi0_0 = math.pi / 2 - c0 * t1
    except PipelineError:
        phi0_0 = 0.0

    def residual(params):
        a, b, phi, c = params
        penalty = 0.0
        for excess in (-a, -b, a + b - 1.0, 1e-6 - c):
            if excess > 0:
                penalty += 1e3 * excess * excess
        pred = a * (1 - np.cos(c * t + phi)) / 2 + b
        return float(np.sum((f - pred) ** 2)) + penalty

    x0 = np.array([alpha0, beta0, phi0_0, c0])
    res = optimize.minimize(
        residual, x0, method="Nelder-Mead",
        options={"maxfev": max_evals, "xatol": 1e-10, "fatol": 1e-15})
    best = res.x if residual(res.x) <= residual(x0) else x0
    a, b, phi, c = best
    a = min(max(float(a), 0.0), 1.0)
    b = min(max(float(b), 0.0), 1.0 - a)
    return NoiseModel(alpha=a, beta=b, phi0=float(phi), c=max(float(c), 1e-6))


@dataclass(frozen=True)
class ScreenVerdict:
    """Outcome of dataset screening; ``reason``/``location`` set on rejection."""

    accepted: bool
    reason: str = ""
    location: float | None = None

    def __bool__(self) -> bool:
        return self.accepted


def screen_dataset(ds: Dataset) -> ScreenVerdict:
    """Reject datasets whose fractions jump more than the model plus noise allow.

    Between adjacent times the model probability can change by at most
    c*dt/2; on top of that we allow 5 binomial standard deviations at the
    worst case p = 1/2.  A larger jump indicates a calibration step.
    """
    try:
        c_hat = fit_model(ds).c
    except (PipelineError, ValueError):
        c_hat = 2 * math.pi / 6.28  # fall back to the one-period assumption
    t = ds.times()
    f = ds.fractions()
    for i in range(len(t) - 1):
        dt = t[i + 1] - t[i]
        shots = min(ds.records[i].shots, ds.records[i + 1].shots)
        threshold = c_hat * dt / 2 + 5 * math.sqrt(0.25 / shots)
        jump = abs(f[i + 1] - f[i])
        if jump > threshold:
            return ScreenVerdict(
                accepted=False,
                reason=(f"fraction jump {jump:.4f} between t={t[i]} and "
                        f"t={t[i + 1]} exceeds threshold {threshold:.4f}"),
                location=float(t[i + 1]),
            )
    return ScreenVerdict(accepted=True)
