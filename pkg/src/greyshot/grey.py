"""GM(1,1) grey-model core: accumulation, least-squares fitting, forecasting.

The model treats a short positive series as the increments of an
exponential-looking cumulative process.  Fitting estimates the development
coefficient ``a`` and grey input ``b`` of the whitening equation
``dx1/dt + a*z = b`` over background values ``z`` built from consecutive
cumulative pairs; forecasting evaluates the closed-form solution
``x1(t) = (x0_first - b/a) * exp(-a*t) + b/a`` and differences it back to
the original scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MIN_FIT_LENGTH = 4
NEAR_SINGULAR_A = 1e-12


class GreyModelError(ValueError):
    """A series or parameter set violates GM(1,1) preconditions."""


def _as_series(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise GreyModelError(f"series must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise GreyModelError("series must be non-empty")
    return arr


@dataclass(frozen=True)
class GM11Model:
    """Fitted grey parameters plus the first observation anchoring the forecast.

    a: development coefficient (must stay away from zero; the forecast
       divides by it).
    b: grey input.
    x0_first: first raw observation.
    alpha: background-value weight used during fitting, in [0, 1].
    """

    a: float
    b: float
    x0_first: float
    alpha: float = 0.5

    def __post_init__(self):
        if abs(self.a) < NEAR_SINGULAR_A:
            raise GreyModelError(
                f"development coefficient too close to zero (|a|={abs(self.a):.3g})"
            )
        if not 0.0 <= self.alpha <= 1.0:
            raise GreyModelError(f"alpha must lie in [0, 1], got {self.alpha}")


def ago(series) -> np.ndarray:
    """Accumulated generating operation: running partial sums."""
    return np.cumsum(_as_series(series))


def inverse_ago(series) -> np.ndarray:
    """Restore a raw series from its partial sums (first value kept as-is)."""
    arr = _as_series(series)
    out = np.empty_like(arr)
    out[0] = arr[0]
    np.subtract(arr[1:], arr[:-1], out=out[1:])
    return out


def fit_gm11(series, alpha: float = 0.5) -> GM11Model:
    """Least-squares GM(1,1) fit of a short, strictly positive series.

    Background values z(k) = alpha*x1(k-1) + (1-alpha)*x1(k) are formed over
    consecutive cumulative pairs, and (a, b) solves
    x0(k) = -a*z(k) + b for k = 2..n by the 2x2 normal equations.
    """
    x0 = _as_series(series)
    if x0.size < MIN_FIT_LENGTH:
        raise GreyModelError(
            f"need at least {MIN_FIT_LENGTH} observations to fit, got {x0.size}"
        )
    if np.any(x0 <= 0):
        raise GreyModelError("GM(1,1) fitting requires strictly positive values")
    if not 0.0 <= alpha <= 1.0:
        raise GreyModelError(f"alpha must lie in [0, 1], got {alpha}")

    x1 = np.cumsum(x0)
    z = alpha * x1[:-1] + (1.0 - alpha) * x1[1:]
    y = x0[1:]

    # Normal equations for y = -a*z + b, solved in closed form.
    k = float(z.size)
    sz = float(np.sum(z))
    sy = float(np.sum(y))
    szz = float(np.sum(z * z))
    szy = float(np.sum(z * y))
    det = k * szz - sz * sz
    if det == 0.0:
        raise GreyModelError("degenerate background values; cannot fit")
    a = (sz * sy - k * szy) / det
    b = (sy + a * sz) / k

    if abs(a) < NEAR_SINGULAR_A:
        raise GreyModelError(
            "near-singular fit: series has no exponential trend (a ~ 0)"
        )
    return GM11Model(a=a, b=b, x0_first=float(x0[0]), alpha=alpha)


def forecast_cumulative(model: GM11Model, t: int) -> float:
    """Closed-form cumulative forecast at integer step t >= 0."""
    if t < 0:
        raise GreyModelError(f"forecast step must be nonnegative, got {t}")
    if t == 0:
        return model.x0_first
    ratio = model.b / model.a
    return (model.x0_first - ratio) * float(np.exp(-model.a * t)) + ratio


def forecast_restored(model: GM11Model, horizon: int) -> np.ndarray:
    """Difference the cumulative forecast back to the original scale.

    Returns the ``horizon`` forecast increments
    ``x1(k) - x1(k-1)`` for k = 1..horizon.
    """
    if horizon < 1:
        raise GreyModelError(f"horizon must be >= 1, got {horizon}")
    cumulative = np.array([forecast_cumulative(model, k) for k in range(horizon + 1)])
    return np.diff(cumulative)
