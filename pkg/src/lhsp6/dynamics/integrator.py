"""Dormand-Prince 5(4) integrator with PI step control and dense output.

Written out instead of calling ``scipy.integrate.solve_ivp`` because the
tests need a non-adaptive fixed-step mode (order check), PI control (scipy
uses plain I control), and a step-size underflow error that reports the
failing time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["IntegrationError", "SolverStats", "dopri5", "ORDER"]

#: Order of the propagated (higher-order) solution.
ORDER = 5

C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# difference between the 5th and the embedded 4th order weights
E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])
# dense output: y(t + s h) = y + h * sum_j (K^T P)[:, j] s^(j+1)  (Shampine's 4th-order interpolant)
P = np.array([
    [1, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0, 0, 0, 0],
    [0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

SAFETY = 0.9
FAC_MIN = 0.2
FAC_MAX = 10.0
BETA = 0.04
ALPHA = 1 / ORDER - 0.75 * BETA


class IntegrationError(RuntimeError):
    """The step size underflowed or the solution became non-finite."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} at t = {t!r}")
        self.t = t


@dataclass
class SolverStats:
    accepted: int = 0
    rejected: int = 0
    evaluations: int = 0
    rtol: float = 0.0
    atol: float = 0.0
    fixed_step: float | None = None
    min_step: float = field(default=float("inf"))
    max_step: float = 0.0

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def _step(f, t, y, h, k0):
    k = [k0]
    for i in range(1, 7):
        dy = sum(a * kj for a, kj in zip(A[i], k))
        k.append(f(t + C[i] * h, y + h * dy))
    y_new = y + h * sum(b * kj for b, kj in zip(B, k) if b)
    err = h * sum(e * kj for e, kj in zip(E, k) if e)
    return y_new, err, k


def _dense(y, h, k, theta):
    q = np.tensordot(P.T, np.stack(k), axes=(1, 0))  # shape (4, *y.shape)
    powers = np.array([theta ** (j + 1) for j in range(4)])
    return y + h * np.tensordot(powers, q, axes=(0, 0))


def _initial_step(f, t0, y0, f0, direction, rtol, atol):
    scale = atol + np.abs(y0) * rtol
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y0 + direction * h0 * f0
    f1 = f(t0 + direction * h0, y1)
    d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / ORDER)
    return min(100 * h0, h1)


def dopri5(
    f: Callable[[float, np.ndarray], np.ndarray],
    t0: float,
    y0,
    t1: float,
    t_eval=None,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    fixed_step: float | None = None,
    max_steps: int = 1_000_000,
    h0: float | None = None,
):
    """Integrate ``y' = f(t, y)`` from ``t0`` to ``t1``.

    Parameters
    ----------
    f : callable
        Right-hand side; receives and returns arrays of the shape of ``y0``.
    t_eval : array_like, optional
        Output times within ``[t0, t1]``, increasing. Defaults to ``[t0, t1]``.
    rtol, atol : float
        Local error tolerances for the embedded estimate.
    fixed_step : float, optional
        Take steps of this size without error control (the last step is
        shortened to land on ``t1``).

    Returns
    -------
    times : ndarray
    states : ndarray of shape ``(len(times), *y0.shape)``
    stats : SolverStats
    """
    y = np.array(y0, dtype=float)
    stats = SolverStats(rtol=rtol, atol=atol, fixed_step=fixed_step)
    t_eval = np.array([t0, t1] if t_eval is None else t_eval, dtype=float)
    if t1 == t0:
        return np.array([t0]), y[None].copy(), stats
    if t1 < t0:
        raise ValueError("integration window must satisfy t1 > t0")
    if np.any(np.diff(t_eval) <= 0) or t_eval[0] < t0 or t_eval[-1] > t1:
        raise ValueError("output grid must be increasing and inside the window")
    if fixed_step is not None and fixed_step <= 0:
        raise ValueError("fixed step must be positive")

    out = np.empty((len(t_eval),) + y.shape)
    nxt = 0
    while nxt < len(t_eval) and t_eval[nxt] == t0:
        out[nxt] = y
        nxt += 1

    t = float(t0)
    k0 = f(t, y)
    stats.evaluations += 1
    if fixed_step is not None:
        h = fixed_step
    else:
        h = h0 if h0 is not None else _initial_step(f, t, y, k0, 1.0, rtol, atol)
        stats.evaluations += 1
    err_prev = 1e-4
    steps = 0
    while t < t1:
        if steps >= max_steps:
            raise IntegrationError("maximum number of steps exceeded", t)
        steps += 1
        h = min(h, t1 - t)
        if t1 - (t + h) < 1e-8 * h:
            # absorb a rounding sliver instead of taking a vanishing last step
            h = t1 - t
        if h <= 16 * np.finfo(float).eps * max(1.0, abs(t)):
            raise IntegrationError("step size underflow", t)
        y_new, err, k = _step(f, t, y, h, k0)
        stats.evaluations += 6
        if fixed_step is None:
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
            en = float(np.sqrt(np.mean((err / scale) ** 2)))
            if not np.isfinite(en):
                stats.rejected += 1
                h *= FAC_MIN
                continue
            if en > 1.0:
                stats.rejected += 1
                h *= max(FAC_MIN, SAFETY * en ** (-ALPHA))
                continue
        elif not np.all(np.isfinite(y_new)):
            raise IntegrationError("non-finite solution", t)
        t_new = t + h if t1 - (t + h) > 4 * np.finfo(float).eps * max(1.0, abs(t1)) else t1
        while nxt < len(t_eval) and t_eval[nxt] <= t_new:
            te = t_eval[nxt]
            out[nxt] = y_new if te == t_new else _dense(y, h, k, (te - t) / h)
            nxt += 1
        stats.accepted += 1
        stats.min_step = min(stats.min_step, h)
        stats.max_step = max(stats.max_step, h)
        t, y = t_new, y_new
        k0 = k[6]  # first-same-as-last
        if fixed_step is None:
            en = max(en, 1e-10)
            fac = SAFETY * en ** (-ALPHA) * err_prev ** BETA
            h *= min(FAC_MAX, max(FAC_MIN, fac))
            err_prev = en
    return t_eval, out, stats
