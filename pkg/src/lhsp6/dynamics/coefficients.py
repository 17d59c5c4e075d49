"""Time-dependent coefficient functions ``b(t)``.

Every function is an immutable dataclass that evaluates on floats or numpy
arrays, knows its derivative, and round-trips through a JSON dictionary
with a ``"type"`` tag (see :func:`from_json`). Plain numbers are accepted
wherever a coefficient function is expected and become :class:`Constant`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline, CubicSpline

__all__ = [
    "CoefficientFunction",
    "Constant",
    "PolynomialInT",
    "Harmonic",
    "Exponential",
    "Sum",
    "Product",
    "Quotient",
    "Sampled",
    "ExpIntegral",
    "as_coefficient",
    "from_json",
    "random_coefficient",
    "simplify",
]


class CoefficientFunction:
    """Base class; subclasses implement ``__call__``, ``derivative`` and ``to_json``."""

    def __call__(self, t):  # pragma: no cover - abstract
        raise NotImplementedError

    def derivative(self) -> "CoefficientFunction":  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError

    def is_zero(self) -> bool:
        return False

    def __add__(self, other):
        return Sum((self, as_coefficient(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return Product((self, as_coefficient(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Product((Constant(-1.0), self))

    def __sub__(self, other):
        return Sum((self, -as_coefficient(other)))

    def __truediv__(self, other):
        return Quotient(self, as_coefficient(other))


def _shape_like(t, value):
    if np.ndim(t) == 0:
        return float(value)
    return np.full(np.shape(t), float(value))


@dataclass(frozen=True)
class Constant(CoefficientFunction):
    value: float

    def __call__(self, t):
        return _shape_like(t, self.value)

    def derivative(self):
        return Constant(0.0)

    def is_zero(self) -> bool:
        return self.value == 0

    def to_json(self) -> dict:
        return {"type": "constant", "value": self.value}


@dataclass(frozen=True)
class PolynomialInT(CoefficientFunction):
    """``sum_k coeffs[k] t^k`` (ascending powers)."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for c in reversed(self.coeffs):
            out = out * t + c
        return float(out) if out.ndim == 0 else out

    def derivative(self):
        if len(self.coeffs) <= 1:
            return Constant(0.0)
        return PolynomialInT(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def antiderivative(self) -> "PolynomialInT":
        """Antiderivative vanishing at ``t = 0``."""
        return PolynomialInT((0.0,) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_json(self) -> dict:
        return {"type": "polynomial", "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Harmonic(CoefficientFunction):
    """``amplitude * cos(omega t + phase) + offset``."""

    amplitude: float
    omega: float
    phase: float = 0.0
    offset: float = 0.0

    def __call__(self, t):
        val = self.amplitude * np.cos(self.omega * np.asarray(t, dtype=float) + self.phase) + self.offset
        return float(val) if np.ndim(val) == 0 else val

    def derivative(self):
        return Harmonic(self.amplitude * self.omega, self.omega, self.phase + math.pi / 2, 0.0)

    def is_zero(self) -> bool:
        return self.amplitude == 0 and self.offset == 0

    def to_json(self) -> dict:
        return {"type": "harmonic", "amplitude": self.amplitude, "omega": self.omega,
                "phase": self.phase, "offset": self.offset}


@dataclass(frozen=True)
class Exponential(CoefficientFunction):
    """``scale * exp(rate t)``."""

    scale: float
    rate: float

    def __call__(self, t):
        val = self.scale * np.exp(self.rate * np.asarray(t, dtype=float))
        return float(val) if np.ndim(val) == 0 else val

    def derivative(self):
        return Exponential(self.scale * self.rate, self.rate)

    def is_zero(self) -> bool:
        return self.scale == 0

    def to_json(self) -> dict:
        return {"type": "exponential", "scale": self.scale, "rate": self.rate}


@dataclass(frozen=True)
class Sum(CoefficientFunction):
    terms: tuple[CoefficientFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(as_coefficient(x) for x in self.terms))

    def __call__(self, t):
        out = _shape_like(t, 0.0)
        for f in self.terms:
            out = out + f(t)
        return out

    def derivative(self):
        return Sum(tuple(f.derivative() for f in self.terms))

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.terms)

    def to_json(self) -> dict:
        return {"type": "sum", "terms": [f.to_json() for f in self.terms]}


@dataclass(frozen=True)
class Product(CoefficientFunction):
    factors: tuple[CoefficientFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(as_coefficient(x) for x in self.factors))

    def __call__(self, t):
        out = _shape_like(t, 1.0)
        for f in self.factors:
            out = out * f(t)
        return out

    def derivative(self):
        terms = []
        for i, f in enumerate(self.factors):
            rest = self.factors[:i] + (f.derivative(),) + self.factors[i + 1:]
            terms.append(Product(rest))
        return Sum(tuple(terms))

    def is_zero(self) -> bool:
        return any(f.is_zero() for f in self.factors)

    def to_json(self) -> dict:
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class Quotient(CoefficientFunction):
    """``numerator / denominator``; the denominator must not vanish on the window."""

    numerator: CoefficientFunction
    denominator: CoefficientFunction

    def __post_init__(self):
        object.__setattr__(self, "numerator", as_coefficient(self.numerator))
        object.__setattr__(self, "denominator", as_coefficient(self.denominator))

    def __call__(self, t):
        return self.numerator(t) / self.denominator(t)

    def derivative(self):
        n, d = self.numerator, self.denominator
        return Quotient(Sum((Product((n.derivative(), d)), -Product((n, d.derivative())))), Product((d, d)))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def to_json(self) -> dict:
        return {"type": "quotient", "numerator": self.numerator.to_json(),
                "denominator": self.denominator.to_json()}


@dataclass(frozen=True)
class Sampled(CoefficientFunction):
    """Interpolated table of ``(t, value)`` samples.

    ``kind`` is ``"linear"`` or ``"cubic"`` (a not-a-knot cubic spline). Knots must be strictly increasing; evaluation
    outside the knot range raises ``ValueError``.
    """

    knots: tuple[float, ...]
    values: tuple[float, ...]
    kind: str = "cubic"
    _spline: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        k = np.asarray(self.knots, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if k.ndim != 1 or k.shape != v.shape or k.size < 2:
            raise ValueError("need matching 1-D knot and value arrays with at least 2 entries")
        if np.any(np.diff(k) <= 0):
            raise ValueError("knots must be strictly increasing")
        if self.kind not in ("linear", "cubic"):
            raise ValueError(f"unknown interpolation kind {self.kind!r}")
        object.__setattr__(self, "knots", tuple(k.tolist()))
        object.__setattr__(self, "values", tuple(v.tolist()))
        if self.kind == "cubic":
            object.__setattr__(self, "_spline", CubicSpline(k, v))

    def covers(self, t0: float, t1: float) -> bool:
        return self.knots[0] <= t0 and t1 <= self.knots[-1]

    def _check(self, t):
        t = np.asarray(t, dtype=float)
        lo, hi = self.knots[0], self.knots[-1]
        if np.any(t < lo - 1e-12 * max(1, abs(lo))) or np.any(t > hi + 1e-12 * max(1, abs(hi))):
            raise ValueError(f"t outside sampled range [{lo}, {hi}]")
        return np.clip(t, lo, hi)

    def __call__(self, t):
        tt = self._check(t)
        if self.kind == "cubic":
            val = self._spline(tt)
        else:
            val = np.interp(tt, self.knots, self.values)
        return float(val) if np.ndim(val) == 0 else val

    def derivative(self):
        return _SampledDerivative(self, 1)

    def to_json(self) -> dict:
        return {"type": "sampled", "knots": list(self.knots), "values": list(self.values), "kind": self.kind}


@dataclass(frozen=True)
class _SampledDerivative(CoefficientFunction):
    base: Sampled
    order: int

    def __call__(self, t):
        tt = self.base._check(t)
        if self.base.kind == "cubic":
            val = self.base._spline(tt, self.order)
        elif self.order == 1:
            k = np.asarray(self.base.knots)
            slopes = np.diff(self.base.values) / np.diff(k)
            idx = np.clip(np.searchsorted(k, tt, side="right") - 1, 0, len(slopes) - 1)
            val = slopes[idx]
        else:
            val = np.zeros_like(tt)
        return float(val) if np.ndim(val) == 0 else val

    def derivative(self):
        return _SampledDerivative(self.base, self.order + 1)

    def to_json(self) -> dict:
        raise TypeError("derivatives of sampled data are not serialized; serialize the base table")


@dataclass(frozen=True)
class ExpIntegral(CoefficientFunction):
    """``exp(factor * int_0^t integrand(s) ds)``.

    Constant and polynomial integrands are integrated in closed form. Other
    integrands are integrated once by cumulative adaptive quadrature
    (absolute/relative tolerance 1e-12) on ``knots`` points spanning
    ``window`` and interpolated with a cubic Hermite spline whose slopes are
    the integrand itself; times outside the window fall back to direct
    quadrature.
    """

    factor: float
    integrand: CoefficientFunction
    window: tuple[float, float] = (0.0, 10.0)
    knots: int = 1025
    _table: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "integrand", as_coefficient(self.integrand))
        object.__setattr__(self, "window", (float(self.window[0]), float(self.window[1])))
        f = self.integrand
        if not isinstance(f, (Constant, PolynomialInT)):
            a, b = min(self.window[0], 0.0), max(self.window[1], 0.0)
            if b <= a:
                b = a + 1.0
            grid = np.linspace(a, b, self.knots)
            if 0.0 not in grid:
                grid = np.unique(np.append(grid, 0.0))
            i0 = int(np.searchsorted(grid, 0.0))
            vals = np.zeros_like(grid)
            for i in range(i0 + 1, len(grid)):
                vals[i] = vals[i - 1] + _quad(f, grid[i - 1], grid[i])
            for i in range(i0 - 1, -1, -1):
                vals[i] = vals[i + 1] - _quad(f, grid[i], grid[i + 1])
            slopes = np.asarray(f(grid), dtype=float)
            object.__setattr__(self, "_table", (grid[0], grid[-1], CubicHermiteSpline(grid, vals, slopes)))

    def integral(self, t):
        """``int_0^t integrand``."""
        f = self.integrand
        if isinstance(f, Constant):
            return f.value * np.asarray(t, dtype=float)
        if isinstance(f, PolynomialInT):
            return f.antiderivative()(t)
        lo, hi, spline = self._table
        tt = np.asarray(t, dtype=float)
        inside = (tt >= lo) & (tt <= hi)
        if np.all(inside):
            return spline(tt)
        out = np.where(inside, spline(np.clip(tt, lo, hi)), 0.0)
        for idx in zip(*np.nonzero(~inside)) if tt.ndim else [()]:
            out[idx] = _quad(f, 0.0, float(tt[idx]))
        return out

    def __call__(self, t):
        val = np.exp(self.factor * self.integral(t))
        return float(val) if np.ndim(val) == 0 else val

    def derivative(self):
        return Product((Constant(self.factor), self.integrand, self))

    def to_json(self) -> dict:
        return {"type": "exp_integral", "factor": self.factor, "integrand": self.integrand.to_json(),
                "window": list(self.window), "knots": self.knots}


def _quad(f, a: float, b: float) -> float:
    val, _ = quad(lambda s: float(f(s)), a, b, epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def as_coefficient(x) -> CoefficientFunction:
    if isinstance(x, CoefficientFunction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a coefficient function")
    if isinstance(x, (int, float, np.integer, np.floating)):
        return Constant(float(x))
    if isinstance(x, dict):
        return from_json(x)
    raise TypeError(f"cannot interpret {x!r} as a coefficient function")


def from_json(obj) -> CoefficientFunction:
    """Inverse of ``to_json``; numbers are accepted as constants."""
    if not isinstance(obj, dict):
        return as_coefficient(obj)
    kind = obj.get("type")
    try:
        if kind == "constant":
            return Constant(float(obj["value"]))
        if kind == "polynomial":
            return PolynomialInT(tuple(obj["coeffs"]))
        if kind == "harmonic":
            return Harmonic(float(obj["amplitude"]), float(obj["omega"]),
                            float(obj.get("phase", 0.0)), float(obj.get("offset", 0.0)))
        if kind == "exponential":
            return Exponential(float(obj["scale"]), float(obj["rate"]))
        if kind == "sum":
            return Sum(tuple(from_json(x) for x in obj["terms"]))
        if kind == "product":
            return Product(tuple(from_json(x) for x in obj["factors"]))
        if kind == "quotient":
            return Quotient(from_json(obj["numerator"]), from_json(obj["denominator"]))
        if kind == "sampled":
            return Sampled(tuple(obj["knots"]), tuple(obj["values"]), obj.get("kind", "cubic"))
        if kind == "exp_integral":
            return ExpIntegral(float(obj["factor"]), from_json(obj["integrand"]),
                               tuple(obj.get("window", (0.0, 10.0))), int(obj.get("knots", 1025)))
    except KeyError as exc:
        raise ValueError(f"coefficient of type {kind!r} is missing field {exc.args[0]!r}") from None
    raise ValueError(f"unknown coefficient type {kind!r}")


def random_coefficient(rng: np.random.Generator, bound: float = 2.0, terms: int = 2,
                       offset: float = 0.0) -> CoefficientFunction:
    """Smooth random function with ``|b(t) - offset| <= bound`` for all ``t``.

    A sum of ``terms`` harmonics with random frequencies in ``[0.2, 2]`` and
    amplitudes whose absolute values sum to at most ``bound``.
    """
    weights = rng.dirichlet(np.ones(terms + 1))[:terms]
    parts = []
    for w in weights:
        amp = float(bound * w * rng.choice([-1.0, 1.0]))
        parts.append(Harmonic(amp, float(rng.uniform(0.2, 2.0)), float(rng.uniform(0, 2 * math.pi)), 0.0))
    if offset:
        parts.append(Constant(float(offset)))
    return Sum(tuple(parts))


def simplify(f: CoefficientFunction) -> CoefficientFunction:
    """Fold sub-expressions built only from constants into a :class:`Constant`."""
    f = as_coefficient(f)
    if isinstance(f, Sum):
        terms = [simplify(x) for x in f.terms]
        terms = [x for x in terms if not (isinstance(x, Constant) and x.value == 0)]
        if all(isinstance(x, Constant) for x in terms):
            return Constant(float(sum(x.value for x in terms)))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))
    if isinstance(f, Product):
        factors = [simplify(x) for x in f.factors]
        if any(isinstance(x, Constant) and x.value == 0 for x in factors):
            return Constant(0.0)
        if all(isinstance(x, Constant) for x in factors):
            return Constant(float(np.prod([x.value for x in factors])))
        factors = [x for x in factors if not (isinstance(x, Constant) and x.value == 1)]
        return factors[0] if len(factors) == 1 else Product(tuple(factors))
    if isinstance(f, Quotient):
        n, d = simplify(f.numerator), simplify(f.denominator)
        if isinstance(n, Constant) and n.value == 0:
            return Constant(0.0)
        if isinstance(n, Constant) and isinstance(d, Constant):
            return Constant(n.value / d.value)
        if isinstance(d, Constant) and d.value == 1:
            return n
        return Quotient(n, d)
    if isinstance(f, ExpIntegral):
        g = simplify(f.integrand)
        if isinstance(g, Constant) and g.value == 0:
            return Constant(1.0)
        return ExpIntegral(f.factor, g, f.window, f.knots)
    return f
