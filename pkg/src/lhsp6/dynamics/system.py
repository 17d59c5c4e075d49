"""Lie-Hamilton system specifications, their 6x6 matrices, and trajectories."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from ..realization import realize_sp6, realize_su3, sp6_hamiltonians, su3_hamiltonians
from .coefficients import CoefficientFunction, as_coefficient, random_coefficient
from .integrator import SolverStats, dopri5

__all__ = [
    "ALGEBRAS",
    "LHSystemSpec",
    "Trajectory",
    "basis_matrices",
    "system_matrix",
    "integrate",
    "integrate_prolonged",
    "hamiltonian_value",
    "random_spec",
]

#: algebra name -> (basis size, coefficient prefix)
ALGEBRAS = {"sp6": (21, "b"), "su3": (8, "a")}


@lru_cache(maxsize=None)
def basis_matrices(algebra: str) -> np.ndarray:
    """Stack ``(n, 6, 6)`` of field matrices ``M_i`` (``X_i = M_i z . d/dz``)."""
    if algebra == "sp6":
        fields = [f for _, f in realize_sp6()]
    elif algebra == "su3":
        fields = [f for _, f in realize_su3()]
    else:
        raise ValueError(f"unknown algebra {algebra!r}")
    out = np.stack([f.float_matrix() for f in fields])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _quadratic_forms(algebra: str) -> np.ndarray:
    hams = sp6_hamiltonians() if algebra == "sp6" else su3_hamiltonians()
    forms = []
    for h in hams:
        s = np.zeros((6, 6))
        for mono, c in h.terms.items():
            idx = [i for i, e in enumerate(mono) for _ in range(e)]
            a, b = idx
            if a == b:
                s[a, a] += 2 * float(c)
            else:
                s[a, b] += float(c)
                s[b, a] += float(c)
        forms.append(s)
    return np.stack(forms)


_KEY_RE = re.compile(r"^([ab])(\d+)$")


def _normalize_key(algebra: str, key) -> int:
    n, prefix = ALGEBRAS[algebra]
    if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
        idx = int(key)
    elif isinstance(key, str) and _KEY_RE.match(key):
        p, num = _KEY_RE.match(key).groups()
        if p != prefix:
            raise ValueError(f"coefficient {key!r} does not belong to algebra {algebra!r} (expected {prefix}1..{prefix}{n})")
        idx = int(num)
    else:
        raise ValueError(f"invalid coefficient key {key!r}")
    if not 1 <= idx <= n:
        raise ValueError(f"coefficient index {idx} out of range 1..{n} for {algebra}")
    return idx


@dataclass(frozen=True)
class LHSystemSpec:
    """An algebra and time-dependent coefficients of its basis Hamiltonians.

    ``coefficients`` maps 1-based basis indices (or names ``"b16"``,
    ``"a2"``) to coefficient functions; missing entries are zero.
    """

    algebra: str
    coefficients: Mapping[int, CoefficientFunction] = field(default_factory=dict)

    def __post_init__(self):
        if self.algebra not in ALGEBRAS:
            raise ValueError(f"unknown algebra {self.algebra!r}")
        clean = {}
        for k, v in dict(self.coefficients).items():
            idx = _normalize_key(self.algebra, k)
            if idx in clean:
                raise ValueError(f"coefficient {idx} assigned twice")
            clean[idx] = as_coefficient(v)
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    @property
    def size(self) -> int:
        return ALGEBRAS[self.algebra][0]

    @property
    def prefix(self) -> str:
        return ALGEBRAS[self.algebra][1]

    def coefficient(self, i: int) -> CoefficientFunction | None:
        return self.coefficients.get(i)

    def values(self, t) -> np.ndarray:
        """Coefficient vector ``b(t)`` (length 21 or 8)."""
        out = np.zeros(self.size)
        for i, f in self.coefficients.items():
            out[i - 1] = f(t)
        return out

    def nonzero(self) -> dict:
        return {i: f for i, f in self.coefficients.items() if not f.is_zero()}

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "coefficients": {f"{self.prefix}{i}": f.to_json() for i, f in self.coefficients.items()},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "LHSystemSpec":
        return cls(obj["algebra"], {k: as_coefficient(v) for k, v in obj.get("coefficients", {}).items()})


def system_matrix(spec: LHSystemSpec, t: float) -> np.ndarray:
    """``M(t) = sum_i b_i(t) M_i``; ``z' = M(t) z``."""
    mats = basis_matrices(spec.algebra)
    m = np.zeros((6, 6))
    for i, f in spec.coefficients.items():
        m += f(t) * mats[i - 1]
    return m


def hamiltonian_value(spec: LHSystemSpec, z, t: float) -> float:
    """``sum_i b_i(t) h_i(z)``."""
    z = np.asarray(z, dtype=float)
    forms = _quadratic_forms(spec.algebra)
    total = 0.0
    for i, f in spec.coefficients.items():
        total += f(t) * 0.5 * float(z @ forms[i - 1] @ z)
    return total


@dataclass
class Trajectory:
    """Sampled solution: ``states[n]`` holds the ``k`` copies at ``times[n]``."""

    times: np.ndarray
    states: np.ndarray  # shape (n, k, 6)
    stats: SolverStats
    algebra: str = ""

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        s = np.asarray(self.states, dtype=float)
        if s.ndim == 2:
            s = s[:, None, :]
        if s.ndim != 3 or s.shape[2] != 6 or s.shape[0] != self.times.shape[0]:
            raise ValueError("states must have shape (len(times), k, 6)")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        self.states = s

    @property
    def k(self) -> int:
        return self.states.shape[1]

    def copy(self, l: int) -> np.ndarray:
        """States of copy ``l`` (0-based), shape ``(n, 6)``."""
        return self.states[:, l, :]

    @property
    def flat(self) -> np.ndarray:
        """States on R^{6k}, shape ``(n, 6k)``."""
        return self.states.reshape(len(self.times), -1)


def _grid(window, grid) -> np.ndarray:
    t0, t1 = map(float, window)
    if grid is None:
        return np.array([t0, t1]) if t1 > t0 else np.array([t0])
    if np.ndim(grid) == 0:
        n = int(grid)
        if n < 1:
            raise ValueError("grid size must be >= 1")
        return np.linspace(t0, t1, n) if t1 > t0 else np.array([t0])
    return np.asarray(grid, dtype=float)


def integrate_prolonged(spec: LHSystemSpec, z0s, window, rtol: float = 1e-10, atol: float = 1e-12,
                        grid=None, fixed_step: float | None = None) -> Trajectory:
    """Integrate ``k`` copies of ``z' = M(t) z`` simultaneously.

    The copies share steps and the coefficient evaluation; the per-copy
    error is controlled by the RMS norm over all ``6k`` components.
    """
    z0s = np.atleast_2d(np.asarray(z0s, dtype=float))
    if z0s.ndim != 2 or z0s.shape[1] != 6:
        raise ValueError("initial points must have shape (k, 6)")
    t0, t1 = map(float, window)
    if t1 < t0:
        raise ValueError("integration window must satisfy t1 >= t0")
    times = _grid(window, grid)
    mats = basis_matrices(spec.algebra)
    items = [(f, mats[i - 1]) for i, f in spec.nonzero().items()]

    def rhs(t, y):
        m = np.zeros((6, 6))
        for f, mi in items:
            m += f(t) * mi
        return y @ m.T

    ts, ys, stats = dopri5(rhs, t0, z0s, t1, t_eval=times, rtol=rtol, atol=atol, fixed_step=fixed_step)
    return Trajectory(ts, ys, stats, spec.algebra)


def integrate(spec: LHSystemSpec, z0, window, rtol: float = 1e-10, atol: float = 1e-12,
              grid=None, fixed_step: float | None = None) -> Trajectory:
    """Integrate ``z' = M(t) z`` from one initial point; see :func:`integrate_prolonged`."""
    z0 = np.asarray(z0, dtype=float)
    if z0.shape != (6,):
        raise ValueError("initial point must have 6 coordinates")
    return integrate_prolonged(spec, z0[None], window, rtol, atol, grid, fixed_step)


#: sp(6,R) Hamiltonians carrying q_i^2/2 and p_i^2/2 (the oscillator diagonal)
OSCILLATOR_DIAGONAL = (10, 13, 15, 16, 19, 21)


def random_spec(algebra: str, seed: int, bound: float = 2.0) -> LHSystemSpec:
    """Seeded random spec with smooth coefficients bounded by ``bound``.

    For sp(6,R) a generic bounded choice can grow like ``exp(2 t)``, which
    turns the relative drift bounds into a test of cancellation rather than of
    conservation. The oscillator diagonal is therefore centred at
    ``bound / 2`` with fluctuations of at most ``bound / 4``, and the other
    coefficients fluctuate by at most ``bound / 8``, so ``|b_i| <= bound``.

    The eight fields of the su(3) realization are not all elliptic (``Y_7``
    and ``Y_8`` generate hyperbolic flows), so the same concern applies.
    There the weight goes on the rotations ``Y_k - Y_{k+3}``
    (amplitude ``bound / 2``), while the combinations ``Y_k + Y_{k+3}``
    and ``Y_7, Y_8`` get amplitude ``bound / 16``.
    """
    rng = np.random.default_rng(seed)
    n, _ = ALGEBRAS[algebra]
    coeffs = {}
    if algebra == "su3":
        for k in (1, 2, 3):
            rot = random_coefficient(rng, bound / 2)
            boost = random_coefficient(rng, bound / 16)
            coeffs[k] = rot + boost
            coeffs[k + 3] = boost - rot
        for k in (7, 8):
            coeffs[k] = random_coefficient(rng, bound / 16)
        return LHSystemSpec(algebra, coeffs)
    for i in range(1, n + 1):
        if i in OSCILLATOR_DIAGONAL:
            coeffs[i] = random_coefficient(rng, bound / 4, offset=bound / 2)
        else:
            coeffs[i] = random_coefficient(rng, bound / 8)
    return LHSystemSpec(algebra, coeffs)
