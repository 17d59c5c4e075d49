"""Physical presets: electromagnetic field, coupled oscillators, su(3) couplings.

Each preset has two faces:

* a constructor producing an :class:`~lhsp6.dynamics.LHSystemSpec` whose
  coefficients are concrete :mod:`~lhsp6.dynamics.coefficients` functions;
* a symbolic model in which every time-dependent parameter is an extra
  polynomial variable (``g`` for gamma, ``u1`` for ``1/m1``, ...). The
  coefficient table then becomes a list of polynomials and the identity
  ``sum_i b_i h_i = H`` with the closed-form Hamiltonian ``H`` is an exact
  polynomial identity. Time derivatives act as a derivation on these symbols
  (``g -> dg``).

:func:`numeric_agreement` ties the two faces together by evaluating the
symbolic coefficients on the concrete functions at sample times.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from . import _exact as ex
from .dynamics.coefficients import (
    CoefficientFunction,
    Constant,
    ExpIntegral,
    Product,
    Quotient,
    Sum,
    as_coefficient,
    simplify,
)
from .dynamics.system import LHSystemSpec, basis_matrices
from .polyring import Polynomial, VariableSpace
from .realization import sp6_hamiltonians, su3_hamiltonians

__all__ = [
    "PresetError",
    "EMFieldData",
    "OscillatorData",
    "em_preset",
    "cho_preset",
    "cck_preset",
    "su3_preset",
    "minkowski_decomposition",
    "cho_frequency",
    "SymbolicPreset",
    "em_symbolic",
    "cho_symbolic",
    "cck_symbolic",
    "su3_symbolic",
    "h_II_identity",
    "em_fields",
    "numeric_agreement",
    "sample_window",
]

PHASE_NAMES = ("q1", "q2", "q3", "p1", "p2", "p3")
DEFAULT_SAMPLES = 1024


class PresetError(ValueError):
    """A positivity or inequality constraint on preset data fails."""


def sample_window(window, n: int = DEFAULT_SAMPLES) -> np.ndarray:
    t0, t1 = map(float, window)
    return np.linspace(t0, t1, n) if t1 > t0 else np.array([t0])


def _positive(name: str, f: CoefficientFunction, window) -> None:
    ts = sample_window(window)
    vals = np.asarray(f(ts), dtype=float)
    if np.any(~np.isfinite(vals)) or np.any(vals <= 0):
        bad = ts[np.argmax(~(vals > 0))]
        raise PresetError(f"{name} must be positive on the window; fails at t = {bad!r}")


def _space(params: Sequence[str]) -> VariableSpace:
    return VariableSpace(list(PHASE_NAMES) + list(params))


def _embed_hams(hams: Sequence[Polynomial], space: VariableSpace) -> list[Polynomial]:
    return [h.embed(space) for h in hams]


def time_derivative(p: Polynomial, rules: Mapping[str, Polynomial]) -> Polynomial:
    """``d/dt`` as the derivation sending each symbol ``s`` to ``rules[s]``."""
    out = p.space.zero()
    for name, dot in rules.items():
        out = out + p.partial(name) * dot
    return out


@dataclass(frozen=True)
class SymbolicPreset:
    """Coefficient polynomials ``b_i`` and the closed-form Hamiltonian."""

    space: VariableSpace
    coefficients: Mapping[int, Polynomial]
    hamiltonian: Polynomial
    algebra: str = "sp6"

    def expansion(self) -> Polynomial:
        hams = sp6_hamiltonians() if self.algebra == "sp6" else su3_hamiltonians()
        hams = _embed_hams(hams, self.space)
        total = self.space.zero()
        for i, b in self.coefficients.items():
            total = total + b * hams[i - 1]
        return total

    def residual(self) -> Polynomial:
        """``sum_i b_i h_i - H``; zero when the identity holds."""
        return self.expansion() - self.hamiltonian

    def holds(self) -> bool:
        return self.residual().is_zero()


# -- electromagnetic field -----------------------------------------------------

_EM_PARAMS = ("g", "dg", "e1", "e2", "e3", "u1", "u2", "u3")


@dataclass(frozen=True)
class EMFieldData:
    """Masses, charges and the field strength ``gamma`` as functions of time."""

    m: Sequence[CoefficientFunction]
    e: Sequence[CoefficientFunction]
    gamma: CoefficientFunction
    window: tuple[float, float] = (0.0, 10.0)

    def __post_init__(self):
        if len(self.m) != 3 or len(self.e) != 3:
            raise ValueError("need three masses and three charges")
        object.__setattr__(self, "m", tuple(as_coefficient(x) for x in self.m))
        object.__setattr__(self, "e", tuple(as_coefficient(x) for x in self.e))
        object.__setattr__(self, "gamma", as_coefficient(self.gamma))
        object.__setattr__(self, "window", (float(self.window[0]), float(self.window[1])))

    def validate(self) -> list[str]:
        """Raise on non-positive masses; return warnings (``gamma''`` vanishing)."""
        for i, m in enumerate(self.m, start=1):
            _positive(f"m{i}", m, self.window)
        notes = []
        ts = sample_window(self.window)
        g2 = np.asarray(self.gamma.derivative().derivative()(ts), dtype=float)
        if np.any(np.abs(g2) <= 1e-14):
            t_bad = ts[int(np.argmin(np.abs(g2)))]
            msg = f"second derivative of gamma vanishes near t = {t_bad!r}; the electric field may be static there"
            warnings.warn(msg, RuntimeWarning, stacklevel=3)
            notes.append(msg)
        return notes


def em_symbolic() -> SymbolicPreset:
    """The b-table and ``h^E`` in the symbols ``g, e_i, u_i = 1/m_i``."""
    s = _space(_EM_PARAMS)
    g, e1, e2, e3, u1, u2, u3 = s.vars("g", "e1", "e2", "e3", "u1", "u2", "u3")
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    coeffs = {
        2: -(g * e2 * u2).scale(half),
        4: (g * e1 * u1).scale(half),
        9: -(g * e3 * u3).scale(half),
        10: e1 + (g ** 2 * e2 ** 2 * u2).scale(quarter),
        13: e2 + (g ** 2 * e1 ** 2 * u1).scale(quarter),
        15: e3 + (g ** 2 * e3 ** 2 * u3).scale(quarter),
        16: u1,
        19: u2,
        21: u3,
    }
    fields = em_fields()
    a = [x.embed(s) for x in fields["A"]]
    phi = [x.embed(s) for x in fields["phi"]]
    p = s.vars("p1", "p2", "p3")
    e = (e1, e2, e3)
    u = (u1, u2, u3)
    h = s.zero()
    for i in range(3):
        h = h + (u[i] * (p[i] - e[i] * a[i]) ** 2).scale(half) + e[i] * phi[i]
    return SymbolicPreset(s, coeffs, h)


def em_fields() -> dict:
    """Vector potential, scalar potentials and the derived B and E fields.

    Polynomials in ``q1, q2, q3, g, dg`` where ``dg`` stands for the time
    derivative of gamma.
    """
    s = VariableSpace(["q1", "q2", "q3", "g", "dg"])
    q1, q2, q3, g, dg = s.gens()
    half = Fraction(1, 2)
    a = (-(q2 * g).scale(half), (q1 * g).scale(half), (q3 * g).scale(half))
    phi = tuple((q ** 2).scale(half) for q in (q1, q2, q3))
    phi_total = phi[0] + phi[1] + phi[2]
    qs = ("q1", "q2", "q3")

    def d(f, k):
        return f.partial(qs[k])

    curl = (d(a[2], 1) - d(a[1], 2), d(a[0], 2) - d(a[2], 0), d(a[1], 0) - d(a[0], 1))
    dadt = tuple(time_derivative(x, {"g": dg}) for x in a)
    e_field = tuple(-d(phi_total, k) - dadt[k] for k in range(3))
    return {"space": s, "A": a, "phi": phi, "B": curl, "E": e_field}


def em_preset(data: EMFieldData) -> LHSystemSpec:
    """Coefficient table of the electromagnetic preset (nine generators)."""
    data.validate()
    m1, m2, m3 = data.m
    e1, e2, e3 = data.e
    g = data.gamma
    coeffs = {
        2: Quotient(Product((Constant(-0.5), g, e2)), m2),
        4: Quotient(Product((Constant(0.5), g, e1)), m1),
        9: Quotient(Product((Constant(-0.5), g, e3)), m3),
        10: Sum((e1, Quotient(Product((Constant(0.25), g, g, e2, e2)), m2))),
        13: Sum((e2, Quotient(Product((Constant(0.25), g, g, e1, e1)), m1))),
        15: Sum((e3, Quotient(Product((Constant(0.25), g, g, e3, e3)), m3))),
        16: Quotient(Constant(1.0), m1),
        19: Quotient(Constant(1.0), m2),
        21: Quotient(Constant(1.0), m3),
    }
    return LHSystemSpec("sp6", {k: simplify(v) for k, v in coeffs.items()})


def em_parameter_values(data: EMFieldData, t) -> dict:
    return {
        "g": data.gamma(t), "dg": data.gamma.derivative()(t),
        "e1": data.e[0](t), "e2": data.e[1](t), "e3": data.e[2](t),
        "u1": 1 / data.m[0](t), "u2": 1 / data.m[1](t), "u3": 1 / data.m[2](t),
    }


# -- coupled oscillators -------------------------------------------------------


@dataclass(frozen=True)
class OscillatorData:
    """Per-axis mass, spring and damping functions plus the three couplings."""

    m: Sequence[CoefficientFunction]
    k: Sequence[CoefficientFunction]
    gamma: Sequence[CoefficientFunction]
    b2: CoefficientFunction = Constant(0.0)
    b3: CoefficientFunction = Constant(0.0)
    b6: CoefficientFunction = Constant(0.0)
    window: tuple[float, float] = (0.0, 10.0)

    def __post_init__(self):
        for name in ("m", "k", "gamma"):
            vals = getattr(self, name)
            if len(vals) != 3:
                raise ValueError(f"need three {name} functions")
            object.__setattr__(self, name, tuple(as_coefficient(x) for x in vals))
        for name in ("b2", "b3", "b6"):
            object.__setattr__(self, name, as_coefficient(getattr(self, name)))
        object.__setattr__(self, "window", (float(self.window[0]), float(self.window[1])))

    def validate(self, variant: str) -> None:
        for i, m in enumerate(self.m, start=1):
            _positive(f"m{i}", m, self.window)
        if variant == "CHO":
            ts = sample_window(self.window)
            for i in range(3):
                m, k, g = (np.asarray(f(ts), dtype=float) for f in (self.m[i], self.k[i], self.gamma[i]))
                ok = k > g ** 2 / (4 * m)
                if not np.all(ok):
                    raise PresetError(f"k{i + 1} > gamma{i + 1}^2 / (4 m{i + 1}) fails at t = {ts[np.argmin(ok)]!r}")
        elif variant == "CCK":
            for i, k in enumerate(self.k, start=1):
                _positive(f"k{i}", k, self.window)
        else:
            raise ValueError(f"unknown oscillator variant {variant!r}")


def cho_frequency(m, k, gamma) -> float:
    """``Omega = sqrt((k - gamma^2 / (4 m)) / m)`` of the damped oscillator."""
    return math.sqrt((k - gamma ** 2 / (4 * m)) / m)


def _couplings(data: OscillatorData) -> dict:
    return {
        2: data.b2, 3: data.b3, 6: data.b6,
        4: simplify(-data.b2), 7: simplify(-data.b3), 8: simplify(-data.b6),
    }


def cho_preset(data: OscillatorData) -> LHSystemSpec:
    """Coupled time-dependent harmonic oscillators.

    ``b_16 = 1/m_1`` and ``b_10 = m_1 Omega_1^2 = k_1 - gamma_1^2 / (4 m_1)``
    (likewise for axes 2, 3 on ``b_19, b_13`` and ``b_21, b_15``).
    """
    data.validate("CHO")
    coeffs = {}
    for (kin, pot), m, k, g in zip(((16, 10), (19, 13), (21, 15)), data.m, data.k, data.gamma):
        coeffs[kin] = Quotient(Constant(1.0), m)
        coeffs[pot] = Sum((k, -Quotient(Product((Constant(0.25), g, g)), m)))
    coeffs.update(_couplings(data))
    return LHSystemSpec("sp6", {i: simplify(f) for i, f in coeffs.items()})


def cck_preset(data: OscillatorData) -> LHSystemSpec:
    """Coupled Caldirola-Kanai oscillators.

    With ``lambda_i = gamma_i / m_i`` and ``Omega_i^2 = k_i / m_i``:
    ``b_16 = exp(-2 int_0^t lambda_1) / m_1`` and
    ``b_10 = m_1 Omega_1^2 exp(2 int_0^t lambda_1) = k_1 exp(2 int_0^t lambda_1)``.
    """
    data.validate("CCK")
    coeffs = {}
    for (kin, pot), m, k, g in zip(((16, 10), (19, 13), (21, 15)), data.m, data.k, data.gamma):
        lam = simplify(Quotient(g, m))
        down = simplify(ExpIntegral(-2.0, lam, data.window))
        up = simplify(ExpIntegral(2.0, lam, data.window))
        coeffs[kin] = Quotient(down, m)
        coeffs[pot] = Product((m, Quotient(k, m), up))
    coeffs.update(_couplings(data))
    return LHSystemSpec("sp6", {i: simplify(f) for i, f in coeffs.items()})


_OSC_PARAMS = ("u1", "u2", "u3", "m1", "m2", "m3", "W1", "W2", "W3", "c2", "c3", "c6")
_CCK_PARAMS = _OSC_PARAMS + ("D1", "D2", "D3", "G1", "G2", "G3")


def _angular(s: VariableSpace, c2, c3, c6) -> Polynomial:
    q1, q2, q3, p1, p2, p3 = s.vars(*PHASE_NAMES)
    return c2 * (q1 * p2 - q2 * p1) + c3 * (q1 * p3 - q3 * p1) + c6 * (q2 * p3 - q3 * p2)


def _coupling_polys(c2, c3, c6) -> dict:
    return {2: c2, 3: c3, 6: c6, 4: -c2, 7: -c3, 8: -c6}


def cho_symbolic() -> SymbolicPreset:
    """Coefficients ``1/m_i``, ``m_i Omega_i^2`` and ``h^CHO`` with ``W_i = Omega_i``."""
    s = _space(_OSC_PARAMS)
    u = s.vars("u1", "u2", "u3")
    m = s.vars("m1", "m2", "m3")
    w = s.vars("W1", "W2", "W3")
    c2, c3, c6 = s.vars("c2", "c3", "c6")
    qs, ps = s.vars("q1", "q2", "q3"), s.vars("p1", "p2", "p3")
    half = Fraction(1, 2)
    coeffs = {}
    h = s.zero()
    for i, (kin, pot) in enumerate(((16, 10), (19, 13), (21, 15))):
        coeffs[kin] = u[i]
        coeffs[pot] = m[i] * w[i] ** 2
        h = h + (u[i] * ps[i] ** 2).scale(half) + (m[i] * w[i] ** 2 * qs[i] ** 2).scale(half)
    coeffs.update(_coupling_polys(c2, c3, c6))
    return SymbolicPreset(s, coeffs, h + _angular(s, c2, c3, c6))


def cck_symbolic() -> SymbolicPreset:
    """As :func:`cho_symbolic` with ``D_i = exp(-2 int lambda_i)``, ``G_i = exp(2 int lambda_i)``."""
    s = _space(_CCK_PARAMS)
    u = s.vars("u1", "u2", "u3")
    m = s.vars("m1", "m2", "m3")
    w = s.vars("W1", "W2", "W3")
    dn = s.vars("D1", "D2", "D3")
    up = s.vars("G1", "G2", "G3")
    c2, c3, c6 = s.vars("c2", "c3", "c6")
    qs, ps = s.vars("q1", "q2", "q3"), s.vars("p1", "p2", "p3")
    half = Fraction(1, 2)
    coeffs = {}
    h = s.zero()
    for i, (kin, pot) in enumerate(((16, 10), (19, 13), (21, 15))):
        coeffs[kin] = u[i] * dn[i]
        coeffs[pot] = m[i] * w[i] ** 2 * up[i]
        h = h + (u[i] * dn[i] * ps[i] ** 2).scale(half) + (m[i] * w[i] ** 2 * up[i] * qs[i] ** 2).scale(half)
    coeffs.update(_coupling_polys(c2, c3, c6))
    return SymbolicPreset(s, coeffs, h + _angular(s, c2, c3, c6))


def h_II_identity() -> SymbolicPreset:
    """``sum b_i h_i`` with ``b_4 = -b_2, b_7 = -b_3, b_8 = -b_6`` against ``h^II``."""
    names = ("b2", "b3", "b6", "b10", "b13", "b15", "b16", "b19", "b21")
    s = _space(names)
    b = dict(zip(names, s.vars(*names)))
    q1, q2, q3, p1, p2, p3 = s.vars(*PHASE_NAMES)
    half = Fraction(1, 2)
    coeffs = {int(n[1:]): v for n, v in b.items()}
    coeffs.update({4: -b["b2"], 7: -b["b3"], 8: -b["b6"]})
    h = ((b["b16"] * p1 ** 2 + b["b10"] * q1 ** 2 + b["b19"] * p2 ** 2 + b["b13"] * q2 ** 2
          + b["b21"] * p3 ** 2 + b["b15"] * q3 ** 2).scale(half)
         + _angular(s, b["b2"], b["b3"], b["b6"]))
    return SymbolicPreset(s, coeffs, h)


@lru_cache(maxsize=32)
def _damping_factors(data: OscillatorData) -> tuple:
    """``(exp(-2 int lambda_i), exp(2 int lambda_i))`` per axis, built once per data set."""
    out = []
    for i in range(3):
        lam = simplify(Quotient(data.gamma[i], data.m[i]))
        out.append((simplify(ExpIntegral(-2.0, lam, data.window)), simplify(ExpIntegral(2.0, lam, data.window))))
    return tuple(out)


def oscillator_parameter_values(data: OscillatorData, t, variant: str) -> dict:
    vals = {}
    for i in range(3):
        m, k, g = data.m[i](t), data.k[i](t), data.gamma[i](t)
        vals[f"u{i + 1}"] = 1 / m
        vals[f"m{i + 1}"] = m
        if variant == "CHO":
            vals[f"W{i + 1}"] = cho_frequency(m, k, g)
        else:
            vals[f"W{i + 1}"] = math.sqrt(k / m)
            decay, growth = _damping_factors(data)[i]
            vals[f"D{i + 1}"] = decay(t)
            vals[f"G{i + 1}"] = growth(t)
    vals.update({"c2": data.b2(t), "c3": data.b3(t), "c6": data.b6(t)})
    return vals


def numeric_agreement(symbolic: SymbolicPreset, spec: LHSystemSpec,
                      values: Callable[[float], Mapping[str, float]], times) -> float:
    """Largest ``|b_i^spec(t) - b_i^symbolic(values(t))|`` over the sample times.

    Coefficients absent from either side count as zero.
    """
    worst = 0.0
    keys = set(symbolic.coefficients) | set(spec.coefficients)
    for t in times:
        point = dict(values(t))
        for i in keys:
            poly = symbolic.coefficients.get(i)
            exact = poly.evaluate(point) if poly is not None else 0.0
            f = spec.coefficients.get(i)
            got = f(t) if f is not None else 0.0
            worst = max(worst, abs(got - exact) / max(1.0, abs(exact)))
    return worst


# -- su(3) ---------------------------------------------------------------------

_SU3_PARAMS = ("t1", "t2", "t3", "t4")


def su3_symbolic() -> SymbolicPreset:
    """``a``-coefficients in the symbols ``t_j`` standing for the tilde-a functions."""
    s = _space(_SU3_PARAMS)
    a1, a2, a3, a4 = s.vars(*_SU3_PARAMS)
    q1, q2, q3, p1, p2, p3 = s.vars(*PHASE_NAMES)
    coeffs = {1: a1 + a2, 2: a3 + a4, 4: a1 - a2, 5: a3 - a4}
    h = (a1 * (p1 * p2 - q1 * q2) + a2 * (q1 * p2 - q2 * p1)
         + a3 * (p2 * p3 - q2 * q3) + a4 * (q2 * p3 - q3 * p2))
    return SymbolicPreset(s, coeffs, h, algebra="su3")


def su3_preset(a1, a2, a3, a4) -> LHSystemSpec:
    """su(3) spec with ``a_1 = a~_1 + a~_2, a_2 = a~_3 + a~_4, a_4 = a~_1 - a~_2, a_5 = a~_3 - a~_4``."""
    t1, t2, t3, t4 = (as_coefficient(x) for x in (a1, a2, a3, a4))
    coeffs = {1: t1 + t2, 2: t3 + t4, 4: t1 - t2, 5: t3 - t4}
    return LHSystemSpec("su3", {i: simplify(f) for i, f in coeffs.items()})


def su3_printed_matrix(a) -> list[list]:
    """The displayed Hamilton-equation matrix for tilde-a values ``a[0..3]``."""
    a1, a2, a3, a4 = a
    return [
        [0, -a2, 0, 0, a1, 0],
        [a2, 0, -a4, a1, 0, a3],
        [0, a4, 0, 0, a3, 0],
        [0, a1, 0, 0, -a2, 0],
        [a1, 0, a3, a2, 0, -a4],
        [0, a3, 0, 0, a4, 0],
    ]


def su3_matrix_identity() -> bool:
    """Exact check: ``sum a_i M(Y_i)`` equals the displayed matrix, per tilde-a."""
    from .realization import realize_su3

    fields = [f for _, f in realize_su3()]
    sym = su3_symbolic()
    for j, name in enumerate(_SU3_PARAMS):
        unit = {n: Fraction(int(n == name)) for n in _SU3_PARAMS}
        total = ex.zeros(6)
        for i, poly in sym.coefficients.items():
            c = poly.evaluate_exact({**unit, **{n: 0 for n in PHASE_NAMES}})
            total = ex.add(total, ex.scale(c, fields[i - 1].matrix))
        target = ex.as_matrix(su3_printed_matrix([Fraction(int(k == j)) for k in range(4)]))
        if total != target:
            return False
    return True


# -- Minkowski light-cone decomposition ------------------------------------------

_MINK = VariableSpace(list(PHASE_NAMES) + ["qp", "qm", "pp", "pm", "qx", "qy", "px", "py", "q", "p",
                                            "ai", "aj", "t1", "t2", "t3", "t4"])


@dataclass
class MinkowskiReport:
    h2d: Polynomial
    h1d: Polynomial
    identity_i: bool
    identity_i_as_printed: bool
    identity_ii: bool
    identity_iii: bool
    kinetic: bool
    decoupled: bool

    @property
    def ok(self) -> bool:
        return self.identity_i and self.identity_ii and self.identity_iii and self.kinetic and self.decoupled


def _h2d(ai: Polynomial, aj: Polynomial) -> Polynomial:
    qp, qm, pp, pm = _MINK.vars("qp", "qm", "pp", "pm")
    return ai * (pp * pm - qp * qm) + aj * (qp * pm - qm * pp)


def _pullback(f: Polynomial, images: Mapping[str, str]) -> Polynomial:
    return f.substitute({k: _MINK.var(v) for k, v in images.items()}, _MINK)


#: light-cone chart on the plane: q+- = qx +- qy, p+- = (px +- py) / 2
LIGHT_CONE = {"qp": ("qx", "qy", 1), "qm": ("qx", "qy", -1)}

PR12 = {"qp": "q1", "qm": "q2", "pp": "p1", "pm": "p2"}
#: The projection onto the (2, 3) factors as printed maps q+ -> q3, q- -> q2.
PR23_PRINTED = {"qp": "q3", "qm": "q2", "pp": "p3", "pm": "p2"}
#: Orientation for which the decomposition of h~ holds: q+ -> q2, q- -> q3.
PR23 = {"qp": "q2", "qm": "q3", "pp": "p2", "pm": "p3"}


def minkowski_decomposition(i: int = 1, j: int = 2) -> MinkowskiReport:
    """Light-cone form of the two-dimensional pieces of ``h~``.

    Checks: (i) ``h~ = pr12^*(h^2D_12) + pr23^*(h^2D_34)``; (ii) the
    Cartesian form of ``h^2D_ij``; (iii) ``h^2D = pr1^*(h^1D) - pr2^*(h^1D)
    - a_j (qx py - qy px)``; the kinetic term ``2 p+ p-``; and decoupling
    when ``a_j = 0``.
    """
    ai, aj = _MINK.vars("ai", "aj")
    t = _MINK.vars("t1", "t2", "t3", "t4")
    h2 = _h2d(ai, aj)
    tilde = su3_symbolic().hamiltonian.embed(_MINK)

    def decomposition(pr23):
        first = _pullback(_h2d(t[0], t[1]), PR12)
        second = _pullback(_h2d(t[2], t[3]), pr23)
        return first + second

    identity_i = decomposition(PR23) == tilde
    identity_i_printed = decomposition(PR23_PRINTED) == tilde

    qx, qy, px, py, q, p = _MINK.vars("qx", "qy", "px", "py", "q", "p")
    half = Fraction(1, 2)
    chart = {"qp": qx + qy, "qm": qx - qy, "pp": (px + py).scale(half), "pm": (px - py).scale(half)}
    h2_cart = h2.substitute(chart, _MINK)
    quarter = Fraction(1, 4)
    cart_target = (ai * (px ** 2 - py ** 2)).scale(quarter) - ai * (qx ** 2 - qy ** 2) - aj * (qx * py - qy * px)
    identity_ii = h2_cart == cart_target

    h1 = (ai * (p ** 2 - 4 * q ** 2)).scale(quarter)
    pr1 = h1.substitute({"q": qx, "p": px}, _MINK)
    pr2 = h1.substitute({"q": qy, "p": py}, _MINK)
    identity_iii = h2_cart == pr1 - pr2 - aj * (qx * py - qy * px)

    pp, pm = _MINK.vars("pp", "pm")
    kinetic = (2 * pp * pm).substitute(chart, _MINK) == (px ** 2 - py ** 2).scale(half)
    decoupled = h2_cart.substitute({"aj": _MINK.zero()}, _MINK) == pr1 - pr2

    return MinkowskiReport(h2, h1, identity_i, identity_i_printed, identity_ii, identity_iii, kinetic, decoupled)
