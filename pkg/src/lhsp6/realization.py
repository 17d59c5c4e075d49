"""Linear Hamiltonian vector fields on T*R^3 and the two realizations.

Coordinates are ``z = (q1, q2, q3, p1, p2, p3)``. A linear field is stored
as an exact 6x6 matrix ``M`` with ``X = (M z) . d/dz``; for two such fields
the Lie bracket has matrix ``-[M_X, M_Y]``.

With ``omega = sum_i dq_i ^ dp_i`` the condition ``i_X omega = dh`` gives
``X = sum_i (dh/dp_i d/dq_i - dh/dq_i d/dp_i)``, i.e. ``M = J S`` for
``h = z^T S z / 2`` and ``J = [[0, I], [-I, 0]]``.

The sp(6,R) fields are read off the fundamental representation matrix
(each generator's field matrix is the transpose of its coefficient pattern
in that matrix). The su(3) fields are built twice: from the embedding and
from their explicit coordinate expressions, and the two are compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import _exact as ex
from .liealg import (
    SP6_BASIS,
    SU3_NAMES,
    GeneratorIndex,
    StructureConstants,
    build_sp6,
    build_su3,
    canonical,
    decompose,
    NotInSpanError,
)
from .polyring import Polynomial, phase_space, poisson

__all__ = [
    "J",
    "LinearVectorField",
    "SymplecticForm",
    "CANONICAL_FORM",
    "hamiltonian_lift",
    "hamiltonian_of",
    "vf_bracket",
    "realize_sp6",
    "realize_su3",
    "sp6_hamiltonians",
    "su3_hamiltonians",
    "printed_su3_fields",
    "NotHamiltonianError",
    "TranscriptionMismatch",
    "representation_matrix",
]

PHASE = phase_space()
COORDS = PHASE.names
_I3 = ex.identity(3)

#: The block matrix J = [[0, I3], [-I3, 0]].
J: ex.Matrix = ex.as_matrix(
    [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1],
     [-1, 0, 0, 0, 0, 0], [0, -1, 0, 0, 0, 0], [0, 0, -1, 0, 0, 0]]
)


class NotHamiltonianError(ValueError):
    """The field's matrix is not in sp(6,R)."""


class TranscriptionMismatch(AssertionError):
    """Two independent constructions of the same field disagree."""


@dataclass(frozen=True)
class SymplecticForm:
    """Constant two-form ``omega(u, v) = u^T W v``."""

    matrix: ex.Matrix

    def __post_init__(self):
        if not ex.is_zero(ex.add(self.matrix, ex.transpose(self.matrix))):
            raise ValueError("symplectic matrix must be antisymmetric")
        if not ex.det(self.matrix):
            raise ValueError("symplectic matrix must be nondegenerate")

    def __call__(self, u, v) -> float:
        return float(np.asarray(u, float) @ np.asarray(self.matrix, float) @ np.asarray(v, float))

    def interior(self, field: "LinearVectorField") -> tuple[Polynomial, ...]:
        """Components of the one-form ``i_X omega`` on ``dz_1 .. dz_6``."""
        comps = field.components
        return tuple(
            sum((comps[a].scale(self.matrix[a][b]) for a in range(6) if self.matrix[a][b]),
                PHASE.zero())
            for b in range(6)
        )


#: omega = dq1^dp1 + dq2^dp2 + dq3^dp3; in z-coordinates its matrix is J.
CANONICAL_FORM = SymplecticForm(J)


class LinearVectorField:
    """Linear vector field ``(M z) . d/dz`` on T*R^3 with exact matrix ``M``."""

    __slots__ = ("matrix", "_components")

    def __init__(self, matrix: Sequence[Sequence]):
        m = ex.as_matrix(matrix)
        if len(m) != 6 or any(len(r) != 6 for r in m):
            raise ValueError("a linear field on T*R^3 needs a 6x6 matrix")
        self.matrix = m
        self._components = None

    @classmethod
    def from_components(cls, components: Sequence[Polynomial]) -> "LinearVectorField":
        """Build from six homogeneous-linear component polynomials."""
        if len(components) != 6:
            raise ValueError("expected 6 components")
        rows = []
        for comp in components:
            if comp.space != PHASE:
                raise ValueError("components must live in the phase space")
            if comp.degree() > 1 or (comp.terms and comp.degree() == 0) or comp.constant_term():
                raise ValueError("components of a linear field must be homogeneous of degree 1")
            rows.append([comp.coefficient({n: 1}) for n in COORDS])
        return cls(rows)

    @classmethod
    def zero(cls) -> "LinearVectorField":
        return cls(ex.zeros(6))

    @property
    def components(self) -> tuple[Polynomial, ...]:
        if self._components is None:
            z = PHASE.gens()
            self._components = tuple(
                sum((z[b].scale(self.matrix[a][b]) for b in range(6) if self.matrix[a][b]), PHASE.zero())
                for a in range(6)
            )
        return self._components

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearVectorField) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __add__(self, other: "LinearVectorField") -> "LinearVectorField":
        return LinearVectorField(ex.add(self.matrix, other.matrix))

    def __sub__(self, other: "LinearVectorField") -> "LinearVectorField":
        return LinearVectorField(ex.sub(self.matrix, other.matrix))

    def __neg__(self) -> "LinearVectorField":
        return LinearVectorField(ex.scale(-1, self.matrix))

    def scale(self, c) -> "LinearVectorField":
        return LinearVectorField(ex.scale(c, self.matrix))

    def is_zero(self) -> bool:
        return ex.is_zero(self.matrix)

    def is_hamiltonian(self) -> bool:
        """``M^T J + J M == 0``."""
        m = self.matrix
        return ex.is_zero(ex.add(ex.matmul(ex.transpose(m), J), ex.matmul(J, m)))

    def apply(self, f: Polynomial) -> Polynomial:
        """Directional derivative ``X(f)``."""
        comps = self.components
        return sum((comps[a] * f.partial(COORDS[a]) for a in range(6) if not comps[a].is_zero()),
                   PHASE.zero())

    def at(self, z) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float) @ np.asarray(z, dtype=float)

    def float_matrix(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)

    def to_json(self) -> list[list[str]]:
        return ex.to_strings(self.matrix)

    def to_text(self) -> str:
        parts = []
        for name, comp in zip(COORDS, self.components):
            if not comp.is_zero():
                parts.append(f"({comp.to_text()}) d/d{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"LinearVectorField({self.to_text()})"


def _quadratic_form(h: Polynomial) -> ex.Matrix:
    """Symmetric ``S`` with ``h_2 = z^T S z / 2`` for the quadratic part of ``h``."""
    s = [[Fraction(0)] * 6 for _ in range(6)]
    for mono, c in h.homogeneous_part(2).terms.items():
        idx = [i for i, e in enumerate(mono) for _ in range(e)]
        a, b = idx
        if a == b:
            s[a][a] += 2 * c
        else:
            s[a][b] += c
            s[b][a] += c
    return ex.as_matrix(s)


def hamiltonian_lift(h: Polynomial) -> LinearVectorField:
    """The field ``X`` with ``i_X omega = dh`` for a quadratic ``h``.

    Constant terms are in the kernel and are ignored. Terms of degree 1 or
    above 2 would give a non-linear (affine or polynomial) field and raise
    ``ValueError``.
    """
    if h.space != PHASE:
        raise ValueError("Hamiltonian must live in the phase space")
    if h.degree() > 2:
        raise ValueError(f"degree {h.degree()} Hamiltonian has a nonlinear field")
    if not h.homogeneous_part(1).is_zero():
        raise ValueError("linear terms give an affine field, which is not represented")
    return LinearVectorField(ex.matmul(J, _quadratic_form(h)))


def hamiltonian_of(field: LinearVectorField) -> Polynomial:
    """The constant-free quadratic ``h`` with ``i_X omega = dh``."""
    if not field.is_hamiltonian():
        raise NotHamiltonianError("M^T J + J M != 0")
    s = ex.scale(-1, ex.matmul(J, field.matrix))  # J^{-1} = -J
    z = PHASE.gens()
    h = PHASE.zero()
    for a in range(6):
        for b in range(6):
            if s[a][b]:
                h = h + (z[a] * z[b]).scale(s[a][b] / 2)
    return h


def vf_bracket(x: LinearVectorField, y: LinearVectorField) -> LinearVectorField:
    """Lie bracket computed component-wise: ``[X,Y]^a = X(Y^a) - Y(X^a)``."""
    comps = tuple(x.apply(ya) - y.apply(xa) for xa, ya in zip(x.components, y.components))
    return LinearVectorField.from_components(comps)


def vf_bracket_matrix(x: LinearVectorField, y: LinearVectorField) -> LinearVectorField:
    """Lie bracket through the matrix identity ``M_[X,Y] = -[M_X, M_Y]``."""
    return LinearVectorField(ex.scale(-1, ex.commutator(x.matrix, y.matrix)))


def representation_matrix() -> list[list[tuple[int, GeneratorIndex]]]:
    """The fundamental representation matrix as entries ``(sign, label)``."""
    rows = [
        [(1, 1, 1), (1, 1, 2), (1, 1, 3), (-1, -1, 1), (-1, -1, 2), (-1, -1, 3)],
        [(1, 2, 1), (1, 2, 2), (1, 2, 3), (-1, -1, 2), (-1, -2, 2), (-1, -2, 3)],
        [(1, 3, 1), (1, 3, 2), (1, 3, 3), (-1, -1, 3), (-1, -2, 3), (-1, -3, 3)],
        [(1, 1, -1), (1, 1, -2), (1, 1, -3), (-1, 1, 1), (-1, 2, 1), (-1, 3, 1)],
        [(1, 1, -2), (1, 2, -2), (1, 2, -3), (-1, 1, 2), (-1, 2, 2), (-1, 3, 2)],
        [(1, 1, -3), (1, 2, -3), (1, 3, -3), (-1, 1, 3), (-1, 2, 3), (-1, 3, 3)],
    ]
    out = []
    for row in rows:
        line = []
        for s, i, j in row:
            lab, t = canonical(i, j)
            line.append((s * t, lab))
        out.append(line)
    return out


def _field_from_representation(label: GeneratorIndex) -> LinearVectorField:
    m = [[Fraction(0)] * 6 for _ in range(6)]
    for r, row in enumerate(representation_matrix()):
        for c, (s, lab) in enumerate(row):
            if lab == label:
                m[c][r] += s  # transpose
    return LinearVectorField(m)


def realize_sp6() -> list[tuple[GeneratorIndex, LinearVectorField]]:
    """``[(X_{i,j}, Phi(X_{i,j}))]`` in the order X_1 ... X_21."""
    return [(lab, _field_from_representation(lab)) for lab in SP6_BASIS]


def sp6_hamiltonians() -> list[Polynomial]:
    """``h_1 ... h_21`` obtained from the fields through ``i_X omega = dh``."""
    return [hamiltonian_of(f) for _, f in realize_sp6()]


def _printed(text_rows: Mapping[str, str], scale=Fraction(1)) -> LinearVectorField:
    comps = []
    for name in COORDS:
        txt = text_rows.get(name, "")
        poly = PHASE.zero()
        for tok in txt.split():
            sign = -1 if tok.startswith("-") else 1
            poly = poly + PHASE.var(tok.lstrip("+-")).scale(sign)
        comps.append(poly.scale(scale))
    return LinearVectorField.from_components(comps)


def printed_su3_fields() -> list[LinearVectorField]:
    """Y_1 ... Y_8 transcribed from their coordinate expressions."""
    h = Fraction(1, 2)
    rows = [
        ({"q1": "-q2 +p2", "q2": "q1 +p1", "p1": "q2 -p2", "p2": "q1 +p1"}, h),
        ({"q2": "-q3 +p3", "q3": "q2 +p2", "p2": "q3 -p3", "p3": "q2 +p2"}, h),
        ({"q1": "-q3 +p3", "q3": "q1 +p1", "p1": "q3 -p3", "p3": "q1 +p1"}, h),
        ({"q1": "q2 +p2", "q2": "-q1 +p1", "p1": "q2 +p2", "p2": "q1 -p1"}, h),
        ({"q2": "q3 +p3", "q3": "-q2 +p2", "p2": "q3 +p3", "p3": "q2 -p2"}, h),
        ({"q1": "q3 +p3", "q3": "-q1 +p1", "p1": "q3 +p3", "p3": "q1 -p1"}, h),
        ({"q1": "p1", "q2": "-p2", "p1": "q1", "p2": "-q2"}, 1),
        ({"q2": "p2", "q3": "-p3", "p2": "q2", "p3": "-q3"}, 1),
    ]
    return [_printed(r, s) for r, s in rows]


def field_of_combination(comb: Mapping[GeneratorIndex, Fraction]) -> LinearVectorField:
    """``Phi`` extended linearly to a combination of sp(6,R) labels."""
    fields = dict(realize_sp6())
    out = LinearVectorField.zero()
    for lab, c in comb.items():
        out = out + fields[lab].scale(c)
    return out


def realize_su3() -> list[tuple[str, LinearVectorField]]:
    """``[(name, Y_k)]`` from the embedding, checked against the printed list."""
    emb, _ = build_su3()
    built = [field_of_combination(emb[g]) for g in SU3_NAMES]
    for k, (a, b) in enumerate(zip(built, printed_su3_fields()), start=1):
        if a != b:
            raise TranscriptionMismatch(f"Y_{k}: embedding gives {a.to_text()}, printed {b.to_text()}")
    return list(zip(SU3_NAMES, built))


def su3_hamiltonians() -> list[Polynomial]:
    """``h'_1 ... h'_8``."""
    return [hamiltonian_of(f) for _, f in realize_su3()]


# -- exhaustive reports -------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        return f"{state} {self.name}: {self.checked} checks, {len(self.failures)} failures"


def homomorphism_report(fields: Sequence[LinearVectorField], sc: StructureConstants,
                        name: str = "realization homomorphism") -> CheckReport:
    """Check ``Phi([e_a, e_b]) = [Phi(e_a), Phi(e_b)]`` for every unordered pair."""
    failures = []
    count = 0
    n = len(fields)
    for a in range(n):
        for b in range(a + 1, n):
            count += 1
            lhs = vf_bracket_matrix(fields[a], fields[b])
            rhs = LinearVectorField.zero()
            for c, v in sc.entry(a, b).items():
                rhs = rhs + fields[c].scale(v)
            if lhs != rhs:
                failures.append((a, b))
    return CheckReport(name, count, failures)


def field_closure_report(fields: Sequence[LinearVectorField], name: str = "field closure") -> tuple[CheckReport, StructureConstants]:
    """Decompose every field bracket on the fields themselves.

    Returns the report and the structure constants read off the fields.
    """
    basis = [{(r, c): v for r, row in enumerate(f.matrix) for c, v in enumerate(row) if v} for f in fields]
    table = {}
    failures = []
    count = 0
    n = len(fields)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            br = vf_bracket_matrix(fields[a], fields[b])
            elem = {(r, c): v for r, row in enumerate(br.matrix) for c, v in enumerate(row) if v}
            if a < b:
                count += 1
            try:
                coeffs = decompose(elem, basis)
            except NotInSpanError:
                if a < b:
                    failures.append((a, b))
                continue
            vec = {k: v for k, v in enumerate(coeffs) if v}
            if vec:
                table[(a, b)] = vec
    return CheckReport(name, count, failures), StructureConstants(tuple(range(n)), table)


def kappa_report(fields: Sequence[LinearVectorField], hams: Sequence[Polynomial],
                 name: str = "field/Poisson sign") -> tuple[CheckReport, int | None]:
    """Find ``kappa`` from the first non-commuting pair, then assert it globally.

    ``[X_f, X_g] = kappa * X_{f,g}`` with ``X_f = hamiltonian_lift(f)``.
    """
    kappa = None
    failures = []
    count = 0
    n = len(hams)
    for a in range(n):
        for b in range(a + 1, n):
            count += 1
            lhs = vf_bracket_matrix(hamiltonian_lift(hams[a]), hamiltonian_lift(hams[b]))
            rhs = hamiltonian_lift(poisson(hams[a], hams[b]))
            if rhs.is_zero():
                if not lhs.is_zero():
                    failures.append((a, b))
                continue
            if kappa is None:
                if lhs == rhs:
                    kappa = 1
                elif lhs == -rhs:
                    kappa = -1
                else:
                    failures.append((a, b))
                    continue
            if lhs != rhs.scale(kappa):
                failures.append((a, b))
    return CheckReport(name, count, failures), kappa


def poisson_constants_report(hams: Sequence[Polynomial], sc: StructureConstants,
                             name: str = "Poisson closure") -> tuple[CheckReport, int | None]:
    """Closure of the functions under ``{,}`` with constants ``kappa' * sc``.

    ``kappa'`` is read off the first pair with a nonzero bracket and then
    required for every pair.
    """
    basis = [dict(h.terms) for h in hams]
    kappa = None
    failures = []
    count = 0
    n = len(hams)
    for a in range(n):
        for b in range(a + 1, n):
            count += 1
            br = poisson(hams[a], hams[b])
            try:
                coeffs = decompose(dict(br.terms), basis)
            except NotInSpanError:
                failures.append((a, b))
                continue
            expected = sc.entry(a, b)
            got = {k: v for k, v in enumerate(coeffs) if v}
            if not expected and not got:
                continue
            if kappa is None and expected:
                k0 = next(iter(expected))
                ratio = got.get(k0, Fraction(0)) / expected[k0]
                kappa = int(ratio) if ratio in (1, -1) else None
                if kappa is None:
                    failures.append((a, b))
                    continue
            if kappa is None or got != {k: kappa * v for k, v in expected.items()}:
                failures.append((a, b))
    return CheckReport(name, count, failures), kappa


def lift_report(fields: Sequence[LinearVectorField], hams: Sequence[Polynomial],
                name: str = "inner product condition") -> CheckReport:
    """``i_X omega - dh = 0`` component-wise for paired lists."""
    failures = []
    for k, (f, h) in enumerate(zip(fields, hams)):
        one_form = CANONICAL_FORM.interior(f)
        dh = h.gradient()
        if any(not (a - b).is_zero() for a, b in zip(one_form, dh)):
            failures.append(k)
    return CheckReport(name, len(fields), failures)
