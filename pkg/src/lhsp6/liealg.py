"""Boson-basis labels and structure constants for sp(6,R) and su(3).

Generators of sp(6,R) are labelled ``X_{i,j}`` with ``i, j`` in
``{-3..3} \\ {0}`` subject to ``X_{i,j} = -e_i e_j X_{-j,-i}`` (``e`` = sign).
Exactly 21 labels survive the identification; :func:`canonical` picks the
representative used throughout (the names ``X_{1,1} ... X_{3,-3}`` in the
order of the realization list).

Two tables are produced:

* :func:`boson_constants` applies the four-term commutator formula
  verbatim to the labels.
* :func:`build_sp6` returns the same Lie algebra expressed in the basis the
  vector-field realization actually uses. That basis differs from the
  formula's by a fixed rescaling/exchange of the quadratic generators
  (``X_{-i,j}`` and ``X_{i,-j}`` trade roles and the diagonal ones carry a
  factor 1/2), see :data:`REALIZATION_CHANGE`. Everything downstream
  (realizations, su(3) embedding, Casimirs) uses this table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GeneratorIndex",
    "canonical",
    "SP6_BASIS",
    "StructureConstants",
    "SubalgebraEmbedding",
    "NotInSpanError",
    "JacobiReport",
    "boson_bracket",
    "boson_constants",
    "build_sp6",
    "build_su3",
    "decompose",
    "verify_jacobi",
    "SU3_NAMES",
    "SU3_PRINTED_RELATIONS",
    "printed_su3_constants",
    "table_mismatches",
]

_HALF = Fraction(1, 2)


def _sign(x: int) -> int:
    return 1 if x > 0 else -1


@dataclass(frozen=True, order=True)
class GeneratorIndex:
    """Canonical label ``X_{i,j}``. Build through :func:`canonical` or :meth:`of`."""

    i: int
    j: int

    def __post_init__(self):
        for x in (self.i, self.j):
            if not isinstance(x, int) or x == 0 or abs(x) > 3:
                raise ValueError(f"index must be a non-zero integer in [-3, 3], got {x!r}")
        if _canonical_pair(self.i, self.j)[0] != (self.i, self.j):
            raise ValueError(f"X_{{{self.i},{self.j}}} is not a canonical label")

    @classmethod
    def of(cls, i: int, j: int) -> "GeneratorIndex":
        """Canonical label for ``(i, j)``; raises if it is not already canonical."""
        return cls(i, j)

    def __str__(self) -> str:
        return f"X({self.i},{self.j})"

    @property
    def name(self) -> str:
        return f"X_{self.i}_{self.j}".replace("-", "m")


def _canonical_pair(i: int, j: int) -> tuple[tuple[int, int], int]:
    for x in (i, j):
        if x == 0 or abs(x) > 3:
            raise ValueError(f"index must be a non-zero integer in [-3, 3], got {x!r}")
    partner = (-j, -i)
    sign = -_sign(i) * _sign(j)
    if (i, j) == partner:
        return (i, j), 1
    if i > 0 and j > 0:
        return (i, j), 1
    if i < 0 and j < 0:
        return partner, sign
    # mixed signs: keep the member whose first index is smaller in absolute value
    if abs(i) <= abs(j):
        return (i, j), 1
    return partner, sign


def canonical(i: int, j: int) -> tuple[GeneratorIndex, int]:
    """Return ``(label, s)`` with ``X_{i,j} = s * label``, ``s = +-1``."""
    (a, b), s = _canonical_pair(i, j)
    obj = object.__new__(GeneratorIndex)
    object.__setattr__(obj, "i", a)
    object.__setattr__(obj, "j", b)
    return obj, s


def _basis() -> tuple[GeneratorIndex, ...]:
    gl = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    low = [(-i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i <= j]
    up = [(i, -j) for i in (1, 2, 3) for j in (1, 2, 3) if i <= j]
    return tuple(canonical(i, j)[0] for i, j in gl + low + up)


#: The 21 canonical sp(6,R) labels; position k (0-based) is the field X_{k+1}.
SP6_BASIS: tuple[GeneratorIndex, ...] = _basis()

Vector = dict  # sparse combination label -> Fraction


def _clean(v: Mapping) -> dict:
    return {k: Fraction(c) for k, c in v.items() if c}


def _axpy(acc: dict, coef, v: Mapping) -> None:
    for k, c in v.items():
        s = acc.get(k, 0) + coef * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def boson_bracket(a: GeneratorIndex, b: GeneratorIndex) -> dict:
    """``[X_{i,j}, X_{k,l}]`` from the four-term formula, canonicalized."""
    i, j, k, l = a.i, a.j, b.i, b.j
    e = _sign(i) * _sign(j)
    contributions = [
        (int(j == k), (i, l)),
        (-int(i == l), (k, j)),
        (e * int(j == -l), (k, -i)),
        (-e * int(i == -k), (-j, l)),
    ]
    out: dict = {}
    for c, (x, y) in contributions:
        if c:
            lab, s = canonical(x, y)
            _axpy(out, Fraction(c * s), {lab: 1})
    return out


@dataclass(frozen=True)
class StructureConstants:
    """Bracket table ``[e_a, e_b] = sum_c c_ab^c e_c`` with exact entries."""

    labels: tuple
    table: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)

    def entry(self, a: int, b: int) -> dict:
        return dict(self.table.get((a, b), {}))

    def bracket_labels(self, x, y) -> dict:
        """Bracket of two basis labels as a sparse label vector."""
        a, b = self.index(x), self.index(y)
        return {self.labels[c]: v for c, v in self.table.get((a, b), {}).items()}

    def bracket(self, u: Mapping, v: Mapping) -> dict:
        """Bracket of sparse label combinations."""
        out: dict = {}
        idx = {lab: n for n, lab in enumerate(self.labels)}
        for x, cx in u.items():
            for y, cy in v.items():
                row = self.table.get((idx[x], idx[y]))
                if row:
                    _axpy(out, cx * cy, {self.labels[c]: w for c, w in row.items()})
        return out

    def corrupted(self, a: int, b: int, new_entry: Mapping[int, Fraction]) -> "StructureConstants":
        """Copy with ``[e_a, e_b]`` overwritten (fault injection for tests)."""
        table = {k: dict(v) for k, v in self.table.items()}
        table[(a, b)] = _clean(new_entry)
        return StructureConstants(self.labels, table)

    def to_json(self) -> dict:
        """``{"labels": [...], "constants": [[a, b, c, "num/den"], ...]}``."""
        rows = []
        for (a, b), vec in sorted(self.table.items()):
            for c, v in sorted(vec.items()):
                rows.append([a, b, c, f"{v.numerator}/{v.denominator}"])
        return {"labels": [str(l) for l in self.labels], "constants": rows}

    @classmethod
    def from_brackets(cls, labels: Sequence, bracket) -> "StructureConstants":
        idx = {lab: n for n, lab in enumerate(labels)}
        table = {}
        for a, x in enumerate(labels):
            for b, y in enumerate(labels):
                vec = bracket(x, y)
                if vec:
                    table[(a, b)] = {idx[k]: Fraction(v) for k, v in vec.items()}
        return cls(tuple(labels), table)


class NotInSpanError(ValueError):
    """An element is not a linear combination of the given basis."""


def decompose(element: Mapping, basis: Sequence[Mapping]) -> list[Fraction]:
    """Exact coefficients ``x`` with ``element = sum_k x_k basis[k]``.

    Vectors are sparse mappings from symbols to rationals. Raises
    :class:`NotInSpanError` when no such combination exists and ``ValueError``
    when the basis is linearly dependent.
    """
    basis = [_clean(b) for b in basis]
    element = _clean(element)
    symbols = []
    seen = set()
    for vec in basis + [element]:
        for k in vec:
            if k not in seen:
                seen.add(k)
                symbols.append(k)
    n = len(basis)
    # augmented rows: one per symbol
    rows = [[b.get(s, Fraction(0)) for b in basis] + [element.get(s, Fraction(0))] for s in symbols]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if piv is None:
            raise ValueError("basis is linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    for k in range(r, len(rows)):
        if rows[k][n]:
            raise NotInSpanError(f"component on {symbols[k]!r} cannot be reproduced by the basis")
    return [rows[k][n] for k in range(n)]


@dataclass
class JacobiReport:
    dim: int
    antisymmetry_violations: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.antisymmetry_violations

    def __str__(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        return (f"{state}: dim={self.dim}, antisymmetry violations={len(self.antisymmetry_violations)}, "
                f"Jacobi violations={len(self.violations)}")


def verify_jacobi(sc: StructureConstants) -> JacobiReport:
    """Exhaustive exact antisymmetry and Jacobi check.

    Each violation is ``(a, b, c, d, value)``: the ``d`` component of the
    Jacobiator of basis elements ``a, b, c`` is ``value != 0``.
    """
    n = sc.dim
    t = sc.table
    report = JacobiReport(n)
    for a in range(n):
        for b in range(a, n):
            ab, ba = t.get((a, b), {}), t.get((b, a), {})
            for c in set(ab) | set(ba):
                if ab.get(c, 0) + ba.get(c, 0):
                    report.antisymmetry_violations.append((a, b, c))

    def br(u: Mapping[int, Fraction], b: int) -> dict:
        out: dict = {}
        for e, ce in u.items():
            row = t.get((e, b))
            if row:
                _axpy(out, ce, row)
        return out

    for a, b, c in itertools.combinations(range(n), 3):
        total: dict = {}
        _axpy(total, 1, br(t.get((a, b), {}), c))
        _axpy(total, 1, br(t.get((b, c), {}), a))
        _axpy(total, 1, br(t.get((c, a), {}), b))
        for d, v in sorted(total.items()):
            report.violations.append((a, b, c, d, v))
    return report


def boson_constants() -> StructureConstants:
    """Structure constants generated verbatim from the four-term formula."""
    return StructureConstants.from_brackets(SP6_BASIS, boson_bracket)


def _realization_change() -> dict:
    # realization generator -> combination of formula generators
    change = {}
    for lab in SP6_BASIS:
        i, j = lab.i, lab.j
        if i > 0 and j > 0:
            change[lab] = {lab: Fraction(1)}
            continue
        a, b = abs(i), abs(j)
        s = _HALF if a == b else Fraction(1)
        if i < 0:
            change[lab] = {canonical(a, -b)[0]: -s}
        else:
            change[lab] = {canonical(-a, b)[0]: s}
    return change


#: Realization basis element -> combination of formula-basis elements.
#: X_{-i,j} |-> -s X_{i,-j},  X_{i,-j} |-> s X_{-i,j},  s = 1/2 if i == j else 1.
REALIZATION_CHANGE: dict = _realization_change()


def _invert_monomial_change(change: Mapping) -> dict:
    inv = {}
    for new, comb in change.items():
        ((old, c),) = comb.items()
        inv[old] = {new: 1 / c}
    return inv


def transported_constants(sc: StructureConstants, change: Mapping) -> StructureConstants:
    """Structure constants of ``sc`` in the basis ``new_a = sum change[a][x] old_x``."""
    inverse = _invert_monomial_change(change)

    def bracket(x, y):
        old = sc.bracket(change[x], change[y])
        out: dict = {}
        for lab, c in old.items():
            _axpy(out, c, inverse[lab])
        return out

    return StructureConstants.from_brackets(tuple(change), bracket)


def build_sp6() -> tuple[tuple[GeneratorIndex, ...], StructureConstants]:
    """The 21 canonical generators and the bracket table used by the realization."""
    return SP6_BASIS, transported_constants(boson_constants(), REALIZATION_CHANGE)


SU3_NAMES = ("E1+", "E2+", "E3+", "E1-", "E2-", "E3-", "H1", "H2")


@dataclass(frozen=True)
class SubalgebraEmbedding:
    """Named generators as exact combinations of sp(6,R) labels."""

    name: str
    generators: tuple[str, ...]
    coefficients: Mapping[str, Mapping[GeneratorIndex, Fraction]]

    def __getitem__(self, gen: str) -> dict:
        return dict(self.coefficients[gen])

    def as_basis(self) -> list[dict]:
        return [dict(self.coefficients[g]) for g in self.generators]


def _x(i: int, j: int) -> GeneratorIndex:
    lab, s = canonical(i, j)
    if s != 1:
        raise ValueError("use canonical labels in literal combinations")
    return lab


def su3_simple_roots() -> dict:
    """E1+-, E2+- as printed (all coefficients +-1/2)."""
    h = _HALF
    return {
        "E1+": {_x(1, 2): h, _x(2, 1): -h, _x(-1, 2): -h, _x(1, -2): h},
        "E2+": {_x(2, 3): h, _x(3, 2): -h, _x(-2, 3): -h, _x(2, -3): h},
        "E1-": {_x(1, 2): -h, _x(2, 1): h, _x(-1, 2): -h, _x(1, -2): h},
        "E2-": {_x(2, 3): -h, _x(3, 2): h, _x(-2, 3): -h, _x(2, -3): h},
    }


def build_su3(sp6: StructureConstants | None = None) -> tuple[SubalgebraEmbedding, StructureConstants]:
    """su(3) inside sp(6,R).

    The simple root vectors are taken as printed; ``H1 = [E1+, E1-]``,
    ``H2 = [E2+, E2-]``, ``E3+ = [E1+, E2+]`` and ``E3- = -[E1-, E2-]`` are
    computed through the sp(6,R) table. The su(3) structure constants are
    then read off by decomposing every bracket back onto the 8 generators.
    """
    if sp6 is None:
        sp6 = build_sp6()[1]
    gens = su3_simple_roots()
    gens["H1"] = sp6.bracket(gens["E1+"], gens["E1-"])
    gens["H2"] = sp6.bracket(gens["E2+"], gens["E2-"])
    gens["E3+"] = sp6.bracket(gens["E1+"], gens["E2+"])
    gens["E3-"] = {k: -v for k, v in sp6.bracket(gens["E1-"], gens["E2-"]).items()}
    emb = SubalgebraEmbedding("su3", SU3_NAMES, {g: gens[g] for g in SU3_NAMES})
    basis = emb.as_basis()

    def bracket(x, y):
        coeffs = decompose(sp6.bracket(emb[x], emb[y]), basis)
        return {n: c for n, c in zip(SU3_NAMES, coeffs) if c}

    return emb, StructureConstants.from_brackets(SU3_NAMES, bracket)


#: Nonvanishing su(3) commutators as displayed, one representative per pair.
SU3_PRINTED_RELATIONS = {
    ("E1+", "E2+"): {"E3+": 1},
    ("E1+", "E1-"): {"H1": 1},
    ("E1+", "E3-"): {"E2-": -1},
    ("E1+", "H1"): {"E1+": -2},
    ("E1+", "H2"): {"E1+": 1},
    ("E2+", "E2-"): {"H2": 1},
    ("E2+", "E3-"): {"E1-": 1},
    ("E2+", "H1"): {"E2+": 1},
    ("E2+", "H2"): {"E2+": -2},
    ("E3+", "E1-"): {"E2+": -1},
    ("E3+", "E2-"): {"E1+": 1},
    ("E3+", "E3-"): {"H1": 1, "H2": 1},
    ("E3+", "H1"): {"E3+": -1},
    ("E3+", "H2"): {"E3+": -1},
    ("E1-", "E2-"): {"E3-": -1},
    ("E1-", "H1"): {"E1-": 2},
    ("E1-", "H2"): {"E1-": -1},
    ("E2-", "H1"): {"E2-": -1},
    ("E2-", "H2"): {"E2-": 2},
    ("E3-", "H1"): {"E3-": 1},
    ("E3-", "H2"): {"E3-": 1},
}


def printed_su3_constants() -> StructureConstants:
    """The displayed su(3) relations completed by antisymmetry."""

    def bracket(x, y):
        if (x, y) in SU3_PRINTED_RELATIONS:
            return SU3_PRINTED_RELATIONS[(x, y)]
        return {k: -v for k, v in SU3_PRINTED_RELATIONS.get((y, x), {}).items()}

    return StructureConstants.from_brackets(SU3_NAMES, bracket)


def table_mismatches(a: StructureConstants, b: StructureConstants) -> list[tuple[int, int]]:
    """Unordered index pairs on which two tables of equal dimension differ."""
    if a.dim != b.dim:
        raise ValueError("tables have different dimensions")
    return [(i, j) for i, j in itertools.combinations(range(a.dim), 2) if a.entry(i, j) != b.entry(i, j)]


def closure_report(sc: StructureConstants, elements: Sequence[Mapping], bracket) -> list:
    """Pairs ``(a, b)`` whose bracket under ``bracket`` leaves the span of ``elements``."""
    failures = []
    for a, b in itertools.combinations(range(len(elements)), 2):
        try:
            decompose(bracket(elements[a], elements[b]), elements)
        except NotInSpanError:
            failures.append((a, b))
    return failures
