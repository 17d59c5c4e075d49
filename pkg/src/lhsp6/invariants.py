"""Casimir invariants, diagonal prolongations and the F^(k) constants of motion.

The Casimirs are read off the characteristic polynomial of the parametric
6x6 matrix of the fundamental representation, written in 21 commuting
generator symbols. For the coefficients to be invariant, the matrix has to
be the moment-map matrix: the six symmetric diagonal entries
``X_{-i,i}`` and ``X_{i,-i}`` enter with weight 2 (see
:func:`parametric_matrix`). With this normalization

    det(A - lambda I) = lambda^6 - C2 lambda^4 + C4 lambda^2 - C6

and ``C2`` is the quadratic Casimir in its commutative (symmetric-algebra)
reading.

Substituting ``h_i -> h_i^(k) = sum_l h_i(copy l)`` into ``C2`` gives the
constants of motion ``F^(k)`` of the k-fold diagonal prolongation; one has
``F^(k) = -sum_{l<m} Omega(z_l, z_m)^2`` with the symplectic pairing
:func:`omega`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .liealg import SP6_BASIS, GeneratorIndex, canonical
from .polyring import Polynomial, VariableSpace, prolonged_space
from .realization import LinearVectorField, realize_sp6, sp6_hamiltonians

__all__ = [
    "CasimirSet",
    "ProlongedPoint",
    "ProlongedField",
    "SYMBOLS",
    "H_SYMBOLS",
    "parametric_matrix",
    "charpoly",
    "casimir_charpoly",
    "c2_in_h",
    "c2_x_form",
    "casimir_in_h",
    "prolonged_hamiltonians",
    "F_sym",
    "F",
    "F_from_pairings",
    "omega",
    "F2_pair",
    "permute",
    "prolong_field",
    "minimal_prolongation",
]


def _symbol(lab: GeneratorIndex) -> str:
    return lab.name


#: One commuting symbol per canonical sp(6,R) label, in basis order.
SYMBOLS = VariableSpace([_symbol(l) for l in SP6_BASIS])
#: Symbols h1 .. h21 standing for the Hamiltonian functions.
H_SYMBOLS = VariableSpace([f"h{k}" for k in range(1, 22)])
_LAMBDA_SPACE = VariableSpace(list(SYMBOLS.names) + ["lam"])


def _entries(doubled: bool) -> list[list[Polynomial]]:
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
            w = 2 if doubled and lab.i == -lab.j else 1
            line.append(SYMBOLS.var(_symbol(lab)).scale(s * t * w))
        out.append(line)
    return out


def parametric_matrix(doubled: bool = True) -> list[list[Polynomial]]:
    """The 6x6 representation matrix in the 21 generator symbols.

    ``doubled=False`` gives the matrix exactly as it is usually displayed,
    with every symbol entering with unit weight. That matrix represents the
    Lie algebra correctly as a linear map, but its characteristic
    coefficients are not invariant. ``doubled=True`` (default) weights the
    six self-paired symbols ``X_{-i,i}``, ``X_{i,-i}`` by 2, which turns the
    matrix into the moment map ``z (J z)^T`` once ``X_a -> h_a``.
    """
    return _entries(doubled)


def _det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    # Laplace expansion along rows with memoization on the remaining columns
    n = len(matrix)
    space = matrix[0][0].space

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> Polynomial:
        if row == n:
            return space.const(1)
        acc = space.zero()
        ordered = sorted(cols)
        for pos, c in enumerate(ordered):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            term = entry * minor(row + 1, cols - {c})
            acc = acc + term if pos % 2 == 0 else acc - term
        return acc

    return minor(0, frozenset(range(n)))


def charpoly(doubled: bool = True) -> list[Polynomial]:
    """Coefficients ``[c0, c1, ..., c6]`` of ``det(A - lam I) = sum c_k lam^k``."""
    entries = parametric_matrix(doubled)
    lam = _LAMBDA_SPACE.var("lam")
    shifted = [
        [entries[r][c].embed(_LAMBDA_SPACE) - (lam if r == c else 0) for c in range(6)]
        for r in range(6)
    ]
    d = _det(shifted)
    k = _LAMBDA_SPACE.index("lam")
    buckets: dict[int, dict] = {e: {} for e in range(7)}
    for mono, c in d.terms.items():
        buckets[mono[k]][mono[:k] + mono[k + 1:]] = c
    return [Polynomial(SYMBOLS, buckets[e]) for e in range(7)]


@dataclass(frozen=True)
class CasimirSet:
    """``det(A - lam I) = lam^6 - C2 lam^4 + C4 lam^2 - C6`` over the 21 symbols."""

    C2: Polynomial
    C4: Polynomial
    C6: Polynomial
    odd: tuple[Polynomial, ...]

    def order(self, n: int) -> Polynomial:
        return {2: self.C2, 4: self.C4, 6: self.C6}[n]


@lru_cache(maxsize=2)
def casimir_charpoly(doubled: bool = True) -> CasimirSet:
    """Expand the characteristic polynomial and collect the Casimirs."""
    c = charpoly(doubled)
    if c[6] != 1:
        raise ArithmeticError("leading coefficient must be 1")
    return CasimirSet(C2=-c[4], C4=c[2], C6=-c[0], odd=(c[1], c[3], c[5]))


def c2_in_h() -> Polynomial:
    """Quadratic Casimir in the Hamiltonian symbols h1 .. h21."""
    h = H_SYMBOLS.gens()

    def H(k):
        return h[k - 1]

    return (
        H(1) ** 2 + H(5) ** 2 + H(9) ** 2
        + 2 * H(2) * H(4) + 2 * H(3) * H(7) + 2 * H(6) * H(8)
        - 2 * H(11) * H(17) - 2 * H(12) * H(18) - 2 * H(14) * H(20)
        - 4 * H(10) * H(16) - 4 * H(13) * H(19) - 4 * H(15) * H(21)
    )


def c2_x_form(literal: bool = False) -> Polynomial:
    """Quadratic Casimir written in the generator symbols (commutative image).

    Each symmetrized product ``X_a X_b + X_b X_a`` becomes ``2 X_a X_b``.
    The displayed symmetric form ends with ``-2 X_{-3,3} X_{3,-3} -
    X_{3,-3} X_{-3,3}``, so its commutative image carries ``-3`` on that
    monomial, while the other two self-paired products total ``-4``.
    ``literal=True`` returns that reading; the default uses ``-4`` for all
    three, which is what the characteristic polynomial produces and what
    the Hamiltonian form :func:`c2_in_h` encodes.
    """
    x = {lab: SYMBOLS.var(_symbol(lab)) for lab in SP6_BASIS}

    def X(i, j):
        return x[canonical(i, j)[0]]

    poly = X(1, 1) ** 2 + X(2, 2) ** 2 + X(3, 3) ** 2
    poly = poly + 2 * X(1, 2) * X(2, 1) + 2 * X(1, 3) * X(3, 1) + 2 * X(2, 3) * X(3, 2)
    poly = poly - 2 * X(-1, 2) * X(1, -2) - 2 * X(-1, 3) * X(1, -3) - 2 * X(-2, 3) * X(2, -3)
    poly = poly - 4 * X(-1, 1) * X(1, -1) - 4 * X(-2, 2) * X(2, -2)
    return poly - (3 if literal else 4) * X(-3, 3) * X(3, -3)


def to_h_symbols(p: Polynomial) -> Polynomial:
    """Rename generator symbols ``X_a`` to ``h_a`` (basis position)."""
    return p.rename({x: h for x, h in zip(SYMBOLS.names, H_SYMBOLS.names)}, H_SYMBOLS)


def casimir_in_h(order: int) -> Polynomial:
    """``C2``, ``C4`` or ``C6`` from the characteristic polynomial, in h-symbols."""
    return to_h_symbols(casimir_charpoly().order(order))


@lru_cache(maxsize=None)
def prolonged_hamiltonians(k: int) -> tuple[Polynomial, ...]:
    """``h_i^(k)`` as polynomials on ``k`` copies of T*R^3."""
    space = prolonged_space(k)
    base = sp6_hamiltonians()
    out = []
    for h in base:
        total = space.zero()
        for l in range(1, k + 1):
            total = total + h.rename({n: f"{n}_{l}" for n in h.space.names}, space)
        out.append(total)
    return tuple(out)


def compose_with_h(poly_in_h: Polynomial, k: int) -> Polynomial:
    hk = prolonged_hamiltonians(k)
    return poly_in_h.substitute(dict(zip(H_SYMBOLS.names, hk)), prolonged_space(k))


@lru_cache(maxsize=None)
def F_sym(k: int) -> Polynomial:
    """``F^(k) = C2(h_1^(k), ..., h_21^(k))`` over ``prolonged_space(k)``."""
    if k < 1:
        raise ValueError("copy count must be >= 1")
    return compose_with_h(c2_in_h(), k)


@dataclass(frozen=True)
class ProlongedPoint:
    """``k`` phase points, stored as a ``(k, 6)`` array."""

    copies: np.ndarray

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.copies, dtype=float))
        if arr.ndim != 2 or arr.shape[1] != 6 or arr.shape[0] < 1:
            raise ValueError("expected k >= 1 copies of 6 coordinates")
        object.__setattr__(self, "copies", arr)

    @property
    def k(self) -> int:
        return self.copies.shape[0]

    def flat(self) -> np.ndarray:
        return self.copies.reshape(-1)


def _h_values(copies: np.ndarray) -> np.ndarray:
    q, p = copies[:, :3], copies[:, 3:]
    vals = []
    for h in sp6_hamiltonians():
        vals.append(h.vectorized()(copies).sum())
    return np.array(vals)


def F(k: int, point) -> float:
    """Numerical ``F^(k)``: evaluate ``C2`` on the summed Hamiltonian values."""
    pt = point if isinstance(point, ProlongedPoint) else ProlongedPoint(point)
    if pt.k != k:
        raise ValueError(f"point has {pt.k} copies, expected {k}")
    values = _h_values(pt.copies)
    return c2_in_h().evaluate(values)


def F_from_pairings(states) -> np.ndarray:
    """``F^(k) = -sum_{l<m} Omega(z_l, z_m)^2`` for states of shape ``(..., k, 6)``.

    ``C2`` is quadratic and ``F^(1) = 0``, so ``F^(k)`` splits into the
    two-copy terms; this form is exact for ``k = 1`` and cheaper than
    evaluating ``C2`` on the summed Hamiltonian values.
    """
    om = omega_matrix(states)
    k = om.shape[-1]
    iu = np.triu_indices(k, 1)
    return -np.sum(om[..., iu[0], iu[1]] ** 2, axis=-1)


def omega(x, y) -> float:
    """``Omega(x, y) = sum_i (p_i(y) q_i(x) - p_i(x) q_i(y)) = x^T J y``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(x[:3] @ y[3:] - x[3:] @ y[:3])


def omega_matrix(states: np.ndarray) -> np.ndarray:
    """All pairings ``Omega(z_a, z_b)`` for rows of ``states`` (shape ``(..., n, 6)``)."""
    s = np.asarray(states, dtype=float)
    q, p = s[..., :3], s[..., 3:]
    return q @ np.swapaxes(p, -1, -2) - p @ np.swapaxes(q, -1, -2)


def F2_pair(x, y) -> float:
    """``-Omega(x, y)^2``."""
    return -omega(x, y) ** 2


def _copy_of(name: str) -> int:
    return int(name.rsplit("_", 1)[1])


def permute(f: Polynomial, i: int, j: int) -> Polynomial:
    """Exchange copies ``i`` and ``j`` (1-based) of a prolonged polynomial."""
    names = f.space.names
    k = max(_copy_of(n) for n in names)
    if i == j or not (1 <= i <= k and 1 <= j <= k):
        raise ValueError(f"invalid copy pair ({i}, {j}) for {k} copies")
    mapping = {}
    for n in names:
        base, c = n.rsplit("_", 1)
        c = int(c)
        if c == i:
            mapping[n] = f"{base}_{j}"
        elif c == j:
            mapping[n] = f"{base}_{i}"
    return f.rename(mapping, f.space)


def lift_copies(f: Polynomial, k: int) -> Polynomial:
    """View a polynomial on fewer copies as one on ``k`` copies."""
    return f.embed(prolonged_space(k))


class ProlongedField:
    """Diagonal prolongation of a linear field to ``k`` copies."""

    def __init__(self, field: LinearVectorField, k: int):
        if k < 1:
            raise ValueError("copy count must be >= 1")
        self.field = field
        self.k = k
        self.space = prolonged_space(k)

    @property
    def matrix(self) -> np.ndarray:
        return np.kron(np.eye(self.k), self.field.float_matrix())

    def exact_matrix(self) -> list[list[Fraction]]:
        n = 6 * self.k
        m = [[Fraction(0)] * n for _ in range(n)]
        for l in range(self.k):
            for a in range(6):
                for b in range(6):
                    m[6 * l + a][6 * l + b] = self.field.matrix[a][b]
        return m

    def components(self) -> list[Polynomial]:
        comps = []
        for l in range(1, self.k + 1):
            ren = {n: f"{n}_{l}" for n in self.field.components[0].space.names}
            comps += [c.rename(ren, self.space) for c in self.field.components]
        return comps

    def apply(self, f: Polynomial) -> Polynomial:
        """Lie derivative of ``f`` along the prolonged field."""
        if f.space != self.space:
            f = f.embed(self.space)
        out = self.space.zero()
        for name, comp in zip(self.space.names, self.components()):
            if not comp.is_zero():
                out = out + comp * f.partial(name)
        return out

    def at(self, flat) -> np.ndarray:
        z = np.asarray(flat, dtype=float).reshape(self.k, 6)
        return (z @ self.field.float_matrix().T).reshape(-1)

    def is_zero(self) -> bool:
        return self.field.is_zero()


def prolong_field(field: LinearVectorField, k: int) -> ProlongedField:
    return ProlongedField(field, k)


def _exact_rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def prolonged_rank(k: int, seed: int = 0, fields: Sequence[LinearVectorField] | None = None) -> int:
    """Exact rank of the k-fold prolonged fields at a random integer point."""
    rng = random.Random(seed)
    fields = fields if fields is not None else [f for _, f in realize_sp6()]
    z = [[Fraction(rng.randint(-9, 9)) for _ in range(6)] for _ in range(k)]
    rows = []
    for f in fields:
        row = []
        for l in range(k):
            for a in range(6):
                row.append(sum((f.matrix[a][b] * z[l][b] for b in range(6)), Fraction(0)))
        rows.append(row)
    return _exact_rank(rows)


def minimal_prolongation(seed: int = 0, fields: Sequence[LinearVectorField] | None = None) -> int:
    """Smallest ``s`` with the prolonged fields independent at a generic point."""
    fields = fields if fields is not None else [f for _, f in realize_sp6()]
    for s in itertools.count(1):
        if prolonged_rank(s, seed, fields) == len(fields):
            return s
        if s > len(fields):
            raise ArithmeticError("fields are dependent at every prolongation order")
