"""Exact sparse multivariate polynomials over the rationals.

A :class:`Polynomial` lives in a :class:`VariableSpace`, an ordered list
of variable names with an optional declaration of conjugate (q, p) pairs.
The pairing is what the canonical Poisson bracket :func:`poisson` uses.

Polynomials are immutable. Terms are stored as ``exponent tuple ->
Fraction`` with zero coefficients never stored, so two polynomials are
equal exactly when their term dictionaries are equal.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "VariableSpace",
    "Polynomial",
    "SpaceMismatchError",
    "poisson",
    "phase_space",
    "prolonged_space",
    "parse_polynomial",
]


class SpaceMismatchError(ValueError):
    """Raised when polynomials from different variable spaces are combined."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("boolean is not a polynomial coefficient")
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class VariableSpace:
    """Ordered variable names, optionally paired into canonical coordinates.

    Parameters
    ----------
    names : sequence of str
        Unique variable identifiers.
    pairing : sequence of (int, int), optional
        ``(position of q, position of p)`` for every conjugate pair. When
        given, it must cover every variable exactly once.
    """

    __slots__ = ("names", "pairing", "_index", "_hash")

    def __init__(self, names: Sequence[str], pairing: Sequence[tuple[int, int]] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        index = {n: i for i, n in enumerate(names)}
        if pairing is not None:
            pairing = tuple((int(a), int(b)) for a, b in pairing)
            used = [i for pair in pairing for i in pair]
            if len(set(used)) != len(used):
                raise ValueError("pairing indices must be disjoint")
            if any(not 0 <= i < len(names) for i in used):
                raise ValueError("pairing index out of range")
            if sorted(used) != list(range(len(names))):
                raise ValueError("pairing must cover every variable exactly once")
        self.names = names
        self.pairing = pairing
        self._index = index
        self._hash = hash((names, pairing))

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, VariableSpace)
            and self.names == other.names
            and self.pairing == other.pairing
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VariableSpace({list(self.names)!r})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def const(self, c) -> "Polynomial":
        c = _as_fraction(c)
        return Polynomial(self, {(0,) * self.arity: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.arity
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def vars(self, *names: str) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in names)

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)


def phase_space() -> VariableSpace:
    """The space (q1, q2, q3, p1, p2, p3) of T*R^3 with its canonical pairing."""
    return _PHASE


def prolonged_space(k: int) -> VariableSpace:
    """Space of ``k`` copies of T*R^3; copy ``l`` uses ``q1_l, ..., p3_l``.

    Variables are grouped copy by copy, each block ordered (q1, q2, q3, p1, p2, p3).
    """
    if k < 1:
        raise ValueError("copy count must be >= 1")
    names = []
    pairing = []
    for l in range(1, k + 1):
        base = len(names)
        names += [f"{c}{i}_{l}" for c in "qp" for i in (1, 2, 3)]
        pairing += [(base + i, base + 3 + i) for i in range(3)]
    return VariableSpace(names, pairing)


class Polynomial:
    """Immutable exact polynomial in a :class:`VariableSpace`."""

    __slots__ = ("space", "_terms", "_hash")

    def __init__(self, space: VariableSpace, terms: Mapping[tuple[int, ...], object] | None = None):
        self.space = space
        clean: dict[tuple[int, ...], Fraction] = {}
        n = space.arity
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError("monomial length does not match the variable space")
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent")
            c = _as_fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, space: VariableSpace, terms: dict) -> "Polynomial":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj.space = space
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return -math.inf
        return max(sum(m) for m in self._terms)

    def coefficient(self, monomial) -> Fraction:
        """Coefficient of a monomial given as exponent tuple or ``{name: exp}``."""
        if isinstance(monomial, Mapping):
            exps = [0] * self.space.arity
            for name, e in monomial.items():
                exps[self.space.index(name)] = e
            monomial = tuple(exps)
        return self._terms.get(tuple(monomial), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def variables(self) -> tuple[str, ...]:
        """Names of the variables that actually occur."""
        used = [False] * self.space.arity
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.space.names, used) if u)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.space.arity, Fraction(0))

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.space, {m: c for m, c in self._terms.items() if sum(m) == d})

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.space != self.space:
                raise SpaceMismatchError("polynomials live in different variable spaces")
            return other
        return self.space.const(other)

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.space, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.space, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return self.space.zero()
        return Polynomial._raw(self.space, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        get = out.get
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = get(m, 0) + ca * cb
        return Polynomial._raw(self.space, {m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> "Polynomial":
        return self.__mul__(other)

    def __truediv__(self, other) -> "Polynomial":
        return self.scale(1 / _as_fraction(other))

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = self.space.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.space == other.space and self._terms == other._terms
        try:
            return self._terms == self.space.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._terms.items())))
        return self._hash

    # -- calculus -----------------------------------------------------------

    def partial(self, var: str) -> "Polynomial":
        """Formal partial derivative with respect to ``var``."""
        i = self.space.index(var)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.space, out)

    def gradient(self) -> tuple["Polynomial", ...]:
        return tuple(self.partial(n) for n in self.space.names)

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point) -> float:
        """Floating-point value at ``point``.

        ``point`` is either a mapping ``name -> value`` covering every variable
        that occurs in the polynomial, or a sequence of values in space order.
        """
        if isinstance(point, Mapping):
            values = {}
            for name in self.variables():
                if name not in point:
                    raise KeyError(f"no value assigned to {name!r}")
                values[self.space.index(name)] = float(point[name])
        else:
            seq = [float(x) for x in point]
            if len(seq) != self.space.arity:
                raise ValueError("point length does not match the variable space")
            values = dict(enumerate(seq))
        total = 0.0
        for m, c in self._terms.items():
            t = float(c)
            for i, e in enumerate(m):
                if e:
                    t *= values[i] ** e
            total += t
        return total

    def evaluate_exact(self, point: Mapping[str, object]) -> Fraction:
        """Exact rational value for a rational assignment."""
        total = Fraction(0)
        idx = self.space.index
        exact = {idx(n): _as_fraction(v) for n, v in point.items()}
        for m, c in self._terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    if i not in exact:
                        raise KeyError(f"no value assigned to {self.space.names[i]!r}")
                    t *= exact[i] ** e
            total += t
        return total

    def vectorized(self):
        """Return ``f(points)`` evaluating on an ``(n, arity)`` float array."""
        if not self._terms:
            return lambda pts: np.zeros(np.asarray(pts).shape[0])
        exps = np.array(list(self._terms.keys()), dtype=float)
        coefs = np.array([float(c) for c in self._terms.values()])

        def f(points):
            pts = np.atleast_2d(np.asarray(points, dtype=float))
            return np.prod(pts[:, None, :] ** exps[None, :, :], axis=2) @ coefs

        return f

    def substitute(self, assignment: Mapping[str, "Polynomial"], target: VariableSpace | None = None) -> "Polynomial":
        """Compose: replace variables by polynomials of a target space.

        Variables not named in ``assignment`` are carried over by name and
        must then exist in ``target``.
        """
        if target is None:
            values = list(assignment.values())
            target = values[0].space if values else self.space
        images = []
        for name in self.space.names:
            if name in assignment:
                img = assignment[name]
                if img.space != target:
                    raise SpaceMismatchError(f"image of {name!r} is not in the target space")
            else:
                img = target.var(name)
            images.append(img)
        powers: list[dict[int, Polynomial]] = [{0: target.const(1), 1: img} for img in images]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        acc: dict[tuple[int, ...], Fraction] = {}
        for m, c in self._terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for tm, tc in term._terms.items():
                acc[tm] = acc.get(tm, 0) + tc
        return Polynomial._raw(target, {m: c for m, c in acc.items() if c})

    def rename(self, mapping: Mapping[str, str], target: VariableSpace) -> "Polynomial":
        """Move to ``target`` by renaming variables (identity for unmapped names)."""
        pos = [target.index(mapping.get(n, n)) for n in self.space.names]
        out = {}
        for m, c in self._terms.items():
            e = [0] * target.arity
            for i, x in enumerate(m):
                if x:
                    e[pos[i]] += x
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return Polynomial._raw(target, {m: c for m, c in out.items() if c})

    def embed(self, target: VariableSpace) -> "Polynomial":
        """Move into a larger space containing every variable by name."""
        return self.rename({}, target)

    # -- text ---------------------------------------------------------------

    def to_text(self) -> str:
        """Serialize as ``coef * var^e ... + ...`` in descending grlex order."""
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            coef = f"{c.numerator}" if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.space.names, m)
                if e
            ]
            parts.append(coef if not factors else f"{coef} * " + " ".join(factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


_TERM_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*(?:\*\s*(.+?))?\s*$")


def parse_polynomial(text: str, space: VariableSpace) -> Polynomial:
    """Inverse of :meth:`Polynomial.to_text`."""
    text = text.strip()
    if text == "0":
        return space.zero()
    out: dict[tuple[int, ...], Fraction] = {}
    for chunk in text.split(" + "):
        match = _TERM_RE.match(chunk)
        if not match:
            raise ValueError(f"cannot parse term {chunk!r}")
        coef = Fraction(match.group(1))
        exps = [0] * space.arity
        if match.group(2):
            for factor in match.group(2).split():
                name, _, e = factor.partition("^")
                exps[space.index(name)] += int(e) if e else 1
        m = tuple(exps)
        out[m] = out.get(m, 0) + coef
    return Polynomial(space, out)


def poisson(f: Polynomial, g: Polynomial) -> Polynomial:
    """Canonical bracket  sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)."""
    if f.space != g.space:
        raise SpaceMismatchError("polynomials live in different variable spaces")
    space = f.space
    if space.pairing is None:
        raise ValueError("variable space declares no conjugate pairing")
    result = space.zero()
    for iq, ip in space.pairing:
        q, p = space.names[iq], space.names[ip]
        result = result + f.partial(q) * g.partial(p) - f.partial(p) * g.partial(q)
    return result


_PHASE = VariableSpace(["q1", "q2", "q3", "p1", "p2", "p3"], [(0, 3), (1, 4), (2, 5)])


def total_space(*spaces: VariableSpace) -> VariableSpace:
    """Union of variable names (first occurrence order), no pairing."""
    names: list[str] = []
    seen = set()
    for s in spaces:
        for n in s.names:
            if n not in seen:
                seen.add(n)
                names.append(n)
    return VariableSpace(names)


def monomials_of_degree(space: VariableSpace, d: int) -> Iterable[tuple[int, ...]]:
    """All exponent vectors of total degree ``d``."""
    n = space.arity

    def rec(i, left):
        if i == n - 1:
            yield (left,)
            return
        for e in range(left, -1, -1):
            for rest in rec(i + 1, left - e):
                yield (e,) + rest

    if n == 0:
        if d == 0:
            yield ()
        return
    yield from rec(0, d)
