"""Superposition rule: rebuild a solution from six particular ones.

For a linear Hamiltonian flow the pairings of an unknown solution ``x``
with six particular solutions ``s_l`` are constant. This module fixes the
argument order with the particular solution first:
``c_l = Omega(s_l, x) = q(s_l) . p(x) - p(s_l) . q(x)``, with ``Omega`` as in
:func:`lhsp6.invariants.omega`. So ``x = (e_1, 0)`` and ``s_1 = (0, e_1)``
give ``c_1 = -1``. Knowing the six constants and the particular solutions at
time ``t``, ``x(t)`` is the solution of the 6x6 linear system with rows
``-(J s_l(t))^T``.

The squared constants ``k_l^2 = -F2(x, s_l) = c_l^2`` fix ``x`` only up to
the signs of the ``c_l``; :func:`reconstruct` in ``"squared"`` mode
enumerates the sign patterns and selects a branch by continuity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .invariants import F_sym, omega, permute
from .polyring import prolonged_space

__all__ = [
    "SuperpositionConstants",
    "IllConditionedError",
    "UnderdeterminedError",
    "constants_from",
    "pairing_matrix",
    "reconstruct",
    "reconstruct_trajectory",
    "displayed_equation_pairs",
    "equations_involving",
    "require_determinate",
    "CONDITION_LIMIT",
]

#: Reject the linear solve above this 2-norm condition number.
CONDITION_LIMIT = 1e8


class IllConditionedError(ArithmeticError):
    def __init__(self, t, cond: float):
        super().__init__(f"particular solutions are nearly dependent at t = {t!r} (condition number {cond:.3e})")
        self.t = t
        self.cond = cond


class UnderdeterminedError(ArithmeticError):
    """The chosen equation set does not determine the unknown copy."""


@dataclass(frozen=True)
class SuperpositionConstants:
    """``signed[l] = Omega(s_l, x)`` and ``squared[l] = signed[l]^2 = -F2(x, s_l)``."""

    signed: np.ndarray
    squared: np.ndarray = field(default=None)

    def __post_init__(self):
        s = np.asarray(self.signed, dtype=float)
        if s.shape != (6,):
            raise ValueError("expected six constants")
        object.__setattr__(self, "signed", s)
        sq = s ** 2 if self.squared is None else np.asarray(self.squared, dtype=float)
        if np.any(sq < 0):
            raise ValueError("squared constants must be non-negative")
        object.__setattr__(self, "squared", sq)

    @classmethod
    def from_squared(cls, squared) -> "SuperpositionConstants":
        sq = np.asarray(squared, dtype=float)
        return cls(np.sqrt(sq), sq)


def constants_from(x0, sols0) -> SuperpositionConstants:
    """Constants of the unknown ``x0`` against six particular points ``sols0`` (6, 6)."""
    sols0 = np.asarray(sols0, dtype=float)
    if sols0.shape != (6, 6):
        raise ValueError("expected six particular points of dimension 6")
    return SuperpositionConstants(np.array([omega(s, x0) for s in sols0]))


def pairing_matrix(sols) -> np.ndarray:
    """Rows ``-(J s_l)^T`` so that ``pairing_matrix(sols) @ x = [Omega(s_l, x)]``."""
    sols = np.asarray(sols, dtype=float)
    # Omega(s, x) = q_s . p_x - p_s . q_x  ->  row = (-p_s, q_s)
    return np.concatenate([-sols[:, 3:], sols[:, :3]], axis=1)


def _solve(a: np.ndarray, rhs: np.ndarray, t, limit: float) -> np.ndarray:
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > limit:
        raise IllConditionedError(t, float(cond))
    return np.linalg.solve(a, rhs)


@dataclass
class SquaredResult:
    """Selected point plus every distinct sign-pattern candidate."""

    x: np.ndarray
    candidates: np.ndarray


def _candidates(a: np.ndarray, k: np.ndarray, t, limit: float) -> np.ndarray:
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > limit:
        raise IllConditionedError(t, float(cond))
    inv = np.linalg.inv(a)
    patterns = {}
    for signs in itertools.product((1.0, -1.0), repeat=6):
        rhs = np.array(signs) * k
        key = tuple(np.round(rhs, 14) + 0.0)
        patterns.setdefault(key, rhs)
    cands = np.array([inv @ rhs for rhs in patterns.values()])
    # consistency filter: each candidate must reproduce the squared constants
    resid = np.abs((cands @ a.T) ** 2 - k ** 2).max(axis=1)
    return cands[resid <= 1e-8 * max(1.0, float(np.max(k ** 2)))]


def reconstruct(sols_t, constants: SuperpositionConstants, mode: str = "signed", previous=None,
                t=None, condition_limit: float = CONDITION_LIMIT):
    """``x(t)`` from the particular solutions at ``t`` and the constants.

    ``mode="signed"`` returns the point. ``mode="squared"`` returns a
    :class:`SquaredResult`. When ``previous`` (a prediction of ``x(t)``) is
    given, the candidate nearest to it is selected; without it the squared
    constants carry no sign information and the first candidate is returned.
    """
    a = pairing_matrix(sols_t)
    if mode == "signed":
        return _solve(a, constants.signed, t, condition_limit)
    if mode != "squared":
        raise ValueError(f"unknown mode {mode!r}")
    cands = _candidates(a, np.sqrt(constants.squared), t, condition_limit)
    if previous is None:
        return SquaredResult(cands[0], cands)
    d = np.linalg.norm(cands - np.asarray(previous, dtype=float), axis=1)
    return SquaredResult(cands[int(np.argmin(d))], cands)


def reconstruct_trajectory(times, sols, constants: SuperpositionConstants, mode: str = "signed",
                           x0=None, condition_limit: float = CONDITION_LIMIT):
    """Reconstruct along a grid; ``sols`` has shape ``(n, 6, 6)``.

    In squared mode ``x0`` seeds the continuity selection. Later points are
    predicted by carrying the previous selection along the flow, which the
    particular solutions determine: ``Phi = S(t_n) S(t_{n-1})^{-1}`` with
    ``S`` the matrix whose columns are the six solutions. The candidate
    nearest to the prediction is kept.

    Returns ``(points, candidate_counts)``; counts are ``None`` in signed mode.
    """
    sols = np.asarray(sols, dtype=float)
    out = np.empty((len(times), 6))
    if mode == "signed":
        for n, t in enumerate(times):
            out[n] = reconstruct(sols[n], constants, "signed", t=t, condition_limit=condition_limit)
        return out, None
    counts = []
    for n, t in enumerate(times):
        if n == 0:
            guess = x0
        else:
            guess = sols[n].T @ np.linalg.solve(sols[n - 1].T, out[n - 1])
        res = reconstruct(sols[n], constants, "squared", previous=guess, t=t, condition_limit=condition_limit)
        out[n] = res.x
        counts.append(len(res.candidates))
    return out, counts


def displayed_equation_pairs() -> list[tuple[int, int]]:
    """Copy pairs entering ``F^(2), F_23, F_24, ..., F_27`` on seven copies.

    ``F^(2)`` couples copies 1 and 2; each ``F_2j = S_2j(F^(2))`` is
    identified by which copies survive in its variables.
    """
    space = prolonged_space(7)
    f2 = F_sym(2).embed(space)
    pairs = []
    for f in [f2] + [permute(f2, 2, j) for j in range(3, 8)]:
        copies = sorted({int(v.rsplit("_", 1)[1]) for v in f.variables()})
        pairs.append(tuple(copies))
    return pairs


def equations_involving(unknown: int, pairs=None) -> int:
    """How many equations of a pair list contain the unknown copy."""
    pairs = displayed_equation_pairs() if pairs is None else pairs
    return sum(unknown in p for p in pairs)


def require_determinate(unknown: int, pairs=None) -> None:
    """Raise :class:`UnderdeterminedError` unless six equations involve ``unknown``.

    With the displayed equation set, copy 1 is paired with copies 2..7, so
    ``unknown=1`` passes while ``unknown=7`` (one equation) fails.
    """
    n = equations_involving(unknown, pairs)
    if n < 6:
        raise UnderdeterminedError(f"only {n} of the equations involve copy {unknown}; six are needed")
