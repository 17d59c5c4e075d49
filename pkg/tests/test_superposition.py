import numpy as np
import pytest

from lhsp6.dynamics import integrate_prolonged, random_spec
from lhsp6.superposition import (
    IllConditionedError,
    SuperpositionConstants,
    UnderdeterminedError,
    constants_from,
    displayed_equation_pairs,
    equations_involving,
    pairing_matrix,
    reconstruct,
    reconstruct_trajectory,
    require_determinate,
)

E1 = np.array([1.0, 0, 0, 0, 0, 0])
F1 = np.array([0, 0, 0, 1.0, 0, 0])


def seven_copies(algebra, seed, grid=100):
    spec = random_spec(algebra, seed)
    z0 = np.random.default_rng([seed, 1]).normal(size=(7, 6))
    return integrate_prolonged(spec, z0, (0, 10), grid=grid)


@pytest.fixture(scope="module")
def run():
    return seven_copies("sp6", 3)


def test_constants_example():
    sols = np.eye(6)[[3, 1, 2, 0, 4, 5]]  # s_1 = (0, e_1)
    c = constants_from(E1, sols)
    assert c.signed[0] == -1.0
    assert np.array_equal(c.squared, c.signed ** 2)


def test_constants_self_and_scaling():
    rng = np.random.default_rng(0)
    sols = rng.normal(size=(6, 6))
    assert constants_from(sols[0], sols).signed[0] == 0.0
    x = rng.normal(size=6)
    assert np.allclose(constants_from(3.5 * x, sols).signed, 3.5 * constants_from(x, sols).signed)


def test_constants_validation():
    with pytest.raises(ValueError):
        constants_from(E1, np.eye(5, 6))
    with pytest.raises(ValueError):
        SuperpositionConstants(np.zeros(5))
    sq = SuperpositionConstants.from_squared([1, 4, 9, 0, 0, 0])
    assert np.array_equal(sq.signed, [1, 2, 3, 0, 0, 0])


def test_pairing_matrix_realizes_constants():
    rng = np.random.default_rng(1)
    sols, x = rng.normal(size=(6, 6)), rng.normal(size=6)
    assert np.allclose(pairing_matrix(sols) @ x, constants_from(x, sols).signed)


def test_zero_constants_give_origin():
    sols = np.random.default_rng(2).normal(size=(6, 6))
    assert np.array_equal(reconstruct(sols, SuperpositionConstants(np.zeros(6))), np.zeros(6))


def test_signed_reconstruction_oracle(run):
    x_ref, sols = run.states[:, 6], run.states[:, :6]
    consts = constants_from(x_ref[0], sols[0])
    rec, counts = reconstruct_trajectory(run.times, sols, consts)
    assert counts is None
    err = np.abs(rec - x_ref).max(axis=1) / np.abs(x_ref).max(axis=1)
    assert err.max() <= 1e-6


def test_consistency_of_reconstruction(run):
    sols = run.states[:, :6]
    consts = constants_from(run.states[0, 6], sols[0])
    for n in range(0, len(run.times), 9):
        x = reconstruct(sols[n], consts, t=run.times[n])
        assert np.abs(constants_from(x, sols[n]).signed - consts.signed).max() <= 1e-9


def test_constants_time_invariant(run):
    c0 = constants_from(run.states[0, 6], run.states[0, :6]).signed
    for n in (25, 50, 99):
        cn = constants_from(run.states[n, 6], run.states[n, :6]).signed
        assert np.abs(cn - c0).max() <= 1e-8 * max(1.0, np.abs(c0).max())


def test_determinant_time_invariant(run):
    d = np.array([np.linalg.det(pairing_matrix(s)) for s in run.states[:, :6]])
    assert np.abs(d - d[0]).max() <= 1e-6 * abs(d[0])


def test_squared_candidates_contain_signed(run):
    sols, x_ref = run.states[40, :6], run.states[40, 6]
    consts = constants_from(run.states[0, 6], run.states[0, :6])
    signed = reconstruct(sols, consts)
    res = reconstruct(sols, SuperpositionConstants.from_squared(consts.squared), "squared", previous=x_ref)
    assert np.abs(res.candidates - signed).max(axis=1).min() <= 1e-9 * np.abs(signed).max()
    assert np.allclose(res.x, signed, rtol=0, atol=1e-9 * np.abs(signed).max())
    assert len(res.candidates) <= 64


def test_squared_trajectory_matches_signed(run):
    sols, x_ref = run.states[:, :6], run.states[:, 6]
    consts = constants_from(x_ref[0], sols[0])
    signed, _ = reconstruct_trajectory(run.times, sols, consts)
    sq, counts = reconstruct_trajectory(run.times, sols, SuperpositionConstants.from_squared(consts.squared),
                                        "squared", x0=x_ref[0])
    assert len(counts) == len(run.times)
    assert np.abs(sq - signed).max() <= 1e-8 * np.abs(signed).max()


def test_squared_without_previous_returns_first_candidate():
    sols = np.random.default_rng(4).normal(size=(6, 6))
    res = reconstruct(sols, SuperpositionConstants(np.ones(6)), "squared")
    assert np.array_equal(res.x, res.candidates[0])
    assert len(res.candidates) == 64


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        reconstruct(np.eye(6), SuperpositionConstants(np.ones(6)), "cubed")


def test_duplicated_solutions_are_ill_conditioned():
    sols = np.random.default_rng(5).normal(size=(6, 6))
    sols[5] = sols[4]
    with pytest.raises(IllConditionedError) as info:
        reconstruct(sols, SuperpositionConstants(np.ones(6)), t=2.5)
    assert info.value.t == 2.5 and "2.5" in str(info.value)
    with pytest.raises(IllConditionedError):
        reconstruct(sols, SuperpositionConstants(np.ones(6)), "squared", t=2.5)


def test_displayed_equation_pairs():
    assert displayed_equation_pairs() == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)]
    assert equations_involving(1) == 6
    assert equations_involving(7) == 1


def test_require_determinate():
    require_determinate(1)
    with pytest.raises(UnderdeterminedError):
        require_determinate(7)
    paired = [(l, 7) for l in range(1, 7)]
    require_determinate(7, paired)
