import math
from fractions import Fraction
import warnings

import numpy as np
import pytest

from lhsp6.dynamics import (
    Constant,
    Harmonic,
    PolynomialInT,
    integrate,
    hamiltonian_value,
    random_spec,
    system_matrix,
)
from lhsp6.presets import (
    EMFieldData,
    OscillatorData,
    PresetError,
    cck_preset,
    cck_symbolic,
    cho_frequency,
    cho_preset,
    cho_symbolic,
    em_fields,
    em_parameter_values,
    em_preset,
    em_symbolic,
    h_II_identity,
    minkowski_decomposition,
    numeric_agreement,
    oscillator_parameter_values,
    sample_window,
    su3_matrix_identity,
    su3_preset,
    su3_symbolic,
)
from lhsp6.realization import su3_hamiltonians

UNIT = OscillatorData(m=[1, 1, 1], k=[1, 1, 1], gamma=[0, 0, 0])
TIMES = np.linspace(0.0, 10.0, 32)


def jmat():
    j = np.zeros((6, 6))
    j[:3, 3:] = np.eye(3)
    j[3:, :3] = -np.eye(3)
    return j


def values_at(spec, t):
    return {i: f(t) for i, f in spec.nonzero().items()}


@pytest.mark.parametrize("make", [em_symbolic, cho_symbolic, cck_symbolic, h_II_identity, su3_symbolic],
                         ids=lambda f: f.__name__)
def test_symbolic_expansions_hold(make):
    preset = make()
    assert preset.residual().is_zero()
    assert preset.holds()


def test_em_fields():
    f = em_fields()
    q1, q2, q3, g, dg = f["space"].gens()
    half = Fraction(1, 2)
    zero = f["space"].zero()
    assert f["B"] == (zero, zero, g)
    assert f["E"][0] == -(2 * q1 - q2 * dg).scale(half)
    assert f["E"][1] == -(2 * q2 + q1 * dg).scale(half)
    assert f["E"][2] == -(2 * q3 + q3 * dg).scale(half)
    assert f["A"][0] == -(q2 * g).scale(half)


def test_em_uncoupled_unit_oscillators():
    data = EMFieldData(m=[1, 1, 1], e=[1, 1, 1], gamma=0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        spec = em_preset(data)
    assert values_at(spec, 2.0) == {10: 1.0, 13: 1.0, 15: 1.0, 16: 1.0, 19: 1.0, 21: 1.0}


def test_em_table_has_nine_generators():
    data = EMFieldData(m=[1.0, 2.0, 3.0], e=[0.5, -1.0, 2.0], gamma=PolynomialInT((0.0, 0.0, 1.0)))
    spec = em_preset(data)
    assert sorted(spec.coefficients) == [2, 4, 9, 10, 13, 15, 16, 19, 21]
    err = numeric_agreement(em_symbolic(), spec, lambda t: em_parameter_values(data, t), TIMES)
    assert err <= 1e-12


def test_em_gamma_warning():
    with pytest.warns(RuntimeWarning, match="gamma"):
        notes = EMFieldData(m=[1, 1, 1], e=[1, 1, 1], gamma=Harmonic(1.0, 0.0)).validate()
    assert notes
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        EMFieldData(m=[1, 1, 1], e=[1, 1, 1], gamma=PolynomialInT((0.0, 0.0, 1.0))).validate()


def test_em_mass_positivity():
    with pytest.raises(PresetError, match="m2"):
        em_preset(EMFieldData(m=[1, PolynomialInT((1.0, -1.0)), 1], e=[1, 1, 1], gamma=PolynomialInT((0, 0, 1))))


def test_em_constant_energy_conserved():
    data = EMFieldData(m=[1.0, 2.0, 0.5], e=[1.0, 0.5, 2.0], gamma=1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        spec = em_preset(data)
    z0 = np.array([0.3, -0.2, 0.5, 0.1, 0.4, -0.6])
    tr = integrate(spec, z0, (0, 10), grid=41)
    e = np.array([hamiltonian_value(spec, z, 0.0) for z in tr.copy(0)])
    assert np.abs(e - e[0]).max() <= 1e-8


def test_cho_frequency():
    assert cho_frequency(1, 1, 1) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


def test_cho_decoupled_unit_oscillators():
    spec = cho_preset(UNIT)
    assert values_at(spec, 1.0) == {10: 1.0, 13: 1.0, 15: 1.0, 16: 1.0, 19: 1.0, 21: 1.0}


def test_cho_couplings_follow_constraint():
    data = OscillatorData(m=[1, 2, 3], k=[2, 3, 4], gamma=[0.1, 0.2, 0.3],
                          b2=Harmonic(0.3, 1.0), b3=0.2, b6=PolynomialInT((0.0, 0.1)))
    spec = cho_preset(data)
    for t in (0.0, 1.3, 7.0):
        v = spec.values(t)
        assert v[3] == -v[1] and v[6] == -v[2] and v[7] == -v[5]
    err = numeric_agreement(cho_symbolic(), spec, lambda t: oscillator_parameter_values(data, t, "CHO"), TIMES)
    assert err <= 1e-12


def test_cho_condition():
    bad = OscillatorData(m=[1, 1, 1], k=[1, 0.2, 1], gamma=[0, 1, 0])
    with pytest.raises(PresetError, match="k2"):
        cho_preset(bad)


def test_cck_positivity():
    with pytest.raises(PresetError):
        cck_preset(OscillatorData(m=[1, 1, 1], k=[1, -1, 1], gamma=[0, 0, 0]))


def test_cck_reduces_to_cho_without_damping():
    data = OscillatorData(m=[1, 2, 0.5], k=[1, 3, 2], gamma=[0, 0, 0], b2=0.3, b3=-0.1, b6=0.2)
    cck, cho = cck_preset(data), cho_preset(data)
    assert cck.coefficients.keys() == cho.coefficients.keys()
    for t in TIMES:
        assert np.allclose(cck.values(t), cho.values(t), rtol=1e-15, atol=1e-15)


def test_cck_constant_damping_closed_form():
    data = OscillatorData(m=[1, 1, 1], k=[1, 1, 1], gamma=[1, 0, 0])
    spec = cck_preset(data)
    for t in (0.0, 0.5, 2.0, 4.0):
        assert spec.coefficients[16](t) == pytest.approx(math.exp(-2 * t), rel=1e-12)
        assert spec.coefficients[10](t) == pytest.approx(math.exp(2 * t), rel=1e-12)


def test_cck_quadrature_agrees_with_symbolic_table():
    data = OscillatorData(m=[1, 1.5, 2], k=[1, 2, 3], gamma=[Harmonic(0.2, 1.0, 0.0, 0.3), 0.1, 0.0], b2=0.2)
    spec = cck_preset(data)
    err = numeric_agreement(cck_symbolic(), spec, lambda t: oscillator_parameter_values(data, t, "CCK"), TIMES)
    assert err <= 1e-10


def test_cck_uncoupled_matrix_is_block_diagonal():
    spec = cck_preset(OscillatorData(m=[1, 2, 3], k=[1, 1, 1], gamma=[0.1, 0.2, 0.0]))
    m = system_matrix(spec, 1.7)
    mask = np.zeros((6, 6), bool)
    for i in range(3):
        for a in (i, i + 3):
            for b in (i, i + 3):
                mask[a, b] = True
    assert not m[~mask].any()


def test_unknown_variant():
    with pytest.raises(ValueError):
        UNIT.validate("XYZ")


def test_su3_identification():
    sym = su3_symbolic()
    s = sym.space
    q1, q2, p1, p2 = s.vars("q1", "q2", "p1", "p2")
    unit = {n: 0 for n in ("t2", "t3", "t4")}
    h1 = sym.hamiltonian.substitute({k: s.const(v) for k, v in {**unit, "t1": 1}.items()}, s)
    assert h1 == p1 * p2 - q1 * q2
    hp = [h.embed(s) for h in su3_hamiltonians()]
    assert hp[0] + hp[3] == p1 * p2 - q1 * q2
    assert su3_matrix_identity()


def test_su3_preset_zero_and_symplectic():
    assert not system_matrix(su3_preset(0, 0, 0, 0), 0.0).any()
    j = jmat()
    rng = np.random.default_rng(9)
    for _ in range(100):
        spec = su3_preset(*(Harmonic(float(a), float(w)) for a, w in rng.uniform(-2, 2, size=(4, 2))))
        m = system_matrix(spec, float(rng.uniform(0, 10)))
        assert np.abs(m.T @ j + j @ m).max() <= 1e-14


def test_minkowski_chain():
    rep = minkowski_decomposition()
    assert rep.identity_i and rep.identity_ii and rep.identity_iii
    assert rep.kinetic and rep.decoupled and rep.ok
    assert not rep.identity_i_as_printed


def test_sample_window_density():
    ts = sample_window((0.0, 10.0))
    assert len(ts) == 1024 and ts[0] == 0.0 and ts[-1] == 10.0
