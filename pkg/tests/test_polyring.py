from fractions import Fraction

import pytest

from lhsp6.polyring import (
    Polynomial,
    SpaceMismatchError,
    VariableSpace,
    parse_polynomial,
    phase_space,
    poisson,
    prolonged_space,
)
from lhsp6.invariants import F_sym, c2_in_h, H_SYMBOLS


def test_additive_inverse(Z):
    q1 = Z[0]
    assert (q1 + (-q1)).is_zero()


def test_doubling(Z):
    q1, p1 = Z[0], Z[3]
    assert q1 * p1 + q1 * p1 == 2 * q1 * p1


def test_sum_of_diagonal_hamiltonians(Z, H):
    q1, q2, q3, p1, p2, p3 = Z
    assert H[1] + H[5] + H[9] == q1 * p1 + q2 * p2 + q3 * p3


def test_product_matches_h1(Z, H):
    assert Z[0] * Z[3] == H[1]


def test_zero_absorbs(Z):
    assert (phase_space().zero() * (Z[0] + 3)).is_zero()


def test_square_of_binomial(Z):
    q1, p1 = Z[0], Z[3]
    assert (q1 + p1) ** 2 == q1 ** 2 + 2 * q1 * p1 + p1 ** 2


def test_partials(Z):
    q1, q2, q3, p1, p2, p3 = Z
    assert (q1 ** 2).scale(Fraction(1, 2)).partial("q1") == q1
    assert (q1 * p2).partial("p1").is_zero()
    assert (p1 * p2).partial("p2") == p1


def test_partial_unknown_variable(Z):
    with pytest.raises(KeyError):
        Z[0].partial("x")


def test_evaluate(Z):
    q1, p1 = Z[0], Z[3]
    assert (q1 * p1).evaluate({"q1": 2, "p1": 3}) == 6.0


def test_evaluate_missing_assignment(Z):
    with pytest.raises(KeyError):
        (Z[0] * Z[3]).evaluate({"q1": 2})


def test_F1_vanishes_at_a_point():
    space = prolonged_space(1)
    assert F_sym(1).evaluate({n: 1.3 for n in space.names}) == 0.0


def test_c2_at_all_ones(H):
    values = {f"h{k}": H[k].evaluate([1] * 6) for k in range(1, 22)}
    assert c2_in_h().evaluate(values) == 0.0


def test_poisson_examples(Z, H):
    q1, p1 = Z[0], Z[3]
    assert poisson(q1, p1) == phase_space().const(1)
    assert poisson(H[10], H[16]) == H[1]
    f = q1 ** 2 * p1 + Z[1]
    assert poisson(f, f).is_zero()


def test_poisson_requires_pairing():
    s = VariableSpace(["x", "y"])
    with pytest.raises(ValueError):
        poisson(s.var("x"), s.var("y"))


def test_space_mismatch(Z):
    other = VariableSpace(["q1"])
    with pytest.raises(SpaceMismatchError):
        Z[0] + other.var("q1")


def test_zero_polynomial_degree():
    assert phase_space().zero().degree() == float("-inf")


def test_space_validation():
    with pytest.raises(ValueError):
        VariableSpace(["a", "a"])
    with pytest.raises(ValueError):
        VariableSpace(["a", "b", "c"], [(0, 1)])
    with pytest.raises(ValueError):
        VariableSpace(["a", "b"], [(0, 0)])


def test_no_zero_coefficients_stored(Z):
    p = Z[0] + Z[1] - Z[0]
    assert all(c != 0 for c in p.terms.values())
    assert len(p) == 1


def test_text_round_trip(Z):
    q1, q2, q3, p1, p2, p3 = Z
    p = (q1 ** 2 * p3).scale(Fraction(-3, 7)) + 5 * q2 - 1
    text = p.to_text()
    assert text == "-3/7 * q1^2 p3 + 5 * q2 + -1"
    assert parse_polynomial(text, phase_space()) == p


def test_grlex_order(Z):
    q1, q2 = Z[0], Z[1]
    assert (q2 + q1 ** 2 + q1).to_text() == "1 * q1^2 + 1 * q1 + 1 * q2"


def test_prolonged_space_layout():
    s = prolonged_space(2)
    assert s.names[:7] == ("q1_1", "q2_1", "q3_1", "p1_1", "p2_1", "p3_1", "q1_2")
    assert s.pairing[3] == (6, 9)


def test_substitute_composes(Z):
    q1, p1 = Z[0], Z[3]
    s = phase_space()
    composed = (q1 * p1).substitute({"q1": q1 + p1}, s)
    assert composed == q1 * p1 + p1 ** 2


def test_rejects_float_coefficients():
    with pytest.raises(TypeError):
        phase_space().const(0.5)
