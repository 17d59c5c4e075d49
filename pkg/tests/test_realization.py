from fractions import Fraction

import numpy as np
import pytest

from lhsp6.liealg import SP6_BASIS, build_sp6, build_su3, canonical
from lhsp6.polyring import phase_space, poisson
from lhsp6.realization import (
    CANONICAL_FORM,
    J,
    LinearVectorField,
    NotHamiltonianError,
    hamiltonian_lift,
    hamiltonian_of,
    printed_su3_fields,
    realize_sp6,
    realize_su3,
    sp6_hamiltonians,
    su3_hamiltonians,
    vf_bracket,
)
from lhsp6.realization import (
    field_closure_report,
    homomorphism_report,
    kappa_report,
    lift_report,
    poisson_constants_report,
    vf_bracket_matrix,
)

from fixtures import (
    PRINTED_SP6_FIELDS,
    field_components,
    printed_hamiltonian,
    printed_su3_hamiltonian,
)

S = phase_space()
q1, q2, q3, p1, p2, p3 = S.gens()


@pytest.fixture(scope="module")
def fields():
    return [f for _, f in realize_sp6()]


@pytest.fixture(scope="module")
def yfields():
    return [f for _, f in realize_su3()]


def test_sp6_fields_match_printed_list(fields):
    for k, (f, rows) in enumerate(zip(fields, PRINTED_SP6_FIELDS), start=1):
        assert f == LinearVectorField.from_components(field_components(rows)), f"X_{k}"


def test_sp6_labels_in_order():
    labels = [lab for lab, _ in realize_sp6()]
    assert labels == list(SP6_BASIS)


def test_x10_and_x17(fields):
    zero = S.zero()
    assert fields[9].components == (zero, zero, zero, -q1, zero, zero)
    assert fields[16].components == (p2, p1, zero, zero, zero, zero)


def test_sp6_hamiltonians_match_printed(fields):
    hams = sp6_hamiltonians()
    for k in range(1, 22):
        assert hams[k - 1] == printed_hamiltonian(k), f"h_{k}"


def test_y7_printed_form(yfields):
    zero = S.zero()
    assert yfields[6].components == (p1, -p2, zero, q1, -q2, zero)


def test_y1_from_embedding(fields, yfields):
    half = Fraction(1, 2)
    combo = (fields[1] - fields[3] - fields[10] + fields[16]).scale(half)
    assert combo == yfields[0]
    assert yfields[0] == printed_su3_fields()[0]


def test_y8_at_origin(yfields):
    assert np.array_equal(yfields[7].at(np.zeros(6)), np.zeros(6))


def test_su3_hamiltonians_match_printed():
    for k, h in enumerate(su3_hamiltonians(), start=1):
        assert h == printed_su3_hamiltonian(k), f"h'_{k}"


def test_lift_examples(fields, H):
    assert hamiltonian_lift(H[10]) == fields[9]
    assert hamiltonian_lift(H[1]) == fields[0]
    assert hamiltonian_lift(S.const(5)).is_zero()


def test_lift_rejects_cubic_and_linear():
    with pytest.raises(ValueError):
        hamiltonian_lift(q1 ** 2 * p1)
    with pytest.raises(ValueError):
        hamiltonian_lift(q1 + p1 ** 2)


def test_hamiltonian_of_examples(fields, yfields):
    assert hamiltonian_of(fields[15]) == (p1 ** 2).scale(Fraction(1, 2))
    assert hamiltonian_of(LinearVectorField.zero()).is_zero()
    expected = (-q2 ** 2 + q3 ** 2 + p2 ** 2 - p3 ** 2).scale(Fraction(1, 2))
    assert hamiltonian_of(yfields[7]) == expected


def test_hamiltonian_of_rejects_non_hamiltonian():
    m = [[0] * 6 for _ in range(6)]
    m[0][0] = 1  # q1 d/dq1 alone does not preserve omega
    with pytest.raises(NotHamiltonianError):
        hamiltonian_of(LinearVectorField(m))


def test_brackets(fields, yfields):
    X = lambda k: fields[k - 1]  # noqa: E731
    assert vf_bracket(X(1), X(1)).is_zero()
    assert vf_bracket(X(16), X(10)) == X(1)
    assert vf_bracket(yfields[0], yfields[1]) == yfields[2]


def test_bracket_matrix_matches_components(fields):
    for a in range(0, 21, 4):
        for b in range(1, 21, 5):
            assert vf_bracket(fields[a], fields[b]) == vf_bracket_matrix(fields[a], fields[b])


def test_bracket_x16_x10_matches_table(fields):
    _, sc = build_sp6()
    a, b = SP6_BASIS[15], SP6_BASIS[9]
    assert sc.bracket_labels(a, b) == {SP6_BASIS[0]: 1}


def test_reports(fields, yfields):
    _, sc6 = build_sp6()
    _, sc3 = build_su3()
    assert homomorphism_report(fields, sc6).ok
    assert homomorphism_report(yfields, sc3).ok
    rep, fsc = field_closure_report(fields)
    assert rep.ok and rep.checked == 210
    assert lift_report(fields, sp6_hamiltonians()).ok
    assert lift_report(yfields, su3_hamiltonians()).ok


def test_kappa_is_global_and_negative(fields, yfields):
    for flds, hams, n in ((fields, sp6_hamiltonians(), 210), (yfields, su3_hamiltonians(), 28)):
        rep, kappa = kappa_report(flds, hams)
        assert rep.ok and rep.checked == n
        assert kappa == -1


def test_poisson_constants_kappa_prime():
    _, sc6 = build_sp6()
    rep, kp = poisson_constants_report(sp6_hamiltonians(), sc6)
    assert rep.ok and kp == -1
    _, sc3 = build_su3()
    rep, kp = poisson_constants_report(su3_hamiltonians(), sc3)
    assert rep.ok and kp == -1


def test_symplectic_form():
    assert CANONICAL_FORM(np.eye(6)[0], np.eye(6)[3]) == 1.0
    assert all(f.is_hamiltonian() for _, f in realize_sp6())


def test_interior_product_sign(fields, H):
    # i_X omega = dh for X_1 and h_1
    assert CANONICAL_FORM.interior(fields[0]) == H[1].gradient()


def test_from_components_rejects_affine():
    with pytest.raises(ValueError):
        LinearVectorField.from_components([S.const(1)] + [S.zero()] * 5)


def test_to_json_rational_strings(fields):
    m = fields[9].to_json()
    assert Fraction(m[3][0]) == -1 and Fraction(m[0][0]) == 0
    assert all(isinstance(v, str) for row in m for v in row)
