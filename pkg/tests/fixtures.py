"""Hand transcriptions used as test oracles (never imported by the package)."""

from fractions import Fraction

from lhsp6.polyring import phase_space

#: X_1 .. X_21 as printed: ``{component: "signed variables"}``.
PRINTED_SP6_FIELDS = [
    {"q1": "q1", "p1": "-p1"},
    {"q2": "q1", "p1": "-p2"},
    {"q3": "q1", "p1": "-p3"},
    {"q1": "q2", "p2": "-p1"},
    {"q2": "q2", "p2": "-p2"},
    {"q3": "q2", "p2": "-p3"},
    {"q1": "q3", "p3": "-p1"},
    {"q2": "q3", "p3": "-p2"},
    {"q3": "q3", "p3": "-p3"},
    {"p1": "-q1"},
    {"p1": "-q2", "p2": "-q1"},
    {"p1": "-q3", "p3": "-q1"},
    {"p2": "-q2"},
    {"p2": "-q3", "p3": "-q2"},
    {"p3": "-q3"},
    {"q1": "p1"},
    {"q1": "p2", "q2": "p1"},
    {"q1": "p3", "q3": "p1"},
    {"q2": "p2"},
    {"q2": "p3", "q3": "p2"},
    {"q3": "p3"},
]

#: h_1 .. h_21 as printed: (coefficient, variable, variable).
PRINTED_SP6_HAMILTONIANS = [
    (1, "q1", "p1"), (1, "q1", "p2"), (1, "q1", "p3"), (1, "q2", "p1"),
    (1, "q2", "p2"), (1, "q2", "p3"), (1, "q3", "p1"), (1, "q3", "p2"),
    (1, "q3", "p3"), (Fraction(1, 2), "q1", "q1"), (1, "q1", "q2"), (1, "q1", "q3"),
    (Fraction(1, 2), "q2", "q2"), (1, "q2", "q3"), (Fraction(1, 2), "q3", "q3"),
    (Fraction(1, 2), "p1", "p1"), (1, "p1", "p2"), (1, "p1", "p3"),
    (Fraction(1, 2), "p2", "p2"), (1, "p2", "p3"), (Fraction(1, 2), "p3", "p3"),
]

#: System matrix pattern: entry (r, c) is +-k for +-b_k.
PRINTED_SP6_SYSTEM = [
    [1, 4, 7, 16, 17, 18],
    [2, 5, 8, 17, 19, 20],
    [3, 6, 9, 18, 20, 21],
    [-10, -11, -12, -1, -2, -3],
    [-11, -13, -14, -4, -5, -6],
    [-12, -14, -15, -7, -8, -9],
]

#: h'_1 .. h'_8 as printed, each as {(var, var): coefficient} before the 1/2.
PRINTED_SU3_HAMILTONIANS = [
    {("q1", "p2"): 1, ("q2", "p1"): -1, ("p1", "p2"): 1, ("q1", "q2"): -1},
    {("q2", "p3"): 1, ("q3", "p2"): -1, ("p2", "p3"): 1, ("q2", "q3"): -1},
    {("q1", "p3"): 1, ("q3", "p1"): -1, ("p1", "p3"): 1, ("q1", "q3"): -1},
    {("q1", "p2"): -1, ("q2", "p1"): 1, ("p1", "p2"): 1, ("q1", "q2"): -1},
    {("q2", "p3"): -1, ("q3", "p2"): 1, ("p2", "p3"): 1, ("q2", "q3"): -1},
    {("q1", "p3"): -1, ("q3", "p1"): 1, ("p1", "p3"): 1, ("q1", "q3"): -1},
    {("q1", "q1"): -1, ("q2", "q2"): 1, ("p1", "p1"): 1, ("p2", "p2"): -1},
    {("q2", "q2"): -1, ("q3", "q3"): 1, ("p2", "p2"): 1, ("p3", "p3"): -1},
]


def field_components(rows):
    s = phase_space()
    comps = []
    for name in s.names:
        poly = s.zero()
        for tok in rows.get(name, "").split():
            poly = poly + s.var(tok.lstrip("+-")).scale(-1 if tok.startswith("-") else 1)
        comps.append(poly)
    return comps


def printed_hamiltonian(k):
    s = phase_space()
    c, a, b = PRINTED_SP6_HAMILTONIANS[k - 1]
    return (s.var(a) * s.var(b)).scale(Fraction(c))


def printed_su3_hamiltonian(k):
    s = phase_space()
    out = s.zero()
    for (a, b), c in PRINTED_SU3_HAMILTONIANS[k - 1].items():
        out = out + (s.var(a) * s.var(b)).scale(Fraction(c, 2))
    return out
