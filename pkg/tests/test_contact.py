import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import P
from reesval.contact import (CompleteIdealSpec, completion_spec, contact_ideal, contact_number,
                             generic_coordinates, intersection_multiplicity,
                             intersection_resultant_oracle, probe_special_members, verify_4_6_1,
                             verify_4_6_2, verify_4_6_3)
from reesval.errors import DegenerateConstant, IncompatibleFields, NotYGeneral
from reesval.exactfield import INF, field_from_config
from reesval.plane import PlaneValuation, PointSequence, order_valuation
from reesval.suites import random_member, random_steps, valuation_pairs

CUSP = PlaneValuation.from_steps(["Free(0)", "Free(0)", "inf"])
ORD = order_valuation()


def zeta(V, n=1):
    return CompleteIdealSpec([(V, n)])


# -- contact numbers ---------------------------------------------------------------

def test_contact_examples():
    assert contact_number(ORD, ORD) == 1
    assert contact_number(ORD, CUSP) == 2
    assert contact_number(CUSP, ORD) == 2
    assert contact_number(CUSP, CUSP) == 6
    for V, W in [(ORD, CUSP), (CUSP, ORD), (CUSP, CUSP)]:
        assert contact_number(V, W, method="curvette") == contact_number(V, W)


def test_contact_over_sqrt2(sqrt2):
    V = PlaneValuation.from_steps(["Free(0)", "Free(alpha)"], sqrt2)
    W = PlaneValuation.from_steps(["Free(0)", "Free(1)"], sqrt2)
    assert contact_number(V, V) == 3  # self plus the conjugate chain through the origin
    assert contact_number(W, V) == 2
    assert V.chi * contact_number(V, W) == W.chi * contact_number(W, V)
    assert contact_number(W, V, method="curvette") == 2
    assert contact_number(V, W, method="curvette") == 1


def test_incompatible_fields():
    K3 = field_from_config({"tower": [{"name": "beta", "minpoly": "beta^2 - 3"}]})
    K2 = field_from_config({"tower": [{"name": "alpha", "minpoly": "alpha^2 - 2"}]})
    V = PlaneValuation.from_steps(["Free(0)", "Free(alpha)"], K2)
    W = PlaneValuation.from_steps(["Free(0)", "Free(beta)"], K3)
    with pytest.raises(IncompatibleFields):
        contact_number(V, W)


def test_curvette_method_rejects_degenerate_constant():
    from reesval.contact import curvette_contact
    V = PlaneValuation.from_steps(["Free(0)", "Free(2)"])
    with pytest.raises(DegenerateConstant):
        curvette_contact(V, ORD, c_star=2)


def test_contact_ideal_examples(sqrt2):
    assert contact_ideal(zeta(ORD), zeta(ORD)) == 1
    assert contact_ideal(zeta(CUSP), zeta(ORD)) == 2
    V = PlaneValuation.from_steps(["Free(0)", "Free(alpha)"], sqrt2)
    assert contact_ideal(zeta(V), zeta(ORD)) == 2
    assert contact_ideal(zeta(ORD), zeta(V)) == 2


def test_ideal_spec_rejects_conjugate_duplicates(sqrt2):
    V = PlaneValuation.from_steps(["Free(0)", "Free(alpha)"], sqrt2)
    W = PlaneValuation.from_steps(["Free(0)", "Free(-alpha)"], sqrt2)
    with pytest.raises(ValueError):
        CompleteIdealSpec([(V, 1), (W, 2)])
    with pytest.raises(ValueError):
        CompleteIdealSpec([(V, 0)])


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_chi_weighted_symmetry(seed):
    (V, W), = valuation_pairs(seed, 1, extension_rate=0.5)
    K = field_from_config(V["field"])
    V = PlaneValuation(PointSequence(V["steps"], K))
    W = PlaneValuation(PointSequence(W["steps"], K))
    assert V.chi * contact_number(V, W) == W.chi * contact_number(W, V)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_ideal_symmetry_with_powers(seed):
    rng = random.Random(seed)
    V = PlaneValuation.from_steps(random_steps(rng, 5))
    W = PlaneValuation.from_steps(random_steps(rng, 5))
    I, J = zeta(V, 2), zeta(W, 3)
    assert verify_4_6_2(I, J).status == "pass"
    assert contact_ideal(I, J) == 6 * contact_number(V, W)


# -- intersection multiplicity ------------------------------------------------------------

def test_intersection_examples():
    assert intersection_multiplicity(P("X"), P("Y")) == 1
    assert intersection_multiplicity(P("Y - X^2"), P("Y")) == 2
    assert intersection_multiplicity(P("Y^2 - X^3"), P("X^2 - Y^3")) == 4
    assert intersection_multiplicity(P("X*(Y - X^2)"), P("X*Y")) == INF
    assert intersection_multiplicity(P("1 + X"), P("Y")) == 0


# resultant orders computed once with sympy and frozen
FROZEN = [
    ("Y^2 - X^3", "X^2 - Y^3", 4),
    ("Y - X^2", "Y", 2),
    ("Y^2 - X^3", "Y^2 - X^5", 6),
    ("Y^2 - X^3", "Y^3 - X^7", 9),
    ("Y^3 - X^4", "Y^2 - X^3", 8),
    ("(Y - X^2)*Y", "X^3", 6),
    ("Y^2 - X^3 + X*Y^2", "X^4 - Y^3 + 2*X^2*Y", 7),
]


@pytest.mark.parametrize("f, g, expected", FROZEN)
def test_frozen_intersection_values(f, g, expected):
    f, g = P(f), P(g)
    assert intersection_multiplicity(f, g) == expected
    assert intersection_multiplicity(g, f) == expected
    assert intersection_resultant_oracle(f, g) == expected


def test_resultant_oracle_examples():
    assert intersection_resultant_oracle(P("Y - X^2"), P("Y")) == 2
    assert intersection_resultant_oracle(P("X"), P("Y")) == 1


def test_not_y_general_pairs():
    with pytest.raises(NotYGeneral):
        intersection_resultant_oracle(P("Y - Y^2"), P("X - X^2"))
    f, g, lam = generic_coordinates(P("Y - Y^2"), P("X - X^2"), seed=3)
    assert lam != 0
    assert intersection_resultant_oracle(f, g) == intersection_multiplicity(f, g) == 1


def test_lines_through_the_origin():
    # (Y, Y - X) only meet at the origin, which our criterion already accepts
    f, g = P("Y"), P("Y - X")
    assert intersection_resultant_oracle(f, g) == intersection_multiplicity(f, g) == 1
    f2, g2, _ = generic_coordinates(f, g, seed=0)
    assert intersection_resultant_oracle(f2, g2) == 1


def _small_poly(seed):
    return P(random_member(random.Random(seed), 3))


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_intersection_symmetry_and_additivity(a, b, c):
    f, g, h = _small_poly(a), _small_poly(b), _small_poly(c)
    fg, fh = intersection_multiplicity(f, g), intersection_multiplicity(f, h)
    assert fg == intersection_multiplicity(g, f)
    if fg != INF and fh != INF:
        assert intersection_multiplicity(f, g * h) == fg + fh


# -- the product formulas -------------------------------------------------------------

WORKED = [
    (("X", "Y", "X", "Y"), 1),
    (("Y^2", "X^3", "Y", "X"), 2),
    (("Y^2", "X^3", "Y^2", "X^3"), 6),
]


@pytest.mark.parametrize("members, value", WORKED)
def test_worked_quadruples(members, value):
    F, G, Fs, Gs = (P(s) for s in members)
    r1 = verify_4_6_1(F, G, Fs, Gs)
    r3 = verify_4_6_3(F, G, Fs, Gs)
    assert r1.status == r3.status == "pass"
    assert r1.values["lhs"] == r1.values["rhs"] == value
    assert r3.values["lhs"] == value


def test_swap_branch_is_noted():
    r = verify_4_6_1(P("X"), P("Y"), P("X"), P("Y"))
    assert r.notes and "G* + t F*" in r.notes[0]


def test_completion_spec_matches_exponents():
    spec = completion_spec(P("Y*(Y - X^2)"), P("X^5"))
    assert [n for _, n in spec.components] == [1, 1]
    # the colength of the pencil equals the self contact of its completion
    assert contact_ideal(spec, spec) == 10


def test_probe_reports_counterexample():
    r = probe_special_members(P("Y^2"), P("X^3"), P("Y"), P("X"), P("Y^2"), P("Y"))
    assert r.status == "fail" and r.witness
    r = probe_special_members(P("Y^2"), P("X^3"), P("Y"), P("X"), P("Y^2 + X^3"), P("Y + X"))
    assert r.status == "pass"
