import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import P, SQRT2
from reesval.errors import ConstantOutsideField, DegenerateConstant, NotAnInfinitelyNearPoint, NotUnitOrder
from reesval.exactfield import INF, MultiPoly, QQField, field_from_config
from reesval import plane
from reesval.plane import (AtInfinity, PlaneValuation, PointSequence, curvette,
                           demo_testing_curve, order_valuation, valuation_from_config)
from reesval.suites import random_steps

CUSP = PlaneValuation.from_steps(["Free(0)", "Free(0)", "inf"], name="cusp")
K2 = field_from_config(SQRT2)
# bound to a plain name so that pytest does not collect it
curve_value = plane.testing_curve_values


def chain(seed, extension=False):
    steps = random_steps(random.Random(seed), 5, extension=extension)
    return PlaneValuation(PointSequence(steps, K2 if extension else QQField))


# -- construction ------------------------------------------------------------------

def test_order_valuation():
    V = order_valuation()
    assert V.mult == (1,) and V.chi == 1
    assert V.value(P("Y^2 - X^3")) == 2


def test_cusp_multiplicities():
    assert CUSP.mult == (2, 1, 1)
    assert CUSP.seq.proximity[2] == frozenset({0, 1})


def test_chi_of_a_conjugate_point(sqrt2):
    V = PlaneValuation.from_steps(["Free(0)", "Free(alpha)"], sqrt2)
    assert V.chi == 2
    W = PlaneValuation.from_steps(["Free(0)", "Free(1)", "Free(1 + alpha)"], sqrt2)
    assert W.chi == 2
    assert PlaneValuation.from_steps(["Free(0)", "Free(1/2)"], sqrt2).chi == 1


def test_config_forms_agree():
    a = valuation_from_config({"field": "Q", "steps": [{"free": "0"}, {"free": "0"},
                                                       {"infinity": True}], "name": "cusp"})
    assert a.mult == CUSP.mult and a.name == "cusp"
    assert a.steps[2] is AtInfinity


def test_constant_outside_field():
    with pytest.raises(ConstantOutsideField):
        PlaneValuation.from_steps(["Free(0)", "Free(alpha)"])


def test_chain_must_start_at_origin():
    with pytest.raises(NotAnInfinitelyNearPoint):
        PlaneValuation.from_steps(["Free(1)"])


# -- values --------------------------------------------------------------------------

def test_cusp_values():
    assert CUSP.value(P("X")) == 2
    assert CUSP.value(P("Y")) == 3
    assert CUSP.value(P("Y^2 - X^3")) == 6
    assert CUSP.value(P("0")) == INF
    assert CUSP.value(P("1 + X")) == 0


def test_values_over_extension(sqrt2):
    V = PlaneValuation.from_steps(["Free(0)", "Free(alpha)"], sqrt2)
    # Y^2 - 2X^2 splits into two lines over Q(sqrt2), one through the point
    assert V.value(P("Y^2 - 2*X^2")) == 3
    assert V.value(P("Y - X")) == 1


@settings(max_examples=80)
@given(st.integers(0, 10 ** 6), st.booleans(), st.data())
def test_value_is_a_valuation(seed, ext, data):
    V = chain(seed, ext)
    polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                            st.integers(-3, 3).filter(bool), max_size=4)
    f = MultiPoly(QQField, ("X", "Y"), {e: QQField(c) for e, c in data.draw(polys).items()})
    g = MultiPoly(QQField, ("X", "Y"), {e: QQField(c) for e, c in data.draw(polys).items()})
    vf, vg = V.value(f), V.value(g)
    assert V.value(f * g) == vf + vg
    assert V.value(f + g) >= min(vf, vg)
    if f and f.constant_term():
        assert vf == 0
    assert V.noether_value(f) == vf


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_proximity_equalities(seed, ext):
    V = chain(seed, ext)
    prox = V.seq.proximity
    assert V.mult[-1] == 1
    for i in range(V.n):
        near = [j for j in range(i + 1, V.n) if i in prox[j]]
        if near:
            assert V.mult[i] == sum(V.mult[j] for j in near)
    assert all(len(p) <= 2 for p in prox)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_chi_is_dimension_of_generated_field(seed):
    V = chain(seed, extension=True)
    irrational = any(c != K2(QQField.fmt(c.c[0])) for c in V.seq.constants())
    assert V.chi == (2 if irrational else 1)


# -- curvettes ---------------------------------------------------------------------

def test_curvette_examples():
    c = curvette(order_valuation(), c_star=1)
    assert c.equation.origin_order() == 1
    c = curvette(CUSP, c_star=1)
    assert c.equation.origin_order() == 2
    assert CUSP.value(c.equation) == 6
    V = PlaneValuation.from_steps(["Free(0)", "Free(1)"])
    c = curvette(V, c_star=1)
    assert c.equation.origin_order() == 1
    assert V.value(c.equation) == 2


def test_curvette_degenerate_constant():
    with pytest.raises(DegenerateConstant):
        curvette(CUSP, c_star=0)
    with pytest.raises(DegenerateConstant):
        curvette(CUSP, c_star=2, avoid=[2])


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_curvette_value_independent_of_constant(seed):
    V = chain(seed)
    a = curvette(V, c_star=1)
    b = curvette(V, c_star=-3)
    self_contact = sum(m * m for m in V.mult)
    assert V.value(a.equation) == V.value(b.equation) == self_contact
    assert a.equation.origin_order() == V.mult[0]


# -- testing curves ------------------------------------------------------------------

def test_testing_curve_examples():
    assert curve_value("Y + 3*X", 3) == 2
    assert curve_value("Y + 3*X", 5) == 1
    assert curve_value("X", "inf") == 2
    assert curve_value("Y + X^2", 0) == 2


def test_testing_curve_needs_order_one():
    with pytest.raises(NotUnitOrder):
        curve_value("Y^2 - X^3", 0)
    with pytest.raises(NotUnitOrder):
        curve_value("1 + X", 0)


def test_demo_rows():
    table = demo_testing_curve(["0", "1", "2"], ["Y + X"])
    assert table.rows[0][1] == [1, 2, 1]
    assert demo_testing_curve(["0", "1"], ["Y"]).rows[0][1] == [2, 1]
    assert demo_testing_curve(["0", "1", "inf"], ["X"]).rows[0][1] == [1, 1, 2]


def test_demo_default_catalog_has_one_two_per_row():
    table = demo_testing_curve()
    for _, vals, _ in table.rows:
        assert sorted(vals) == [1] * (len(vals) - 1) + [2]

