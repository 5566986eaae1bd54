import pytest
from hypothesis import given, settings, strategies as st

from conftest import P
from reesval.contact import noether_contact
from reesval.errors import NotPrimary, RootOutsideField
from reesval.local import colength
from reesval.pencil import Pencil, completion_values, resolve, zariski_exponents
from reesval.plane import AtInfinity, PlaneValuation, order_valuation
from reesval.suites import random_pencil

CUSP = PlaneValuation.from_steps(["Free(0)", "Free(0)", "inf"])


def steps_of(V):
    return [repr(s) for s in V.steps]


def exponents(F, G, field=None):
    pen = Pencil(F, G, field=field)
    return [(steps_of(V), n) for V, n in zariski_exponents(pen, resolve(pen, check=True))]


def test_lines_give_the_order_valuation():
    tree = resolve(Pencil("X", "Y"))
    assert [steps_of(V) for V in tree.dicriticals()] == [["Free(0)"]]
    assert exponents("X", "Y") == [(["Free(0)"], 1)]


def test_cusp_pencil():
    (V,) = resolve(Pencil("Y^2", "X^3")).dicriticals()
    assert V.steps[2] is AtInfinity and V.mult == (2, 1, 1)
    assert exponents("Y^2", "X^3") == [(steps_of(CUSP), 1)]


def test_two_tangents_separated_at_the_origin():
    # X^2 and Y(Y-X) restrict to non-proportional quadrics with no common root
    assert exponents("X^2", "Y*(Y - X)") == [(["Free(0)"], 2)]


def test_general_member_of_a_cusp_pencil():
    # Y^2 - X^2 Y + t X^3 is a cusp for general t: one dicritical
    assert exponents("(Y - X^2)*Y", "X^3") == [(steps_of(CUSP), 1)]


@pytest.mark.parametrize("F, G, expected", [
    ("Y*(Y - X^2)", "X^5", [(["Free(0)", "Free(0)", "Free(0)"], 1),
                            (["Free(0)", "Free(0)", "Free(1)"], 1)]),
    ("X*Y", "X^3 + Y^3", [(["Free(0)", "AtInfinity"], 1), (["Free(0)", "Free(0)"], 1)]),
    ("X^2*Y", "Y^3 + X^4", [(["Free(0)"], 2), (["Free(0)", "Free(0)"], 1)]),
    ("Y^2*(Y - X)", "X^4", [(steps_of(CUSP), 1), (["Free(0)", "Free(1)"], 1)]),
])
def test_two_dicriticals(F, G, expected):
    assert exponents(F, G) == expected


def test_completion_values():
    assert completion_values(Pencil("Y^2", "X^3"), CUSP) == 6
    assert completion_values(Pencil("X", "Y"), order_valuation()) == 1
    assert completion_values(Pencil("Y^2", "X^3"), order_valuation()) == 2


def test_common_factor_is_stripped():
    pen = Pencil("X*(Y + 1)", "Y*(Y + 1)")
    assert pen.F == P("X") and pen.G == P("Y")
    with pytest.raises(NotPrimary):
        Pencil("X", "X*Y")


def test_extension_needed():
    with pytest.raises(RootOutsideField) as err:
        resolve(Pencil("Y^2 - 2*X^2", "X^3"))
    assert "v**2 - 2" in str(err.value)


def test_conjugate_base_points_over_sqrt2(sqrt2):
    result = exponents("Y^2 - 2*X^2", "X^3", field=sqrt2)
    assert result == [(["Free(0)", "Free(alpha)"], 1), (["Free(0)", "Free(-alpha)"], 1)]


def test_intersection_drops_by_squared_multiplicity():
    tree = resolve(Pencil("Y*(Y - X^2)", "X^5"), check=True)
    assert tree.root.local_iota == colength([P("Y*(Y - X^2)"), P("X^5")]) == 10
    assert tree.multiplicity_square_sum() == 10


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_resolution_properties(seed):
    F, G = random_pencil(seed)
    pen = Pencil(F, G)
    tree = resolve(pen, check=True)
    comps = zariski_exponents(pen, tree)
    assert all(n >= 1 for _, n in comps)
    # re-substitute the solved system
    for Vk in tree.dicriticals():
        lhs = sum(n * noether_contact(Vk, Vi) for Vi, n in comps)
        assert lhs == completion_values(pen, Vk)
    # the colength of the pencil is the multiplicity square sum
    assert tree.multiplicity_square_sum() == colength([pen.F, pen.G])
    swapped = zariski_exponents(Pencil(G, F))
    assert [(steps_of(V), n) for V, n in swapped] == [(steps_of(V), n) for V, n in comps]


def test_dicritical_restrictions_are_not_proportional():
    tree = resolve(Pencil("Y^2*(Y - X)", "X^4"))
    flags = [p.dicritical for p in tree.points()]
    assert flags.count(True) == 2
