import pytest

from findom.errors import NotAnElement, NotUnit
from findom.flavors import (
    TruncatedSeries,
    contains_monomial,
    corner_novikov,
    corner_power,
    detection_flavors,
    edge_novikov,
    face_algebra,
    flavor_by_name,
    initial_form_obstruction,
    invert,
    is_unit,
    nerve_ring,
    series_arith,
)
from findom.laurent import LaurentPoly

X, Y = LaurentPoly.x(), LaurentPoly.y()
MU = 1 + X * Y**2 + X**2 + X**2 * Y
NOV = corner_novikov(1, 1)


def test_membership_examples():
    assert contains_monomial(face_algebra("v_br"), (-3, 2))
    assert not contains_monomial(corner_power(1, 1), (-1, 0))
    assert contains_monomial(NOV, (-7, -7))


def test_membership_table():
    assert contains_monomial(face_algebra("e_b"), (-5, 0)) and not contains_monomial(face_algebra("e_b"), (0, -1))
    assert contains_monomial(face_algebra("e_t"), (4, -2)) and not contains_monomial(face_algebra("e_t"), (0, 1))
    assert contains_monomial(face_algebra("e_l"), (0, 9)) and not contains_monomial(face_algebra("e_l"), (-1, 0))
    assert contains_monomial(face_algebra("e_r"), (-1, 9)) and not contains_monomial(face_algebra("e_r"), (1, 0))
    assert all(contains_monomial(face_algebra("S"), (a, b)) for a in (-3, 3) for b in (-3, 3))
    # the corner Novikov ring at {v_tr, S}, per the ring table
    assert nerve_ring(("v_tr", "S")) == corner_novikov(-1, -1)


def test_unit_examples():
    assert is_unit(NOV, -LaurentPoly.monomial(3, -2)).leading == (3, -2)
    assert is_unit(NOV, MU).leading == (0, 0)
    assert is_unit(corner_novikov(-1, 1), MU).leading == (2, 0)
    assert is_unit(edge_novikov("y", -1), MU).leading == (1, 2)
    assert is_unit(edge_novikov("x", 1), MU).leading == (0, 0)
    assert not is_unit(edge_novikov("y", 1), LaurentPoly(2))
    for f in detection_flavors():
        assert not is_unit(f, LaurentPoly(0))


def test_mu_is_a_unit_in_exactly_four_rings():
    names = {f.name for f in detection_flavors() if is_unit(f, MU)}
    assert names == {"Nov(x,y)", "Nov(x^-1,y)", "Lx.Nov(y^-1)", "Ly.Nov(x)"}


def test_power_series_rejects_non_elements():
    with pytest.raises(NotAnElement):
        is_unit(corner_power(1, 1), LaurentPoly.monomial(-1, 0))


def test_invert_examples():
    assert invert(NOV, 1 - X, 3).terms == 1 + X + X**2 + X**3
    assert invert(NOV, X, 5).terms == LaurentPoly.monomial(-1, 0)
    s = invert(NOV, MU, 2)
    assert s.terms == 1 - X**2 - X * Y**2 - X**2 * Y
    with pytest.raises(NotUnit):
        invert(NOV, 1 + LaurentPoly.monomial(1, -1), 4)


def test_inverse_is_exact_on_guaranteed_box():
    s = invert(NOV, MU, 12)
    assert s.radius == 10
    assert ((s.terms * MU) - 1).clip(s.radius).is_zero()


def test_series_arith():
    a = TruncatedSeries.from_poly(NOV, 1 + X, 5)
    b = TruncatedSeries.from_poly(NOV, 1 - X, 5)
    assert (a + b).terms == 2
    assert (a * b).terms == 1 - X**2
    xi = invert(NOV, X, 2)
    assert (xi * TruncatedSeries.from_poly(NOV, X, 2)).terms == 1


def test_detection_flavors():
    fl = detection_flavors()
    assert len(fl) == 8 and fl[0] == corner_novikov(1, 1)
    assert all(contains_monomial(f, (a, b)) for f in fl for a in range(-4, 5) for b in range(-4, 5))


def test_initial_form_obstruction():
    w, init = initial_form_obstruction(edge_novikov("y", 1), 1 + X)
    assert init == 1 + X
    assert initial_form_obstruction(NOV, MU) is None


def test_flavor_names_roundtrip():
    for f in detection_flavors():
        assert flavor_by_name(f.name) == f
