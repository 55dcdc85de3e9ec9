import pytest

from findom.errors import InputError
from findom.laurent import LaurentPoly, multiply, radius, substitute, support_box

X, Y = LaurentPoly.x(), LaurentPoly.y()


def test_difference_of_squares():
    assert multiply(1 + X, 1 - X) == 1 - X**2


def test_expand_mu():
    mu = 1 + X * (Y**2 + X * (1 + Y))
    assert mu == LaurentPoly({(0, 0): 1, (1, 2): 1, (2, 0): 1, (2, 1): 1})


def test_inverse_monomials():
    assert LaurentPoly.monomial(-1, 1) * LaurentPoly.monomial(1, -1) == 1


def test_no_zero_coefficients():
    p = (1 + X) - X
    assert p.terms == {(0, 0): 1}
    assert LaurentPoly({(1, 1): 0}).is_zero()


@pytest.mark.parametrize(
    "p, box",
    [
        (1 + X * Y**2 + X**2 + X**2 * Y, (0, 2, 0, 2)),
        (LaurentPoly(0), None),
        (LaurentPoly.monomial(-3, 5), (-3, -3, 5, 5)),
    ],
)
def test_support_box(p, box):
    assert support_box(p) == box


@pytest.mark.parametrize(
    "p, args, want",
    [
        (X + Y**2, (-1, 1, False), LaurentPoly.monomial(-1, 0) + Y**2),
        (X + Y**2, (1, 1, True), Y + X**2),
        (LaurentPoly.monomial(1, -1), (-1, -1, False), LaurentPoly.monomial(-1, 1)),
    ],
)
def test_substitute(p, args, want):
    assert substitute(p, *args) == want


def test_big_coefficients_are_exact():
    p = LaurentPoly({(0, 0): 10**40})
    assert (p * p).coeff(0, 0) == 10**80


def test_json_roundtrip_and_order():
    p = 3 * X * Y - LaurentPoly.monomial(-2, 0) + 7
    data = p.to_json()
    # canonical order: by (ey, ex)
    assert [(t["x"], t["y"]) for t in data] == [(-2, 0), (0, 0), (1, 1)]
    assert LaurentPoly.from_json(data) == p


def test_json_errors_carry_location():
    with pytest.raises(InputError) as e:
        LaurentPoly.from_json([{"c": "1", "x": "a"}], "diff.0[0][0]")
    assert e.value.location == "diff.0[0][0][0].x"


def test_radius():
    assert radius(X**3 * LaurentPoly.monomial(0, -4)) == 4
    assert radius(LaurentPoly(0)) == 0
