from findom import matrices as mx
from findom.complexes import (
    ChainMap,
    FreeComplex,
    Homotopy,
    base_change,
    check_homotopy,
    cone,
    direct_sum,
    identity_map,
    shift,
    single,
    zero_map,
)
from findom.flavors import FULL_LAURENT, corner_novikov
from findom.homology import homology_all
from findom.laurent import LaurentPoly
from findom.synthetic import commuting_pair, random_complex

X = LaurentPoly.x()


def test_validate_examples(example):
    assert FreeComplex.zero().validate().ok
    assert FreeComplex({0: 1, 1: 1}, {0: [[1 + X]]}).validate().ok
    assert example.validate().ok


def test_cone_of_map_from_zero():
    c = single(1 + X)
    z = FreeComplex.zero()
    assert cone(zero_map(z, c)) == c


def test_cone_of_identity_is_acyclic():
    c = FreeComplex({0: 1}, {}, FULL_LAURENT)
    cc = cone(identity_map(c))
    assert cc.ranks == {-1: 1, 0: 1} and mx.equal(cc.d(-1), mx.as_matrix([[1]]))


def test_cone_of_two():
    # Z in degree 1 mapping to Z in degree 1 by 2: the cone is Z --2--> Z in degrees 0, 1
    z = FreeComplex.from_lists({1: 1}, {})
    cc = cone(ChainMap(z, z, {1: mx.as_matrix([[2]])}))
    h = homology_all(cc)
    assert h[0] == (0, []) and h[1] == (0, [2])


def test_shift_and_sum(example):
    assert shift(example, 0) == example
    assert shift(shift(example, 1), -1) == example
    assert direct_sum(example, FreeComplex.zero()) == example


def test_base_change(example):
    b = base_change(example, corner_novikov(1, 1))
    assert b.flavor == corner_novikov(1, 1)
    assert all(mx.equal(b.d(n), example.d(n)) for n in example.degrees())
    assert base_change(FreeComplex.zero(), corner_novikov(1, 1)).is_zero()


def test_homotopy_examples(rng):
    c = random_complex(rng, 3, 2)
    f, g = commuting_pair(rng, c)
    zero = {n: mx.zeros(c.rank(n - 1), c.rank(n)) for n in c.degrees()}
    assert check_homotopy(Homotopy(f, f, zero))
    assert check_homotopy(Homotopy(f.compose(g), g.compose(f), zero))


def test_homotopy_rejects_noncommuting():
    c = FreeComplex.from_lists({0: 2}, {})
    f = ChainMap(c, c, {0: mx.as_matrix([[1, 1], [0, 1]])})
    g = ChainMap(c, c, {0: mx.as_matrix([[1, 0], [1, 1]])})
    assert not check_homotopy(Homotopy(f.compose(g), g.compose(f), {0: mx.zeros(0, 2)}))


def test_json_roundtrip(example):
    assert FreeComplex.from_json(example.to_json()) == example
