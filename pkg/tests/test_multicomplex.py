import pytest

from helpers import blt_cocycle, blt_instance, lt_cocycle, lt_instance
from findom import matrices as mx
from findom.complexes import ChainMap, FreeComplex, cone, identity_map
from findom.errors import NotInKernel, WindowTooSmall
from findom.multicomplex import (
    DoubleComplex,
    TriangularStructure,
    augment,
    contract_blt,
    contract_lt,
    partial_tot_xy,
    tensor_double,
    tensor_triple,
    tot_sum,
    triangular_filtration,
    truncated_tot,
)
from findom.synthetic import homotopic_to_scalar, random_complex
from findom.tori import mapping_torus_1, mapping_torus_bicomplex


def test_two_column_double_complex_is_a_cone(rng):
    c = random_complex(rng, 3, 2)
    f, _ = homotopic_to_scalar(rng, c, 2)
    # columns -1 (X[1] with -d) and 0 (Y) joined by f
    ranks, dh, dv = {}, {}, {}
    for n in c.degrees():
        ranks[(-1, n)] = c.rank(n)
        ranks[(0, n)] = c.rank(n)
        dh[(-1, n)] = f.at(n)
        dv[(-1, n)] = -c.d(n)
        dv[(0, n)] = c.d(n)
    dc = DoubleComplex(ranks, dh, dv, c.flavor)
    assert not dc.check()
    assert tot_sum(dc) == cone(f)


def test_single_column():
    c = FreeComplex.from_lists({0: 1, 1: 1}, {0: [[3]]})
    dc = DoubleComplex({(0, 0): 1, (0, 1): 1}, {}, {(0, 0): [[3]]}, c.flavor)
    assert tot_sum(dc) == c


def test_partial_totalisation_commutes_with_tot(rng):
    for _ in range(5):
        cs = [random_complex(rng, 2, 2) for _ in range(3)]
        tc = tensor_triple(*cs)
        assert not tc.check()
        dc = partial_tot_xy(tc)
        assert not dc.check()
        assert tot_sum(dc) == tot_sum(tc)


def test_truncated_tot_of_zero():
    assert truncated_tot(DoubleComplex({}), "lt", (0, 3)).is_zero()


def test_truncated_tot_column_supported(rng):
    c = random_complex(rng, 3, 2)
    dc = tensor_double(FreeComplex.from_lists({0: 1}, {}), c)
    assert truncated_tot(dc, "lt", (-2, 2)) == tot_sum(dc)


def test_mapping_torus_bicomplex_window(rng):
    c = random_complex(rng, 2, 2)
    h, _ = homotopic_to_scalar(rng, c, 1)
    bc = mapping_torus_bicomplex(h, (0, 3))
    assert not bc.check()
    t = truncated_tot(bc, "lt", (0, 3))
    assert t.validate().ok
    with pytest.raises(WindowTooSmall):
        truncated_tot(bc, "lt", (0, 4))
    # the z^0 column is T(h) at x = 0: (a, b) -> (-d a, h a + d b)
    T = mapping_torus_1(h)
    for n in T.degrees():
        assert mx.equal(bc.v(0, n), mx.apply_entrywise(T.d(n), lambda p: p.coeff(0, 0) if hasattr(p, "coeff") else p))


def test_contract_lt_zero_cocycle(rng):
    dc, s, w = lt_instance(rng)
    r = contract_lt(dc, s, {}, 1, w)
    assert r.verified and all(mx.is_zero(v) for v in r.preimage.values())


def test_contract_lt_single_exact_column():
    dc = DoubleComplex({(0, 0): 1, (0, 1): 1}, {}, {(0, 0): [[1]]})
    r = contract_lt(dc, {(0, 1): mx.as_matrix([[1]])}, {0: [1]}, 1, (0, 0))
    assert r.verified and r.preimage[(0,)][0, 0] == 1


def test_contract_lt_random(rng):
    for _ in range(10):
        dc, s, w = lt_instance(rng)
        for deg in sorted({p + q for p, q in dc.positions()}):
            m = lt_cocycle(rng, dc, w, deg)
            assert contract_lt(dc, s, m, deg, w).verified


def test_contract_lt_rejects_non_cocycles():
    dc = DoubleComplex({(0, 0): 1, (0, 1): 1}, {}, {(0, 0): [[1]]})
    with pytest.raises(NotInKernel):
        contract_lt(dc, {(0, 1): mx.as_matrix([[1]])}, {0: [1]}, 0, (0, 0))


def test_contract_blt_random(rng):
    for _ in range(10):
        tc, s, w = blt_instance(rng)
        assert contract_blt(tc, s, {}, 1, w).verified
        for deg in sorted({sum(k) for k in tc.positions()}):
            m = blt_cocycle(rng, tc, w, deg)
            assert contract_blt(tc, s, m, deg, w).verified


def test_triangular_filtration_two_blocks(rng):
    c = random_complex(rng, 2, 2)
    f, _ = homotopic_to_scalar(rng, c, 1)
    cc = cone(f)
    ts = TriangularStructure(cc, {n: [c.rank(n + 1), c.rank(n)] for n in cc.degrees()})
    steps = triangular_filtration(ts)
    assert len(steps) == 2
    assert steps[1].sub == steps[1].quotient
    assert all(not st.inclusion.failures() and not st.projection.failures() for st in steps)


def test_triangular_filtration_single_block(rng):
    c = random_complex(rng, 3, 2)
    steps = triangular_filtration(TriangularStructure(c, {n: [c.rank(n)] for n in c.degrees()}))
    assert len(steps) == 1 and steps[0].quotient == c


def test_augment_column_zero_is_identity(rng):
    c = random_complex(rng, 3, 2)
    E = DoubleComplex({(0, n): c.rank(n) for n in c.degrees()}, {}, {(0, n): c.d(n) for n in c.degrees()}, c.flavor)
    a = augment(c, E, {n: mx.identity(c.rank(n)) for n in c.degrees()})
    assert not a.failures()
    assert all(mx.equal(a.at(n), identity_map(c).at(n)) for n in c.degrees())
