import pytest

from findom.complexes import FreeComplex, substitute_complex
from findom.detector import (
    CONTRACTIBLE,
    FINITELY_DOMINATED,
    INCONCLUSIVE,
    NON_ACYCLIC,
    NOT_FINITELY_DOMINATED,
    check_finite_domination,
    eliminate,
    replay,
    transformed_report,
    witness,
)
from findom.errors import WindowTooSmall
from findom.fixtures import MU, NU, cone_of, koszul_example
from findom.flavors import FULL_LAURENT, corner_novikov, detection_flavors, edge_novikov, is_unit
from findom.laurent import LaurentPoly

X, Y = LaurentPoly.x(), LaurentPoly.y()


def test_monomial_cone_contractible_everywhere():
    C = cone_of(-LaurentPoly.monomial(3, -2))
    for f in detection_flavors():
        v = eliminate(C, f)
        assert v.outcome == CONTRACTIBLE and len(v.pivots) == 1
        assert replay(C, v) == []


def test_one_plus_x():
    C = cone_of(1 + X)
    v = eliminate(C, edge_novikov("y", 1))
    assert v.outcome == NON_ACYCLIC
    rep = check_finite_domination(C)
    assert rep.overall == NOT_FINITELY_DOMINATED and rep.failing == edge_novikov("y", 1)


def test_example_two_pivots(example):
    v = eliminate(example, corner_novikov(1, 1))
    assert v.outcome == CONTRACTIBLE and len(v.pivots) == 2
    assert v.pivots[0].entry == MU
    assert replay(example, v) == []


def test_example_pivot_partition(example):
    rep = check_finite_domination(example)
    assert rep.overall == FINITELY_DOMINATED
    mu_rings = {v.flavor.name for v in rep.verdicts if v.first_pivot == MU}
    nu_rings = {v.flavor.name for v in rep.verdicts if v.first_pivot == NU}
    assert mu_rings == {"Nov(x,y)", "Nov(x^-1,y)", "Lx.Nov(y^-1)", "Ly.Nov(x)"}
    assert len(nu_rings) == 4 and not mu_rings & nu_rings


def test_euler_characteristic_obstruction():
    C = FreeComplex({0: 1, 1: 2}, {0: [[1], [X]]}, FULL_LAURENT)
    v = eliminate(C, corner_novikov(1, 1))
    assert v.outcome == NON_ACYCLIC and "Euler" in v.obstruction


def test_inconclusive_when_stuck():
    # no entry is a unit of Z[x,1/x]((y)) and no exact obstruction applies
    C = FreeComplex({0: 2, 1: 2}, {0: [[1 + X, 2], [2, 1 - X]]}, FULL_LAURENT)
    v = eliminate(C, edge_novikov("y", 1))
    assert v.outcome == INCONCLUSIVE and v.stuck_ranks == {0: 2, 1: 2}


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        eliminate(cone_of(1 + X**5), corner_novikov(1, 1), window=3)
    rep = check_finite_domination(cone_of(1 + X**5), window=3)
    assert rep.verdict("Nov(x,y)").outcome == INCONCLUSIVE


def test_report_embeds_window(example):
    rep = check_finite_domination(example, window=20)
    js = rep.to_json()
    assert js["window"] == 20 and js["guaranteed_radius"] == 18
    assert all(f["window"] == 20 for f in js["flavors"])


def test_verdicts_match_is_unit_for_rank_one(rng):
    from helpers import random_poly

    for _ in range(30):
        p = random_poly(rng, 4, -2, 2)
        C = cone_of(p)
        for f in detection_flavors():
            want = CONTRACTIBLE if is_unit(f, p) else NON_ACYCLIC
            assert eliminate(C, f).outcome == want


def test_equivariance_of_example(example):
    base = {v.flavor.name: v.outcome for v in check_finite_domination(example).verdicts}
    for sx in (1, -1):
        for sy in (1, -1):
            for swap in (False, True):
                got, overall = transformed_report(example, sx, sy, swap)
                assert got == base and overall == FINITELY_DOMINATED


def test_witness_trivial():
    w = witness(FreeComplex({0: 1}, {}, FULL_LAURENT))
    assert w.ranks == {0: 1} and w.homology[0] == (1, [])


def test_witness_example(example):
    w = witness(example)
    assert w.ranks == {0: 1, 1: 50, 2: 81}
    assert all(w.transcript.values())
