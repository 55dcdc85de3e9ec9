"""Property tests for the invariants of each module."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from findom import matrices as mx
from findom.complexes import ChainMap, base_change, base_change_map, cone, identity_map, substitute_complex
from findom.detector import CONTRACTIBLE, check_finite_domination, eliminate, replay
from findom.flavors import (
    contains_monomial,
    corner_novikov,
    detection_flavors,
    face_algebra,
    flavor_by_name,
    flavor_names,
    invert,
    is_unit,
)
from findom.homology import homology_all, smith_normal_form
from findom.laurent import LaurentPoly, substitute
from findom.multicomplex import tensor_double, tot_sum
from findom.square import augmented_row, build_Bprime, extend, graded_piece
from findom.synthetic import commuting_pair, homotopic_to_scalar, random_complex, random_matrix
from findom.tori import TensorElement, gamma, mapping_torus_2, twisted_homotopy
from findom.synthetic import homotopy_to_identity

from helpers import random_laurent_complex

exps = st.integers(-3, 3)
monomials = st.tuples(exps, exps)
polys = st.dictionaries(monomials, st.integers(-3, 3).filter(bool), max_size=6).map(LaurentPoly)
signs = st.sampled_from([1, -1])
seeds = st.integers(0, 10**6)

SETTINGS = settings(max_examples=40, deadline=None)


# laurent -------------------------------------------------------------------------------


@SETTINGS
@given(polys, polys)
def test_product_support_in_minkowski_sum(p, q):
    mink = {(a + c, b + d) for a, b in p.support() for c, d in q.support()}
    assert (p * q).support() <= mink


@SETTINGS
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@SETTINGS
@given(polys, polys, signs, signs, st.booleans())
def test_substitute_is_multiplicative(p, q, sx, sy, swap):
    assert substitute(p * q, sx, sy, swap) == substitute(p, sx, sy, swap) * substitute(q, sx, sy, swap)


# flavors --------------------------------------------------------------------------------


@SETTINGS
@given(polys, signs, signs)
def test_corner_units_equivariant(p, sx, sy):
    assert bool(is_unit(corner_novikov(sx, sy), p)) == bool(is_unit(corner_novikov(1, 1), substitute(p, sx, sy)))


@SETTINGS
@given(polys, st.sampled_from(range(8)))
def test_units_have_verified_inverses(p, k):
    f = detection_flavors()[k]
    if is_unit(f, p):
        n = max(4 * max(1, _spread(p)), 8)
        s = invert(f, p, n)
        assert ((s.terms * p) - 1).clip(s.radius).is_zero()


def _spread(p):
    from findom.laurent import spread

    return spread(p)


@SETTINGS
@given(st.sampled_from(flavor_names()), monomials, monomials)
def test_membership_closed_under_products(name, a, b):
    f = flavor_by_name(name)
    if contains_monomial(f, a) and contains_monomial(f, b):
        assert contains_monomial(f, (a[0] + b[0], a[1] + b[1]))


# complexes ------------------------------------------------------------------------------


@SETTINGS
@given(seeds)
def test_cone_is_a_complex_and_euler_additive(seed):
    rng = random.Random(seed)
    c = random_complex(rng, 3, 2)
    f, _ = homotopic_to_scalar(rng, c, rng.choice([0, 1, 2]))
    cc = cone(f)
    assert cc.validate().ok
    assert cc.euler_characteristic() == c.euler_characteristic() - c.euler_characteristic()


@SETTINGS
@given(seeds)
def test_base_change_commutes_with_cone(seed):
    rng = random.Random(seed)
    c = random_complex(rng, 3, 2)
    f, _ = homotopic_to_scalar(rng, c, 1)
    g = corner_novikov(1, -1)
    assert base_change(cone(f), g) == cone(base_change_map(f, g))


# multicomplex -------------------------------------------------------------------------------


@SETTINGS
@given(seeds)
def test_tensor_double_is_a_double_complex(seed):
    rng = random.Random(seed)
    dc = tensor_double(random_complex(rng, 3, 2), random_complex(rng, 3, 2))
    assert dc.check() == []
    assert tot_sum(dc).validate().ok


# homology ------------------------------------------------------------------------------------


@SETTINGS
@given(seeds, st.integers(1, 12), st.integers(1, 12))
def test_snf_identity(seed, r, c):
    rng = random.Random(seed)
    M = random_matrix(rng, r, c, -50, 50)
    res = smith_normal_form(M)
    assert mx.equal(mx.chain(res.U, M, res.V), res.D)
    diag = res.invariant_factors
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


@SETTINGS
@given(seeds)
def test_cone_of_identity_is_acyclic(seed):
    c = random_complex(random.Random(seed), 3, 2)
    assert all(h == (0, []) for h in homology_all(cone(identity_map(c))).values())


# tori ------------------------------------------------------------------------------------------


@SETTINGS
@given(seeds)
def test_twisted_torus_is_a_complex(seed):
    rng = random.Random(seed)
    c = random_complex(rng, 3, 2)
    f, g = commuting_pair(rng, c)
    h, A = homotopy_to_identity(rng, c)
    T = mapping_torus_2(h.compose(f), h.compose(g), twisted_homotopy(f, g, h, A))
    assert T.validate().ok


@SETTINGS
@given(st.lists(polys, min_size=1, max_size=3))
def test_gamma_of_inclusion_is_identity(vec):
    z = TensorElement.inner(vec)
    assert [LaurentPoly(v) for v in gamma(z)[:, 0]] == vec


# square ------------------------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(-10, 10), st.integers(-10, 10))
def test_row_exact_at_every_degree(k, a, b):
    g = graded_piece(augmented_row(k), (a, b))
    assert all(h == (0, []) for h in homology_all(g).values())


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_extend_and_bprime(seed):
    rng = random.Random(seed)
    C = random_laurent_complex(rng, rng.choice(["cone", "twisted"]))
    _, Y = extend(C)
    assert Y.check() == []
    bp = build_Bprime(C)
    assert bp.complex.validate().ok and not bp.chi.failures()


# detector ------------------------------------------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(seeds, signs, signs, st.booleans())
def test_verdict_equivariance(seed, sx, sy, swap):
    from findom.detector import transformed_report

    C = random_laurent_complex(random.Random(seed))
    base = {v.flavor.name: v.outcome for v in check_finite_domination(C).verdicts}
    got, _ = transformed_report(C, sx, sy, swap)
    assert got == base


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_certificates_replay(seed):
    C = random_laurent_complex(random.Random(seed))
    for v in check_finite_domination(C).verdicts:
        if v.outcome == CONTRACTIBLE:
            assert replay(C, v) == []


@SETTINGS
@given(polys)
def test_rank_one_verdicts_match_units(p):
    from findom.fixtures import cone_of

    for f in detection_flavors():
        assert (eliminate(cone_of(p), f).outcome == CONTRACTIBLE) == bool(is_unit(f, p))
