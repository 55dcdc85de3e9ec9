"""
Acceptance criteria.  Each test prints one ``[criterion N] PASS|FAIL``
line; run ``python3 tests/test_acceptance.py`` for the summary alone.
"""

import random
import sys
import time

import numpy as np
import pytest

from findom import matrices as mx
from findom.detector import CONTRACTIBLE, FINITELY_DOMINATED, check_finite_domination, transformed_report, witness
from findom.fixtures import MU, MU_FLAVORS, NU, cone_of, koszul_example
from findom.flavors import contains_monomial, detection_flavors, face_algebra, initial_form_obstruction, invert, is_unit
from findom.homology import smith_normal_form, window_exact
from findom.laurent import LaurentPoly, radius, spread
from findom.multicomplex import contract_blt, contract_lt
from findom.square import FACES, augmented_row, build_Bprime, graded_piece, nerve_diagram
from findom.synthetic import commuting_pair, homotopy_to_identity, random_complex, random_matrix
from findom.tori import iterated_cone_square, mapping_torus_2, phi, phi_entry_41, twisted_homotopy

from helpers import blt_cocycle, blt_instance, lt_cocycle, lt_instance, random_laurent_complex

SEED = 1729


def report(n, ok, detail):
    print(f"[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def _box(r):
    return [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]


# 1 -----------------------------------------------------------------------------------------------


def _oracle_unit(f, p):
    """Independent unit test: an extremal support point dominating all others, coefficient ±1."""
    if p.is_zero():
        return False
    if f.kind == "corner_novikov":
        pts = {(f.sx * a, f.sy * b): c for (a, b), c in p.items()}
        for m, c in pts.items():
            if abs(c) == 1 and all(q[0] >= m[0] and q[1] >= m[1] for q in pts):
                return True
        return False
    # edge rings: the extreme slice in the series direction is ±monomial
    idx = 0 if f.axis == "x" else 1
    sign = f.sx if f.axis == "x" else f.sy
    lo = min(sign * m[idx] for m in p.support())
    slice_ = [c for m, c in p.items() if sign * m[idx] == lo]
    return len(slice_) == 1 and abs(slice_[0]) == 1


def criterion_1():
    rng = random.Random(SEED)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        p = LaurentPoly({(rng.randint(-3, 3), rng.randint(-3, 3)): rng.choice([-2, -1, 1, 2, 3]) for _ in range(rng.randint(1, 6))})
        # 4·spread past the support radius, so the guaranteed sub-window has radius 4·spread
        N = radius(p) + max(4 * spread(p), 1)
        for f in detection_flavors():
            claimed = bool(is_unit(f, p))
            if claimed:
                s = invert(f, p, N)
                exists = s.radius >= 0 and ((s.terms * p) - 1).clip(s.radius).is_zero()
            else:
                # no inverse: an initial form that is not ±monomial is an exact certificate
                exists = initial_form_obstruction(f, p) is None
            if claimed != exists or claimed != _oracle_unit(f, p):
                bad += 1
    dt = time.perf_counter() - t0
    return bad == 0 and dt < 10, f"{bad} disagreements in 1600 cases, {dt:.2f}s"


# 2 ----------------------------------------------------------------------------------------------


def criterion_2():
    rng = random.Random(SEED + 2)
    agree = 0
    cases = []
    for _ in range(50):
        cases.append(LaurentPoly.monomial(rng.randint(-4, 4), rng.randint(-4, 4), rng.choice([1, -1])))
    while len(cases) < 100:
        p = LaurentPoly({(rng.randint(-3, 3), rng.randint(-3, 3)): rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(rng.randint(1, 5))})
        single = p.leading_single()
        if p.is_zero() or (single is not None and abs(single[1]) == 1):
            continue
        cases.append(p)
    for p in cases:
        expect = p.is_monomial() and abs(p.leading_single()[1]) == 1
        got = check_finite_domination(cone_of(p)).overall == FINITELY_DOMINATED
        agree += expect == got
    return agree == 100, f"{agree}/100 verdicts match the ±monomial criterion"


# 3 -------------------------------------------------------------------------------------------------


def criterion_3():
    t0 = time.perf_counter()
    rep = check_finite_domination(koszul_example(), window=32)
    dt = time.perf_counter() - t0
    all_c = all(v.outcome == CONTRACTIBLE for v in rep.verdicts)
    mu = {v.flavor.name for v in rep.verdicts if v.first_pivot == MU}
    nu = {v.flavor.name for v in rep.verdicts if v.first_pivot == NU}
    others = {f.name for f in detection_flavors()} - set(MU_FLAVORS)
    ok = all_c and mu == set(MU_FLAVORS) and nu == others and rep.overall == FINITELY_DOMINATED and dt < 5
    return ok, f"overall {rep.overall}, mu pivots {sorted(mu)}, nu pivots {sorted(nu)}, {dt:.2f}s"


# 4 ---------------------------------------------------------------------------------------------------


def criterion_4():
    t0 = time.perf_counter()
    failures = 0
    checked = 0
    for k in range(5):
        row = augmented_row(k)
        v = window_exact(lambda d: graded_piece(row, d), _box(10))
        failures += len(v.failures)
        checked += v.checked
    dt = time.perf_counter() - t0
    return failures == 0 and dt < 60, f"{checked} graded pieces, {failures} failures, {dt:.2f}s"


# 5 ---------------------------------------------------------------------------------------------------


def criterion_5():
    failures = 0
    checked = 0
    for F in FACES:
        c = nerve_diagram(F).complex
        ring = face_algebra(F)
        v = window_exact(lambda d: graded_piece(c, d), _box(8), lambda d: {0: 1} if contains_monomial(ring, d) else {})
        failures += len(v.failures)
        checked += v.checked
    return failures == 0, f"{checked} graded pieces over 9 faces, {failures} failures"


# 6 -----------------------------------------------------------------------------------------------------


def criterion_6():
    bp = build_Bprime(koszul_example())
    parts = {
        "k": bp.k == {0: 0, 1: 2, 2: 4},
        "ranks": bp.complex.ranks == {0: 1, 1: 50, 2: 81},
        "d^2=0": bp.complex.validate().ok,
        "chi": not bp.chi.failures(),
    }
    w = witness(cone_of(LaurentPoly.x()))
    nonzero = {n: h for n, h in w.homology.items() if h != (0, [])}
    parts["H(B') of cone(x) = 0"] = not nonzero
    detail = ", ".join(f"{k} {'ok' if v else 'FAILED'}" for k, v in parts.items())
    if nonzero:
        detail += f"; cone(x): ranks {w.ranks}, H = {nonzero}"
    return all(parts.values()), detail


# 7 ------------------------------------------------------------------------------------------------------


def _small_complex(rng, cap=8):
    while True:
        c = random_complex(rng, 3, 2)
        if 0 < c.total_rank() <= cap:
            return c


def criterion_7():
    rng = random.Random(SEED + 7)
    t_ok = 0
    for _ in range(100):
        c = _small_complex(rng)
        f, g = commuting_pair(rng, c)
        h, A = homotopy_to_identity(rng, c)
        hf, hg = h.compose(f), h.compose(g)
        t_ok += mapping_torus_2(hf, hg, twisted_homotopy(f, g, h, A)).validate().ok
    phi_ok = 0
    for _ in range(50):
        c = _small_complex(rng)
        f, g = commuting_pair(rng, c)
        h, A = homotopy_to_identity(rng, c)
        m = phi(f, g, h, A)
        entry = all(mx.equal(*phi_entry_41(f, g, h, A, n)) for n in m.source.degrees())
        phi_ok += (not m.failures()) and entry
    iso_ok = 0
    for _ in range(50):
        c = _small_complex(rng)
        f, g = commuting_pair(rng, c)
        cc, psi = iterated_cone_square(f, g)
        inv = all(round(abs(np.linalg.det(np.array(mx.to_int(psi.at(n)), dtype=np.int64)))) == 1 for n in cc.degrees())
        iso_ok += (not psi.failures()) and inv
    ok = t_ok == 100 and phi_ok == 50 and iso_ok == 50
    return ok, f"2-tori {t_ok}/100, Phi {phi_ok}/50, A(f,g;0) iso {iso_ok}/50"


# 8 ------------------------------------------------------------------------------------------------------


def criterion_8():
    rng = random.Random(SEED + 8)
    lt_ok = blt_ok = 0
    for i in range(50):
        dc, s, w = lt_instance(rng)
        if i % 10 == 1:
            w = (w[0], w[0])  # single column
        degs = sorted({p + q for p, q in dc.positions()})
        deg = rng.choice(degs)
        m = {} if i % 10 == 0 else lt_cocycle(rng, dc, w, deg)
        lt_ok += contract_lt(dc, s, m, deg, w).verified
    for i in range(50):
        tc, s, w = blt_instance(rng)
        if i % 10 == 1:
            w = ((w[0][0], w[0][0]), (w[1][0], w[1][0]))  # single (x, y) column
        degs = sorted({sum(k) for k in tc.positions()})
        deg = rng.choice(degs)
        m = {} if i % 10 == 0 else blt_cocycle(rng, tc, w, deg)
        blt_ok += contract_blt(tc, s, m, deg, w).verified
    return lt_ok == 50 and blt_ok == 50, f"lt {lt_ok}/50, blt {blt_ok}/50"


# 9 ------------------------------------------------------------------------------------------------------


def criterion_9():
    rng = random.Random(SEED + 9)
    good = 0
    for _ in range(20):
        C = random_laurent_complex(rng)
        base = {v.flavor.name: v.outcome for v in check_finite_domination(C).verdicts}
        overall = check_finite_domination(C).overall
        same = True
        for sx in (1, -1):
            for sy in (1, -1):
                for swap in (False, True):
                    got, ov = transformed_report(C, sx, sy, swap)
                    same &= got == base and ov == overall
        good += same
    return good == 20, f"{good}/20 complexes invariant under all 8 coordinate changes"


# 10 -----------------------------------------------------------------------------------------------------


def criterion_10():
    rng = random.Random(SEED + 10)
    good = 0
    for _ in range(500):
        M = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12), -50, 50)
        r = smith_normal_form(M)
        d = r.invariant_factors
        good += mx.equal(mx.chain(r.U, M, r.V), r.D) and all(b % a == 0 for a, b in zip(d, d[1:]))
    return good == 500, f"{good}/500 exact re-multiplication identities"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    assert report(n, ok, detail), detail


if __name__ == "__main__":
    results = [report(n, *fn()) for n, fn in enumerate(CRITERIA, 1)]
    sys.exit(0 if all(results) else 1)
