import random

import numpy as np

from findom import matrices as mx
from findom.complexes import FreeComplex
from findom.fixtures import MU, NU, cone_of, koszul_example
from findom.flavors import FULL_LAURENT
from findom.homology import contraction_z
from findom.laurent import LaurentPoly
from findom.multicomplex import tensor_double, tensor_triple, truncated_tot
from findom.synthetic import random_complex

X, Y = LaurentPoly.x(), LaurentPoly.y()



def poly(terms):
    return LaurentPoly(terms)


def random_poly(rng, nterms=6, lo=-3, hi=3, coeffs=(-2, -1, 1, 2)):
    return LaurentPoly({(rng.randint(lo, hi), rng.randint(lo, hi)): rng.choice(coeffs) for _ in range(rng.randint(1, nterms))})


def random_laurent_complex(rng, shape=None):
    """
    A valid complex over L: a Koszul complex of two random polynomials, a
    cone of one, or a Z-complex conjugated by Laurent monomials.
    """
    kind = shape or rng.choice(["cone", "koszul", "twisted"])
    if kind == "cone":
        return cone_of(random_poly(rng, 4, -2, 2))
    if kind == "koszul":
        return koszul_example(random_poly(rng, 4, -2, 2), random_poly(rng, 4, -2, 2))
    c = random_complex(rng, 3, 2)
    while c.is_zero():
        c = random_complex(rng, 3, 2)
    # conjugate every basis vector by a random monomial: d -> M_{n+1} d M_n^{-1}
    mono = {n: [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(c.rank(n))] for n in c.degrees()}
    diff = {}
    for n in c.degrees():
        if not c.rank(n + 1):
            continue
        d = mx.to_poly(c.d(n))
        for i in range(d.shape[0]):
            for j in range(d.shape[1]):
                a, b = mono[n + 1][i], mono[n][j]
                d[i, j] = LaurentPoly(d[i, j]) * LaurentPoly.monomial(a[0] - b[0], a[1] - b[1])
        diff[n] = d
    return FreeComplex(dict(c.ranks), diff, FULL_LAURENT)


# synthetic instances for the contraction chases ----------------------------------------------


def acyclic_z(rng, length=2):
    c = random_complex(rng, length, 2, acyclic=True)
    while c.is_zero():
        c = random_complex(rng, length, 2, acyclic=True)
    return c, contraction_z(c)


def tot_blocks(ranks, keep, order, degree):
    """Positions of total degree ``degree`` inside the window, in basis order, with offsets."""
    pos = sorted((k for k, r in ranks.items() if sum(k) == degree and keep(k) and r), key=order)
    out, off = [], 0
    for k in pos:
        out.append((k, off, ranks[k]))
        off += ranks[k]
    return out


def random_vector(rng, n, lo=-3, hi=3):
    return np.array([[rng.randint(lo, hi)] for _ in range(n)], dtype=object).reshape(n, 1)


def lt_instance(rng, window=None):
    """A double complex ``A ⊗ B`` with B acyclic, its column contractions and a cocycle ``d b``."""
    A = random_complex(rng, rng.randint(1, 3), 2)
    while A.is_zero():
        A = random_complex(rng, rng.randint(1, 3), 2)
    B, s = acyclic_z(rng)
    dc = tensor_double(A, B)
    contraction = {}
    for (p, q) in dc.positions():
        sign = (-1) ** (p % 2)
        contraction[(p, q)] = mx.scalar_mul(sign, mx.kron(mx.identity(A.rank(p)), s[q]))
    cols = [p for p, _ in dc.positions()]
    window = window or (min(cols), max(cols))
    return dc, contraction, window


def lt_cocycle(rng, dc, window, degree):
    """Random ``b`` in degree ``degree - 1`` of the window model and ``m = d b`` split by column."""
    t = truncated_tot(dc, "lt", window)
    keep = lambda k: window[0] <= k[0] <= window[1]
    b = random_vector(rng, t.rank(degree - 1))
    m = mx.mm(t.d(degree - 1), b)
    out = {}
    for (p, q), off, r in tot_blocks(dc.ranks, keep, lambda k: k[0], degree):
        out[p] = m[off : off + r]
    return out


def blt_instance(rng):
    A = random_complex(rng, rng.randint(1, 2), 1)
    while A.is_zero():
        A = random_complex(rng, rng.randint(1, 2), 1)
    B = random_complex(rng, rng.randint(1, 2), 1)
    while B.is_zero():
        B = random_complex(rng, rng.randint(1, 2), 1)
    Cz, s = acyclic_z(rng)
    tc = tensor_triple(A, B, Cz)
    contraction = {}
    for (x, y, z) in tc.positions():
        sign = (-1) ** ((x + y) % 2)
        contraction[(x, y, z)] = mx.scalar_mul(sign, mx.kron(mx.identity(A.rank(x) * B.rank(y)), s[z]))
    xs = [k[0] for k in tc.positions()]
    ys = [k[1] for k in tc.positions()]
    return tc, contraction, ((min(xs), max(xs)), (min(ys), max(ys)))


def blt_cocycle(rng, tc, window, degree):
    (x0, x1), (y0, y1) = window
    t = truncated_tot(tc, "blt", window)
    keep = lambda k: x0 <= k[0] <= x1 and y0 <= k[1] <= y1
    b = random_vector(rng, t.rank(degree - 1))
    m = mx.mm(t.d(degree - 1), b)
    out = {}
    for (x, y, z), off, r in tot_blocks(tc.ranks, keep, lambda k: (k[0] + k[1], k[0]), degree):
        out[(x, y)] = m[off : off + r]
    return out
