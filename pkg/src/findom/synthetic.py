"""
Random small instances for identity checks: complexes over Z, self maps
homotopic to scalars, commuting pairs, and homotopies with explicit data.
"""

from __future__ import annotations

import random
from typing import Dict, Tuple

import numpy as np

from . import matrices as mx
from .complexes import ChainMap, FreeComplex, Homotopy, identity_map


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> Tuple[np.ndarray, np.ndarray]:
    """A random unimodular matrix and its inverse (products of elementary matrices)."""
    U, Ui = mx.identity(n), mx.identity(n)
    if n < 2:
        if n == 1 and rng.random() < 0.5:
            return mx.identity(1, -1), mx.identity(1, -1)
        return U, Ui
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.choice([-2, -1, 1, 2])
        E, Ei = mx.identity(n), mx.identity(n)
        E[i, j], Ei[i, j] = q, -q
        U, Ui = mx.mm(E, U), mx.mm(Ui, Ei)
    return U, Ui


def random_complex(rng: random.Random, length: int = 3, max_rank: int = 2, acyclic: bool = False, scale=(1, 2, 3)) -> FreeComplex:
    """
    A random complex over Z in degrees ``0..length-1``: a sum of shifted
    elementary pieces ``Z -> Z`` (multiplication by a random scale) and,
    unless ``acyclic``, single copies of Z, conjugated by random unimodular
    matrices degreewise.
    """
    pieces = []  # (degree of source, scale or None)
    for n in range(length):
        for _ in range(rng.randint(0, max_rank)):
            if n + 1 < length and (acyclic or rng.random() < 0.6):
                pieces.append((n, 1 if acyclic else rng.choice(scale)))
            elif not acyclic:
                pieces.append((n, None))
    ranks = {n: 0 for n in range(length)}
    idx = {}
    for k, (n, s) in enumerate(pieces):
        idx[(k, "src")] = (n, ranks[n])
        ranks[n] += 1
        if s is not None:
            idx[(k, "tgt")] = (n + 1, ranks[n + 1])
            ranks[n + 1] += 1
    diff = {n: mx.zeros(ranks.get(n + 1, 0), ranks[n]) for n in range(length - 1)}
    for k, (n, s) in enumerate(pieces):
        if s is not None:
            diff[n][idx[(k, "tgt")][1], idx[(k, "src")][1]] = s
    P = {n: random_unimodular(rng, ranks[n]) for n in ranks}
    diff = {n: mx.chain(P[n + 1][0], m, P[n][1]) for n, m in diff.items()}
    return FreeComplex.from_lists(ranks, diff)


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> np.ndarray:
    m = mx.zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            m[i, j] = rng.randint(lo, hi)
    return m


def random_degree_minus_one(rng: random.Random, c: FreeComplex, lo: int = -1, hi: int = 1) -> Dict[int, np.ndarray]:
    """Random matrices ``C^n -> C^{n-1}``."""
    return {n: random_matrix(rng, c.rank(n - 1), c.rank(n), lo, hi) for n in c.degrees()}


def boundary_of(c: FreeComplex, K: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
    """``d K + K d`` degreewise."""
    out = {}
    for n in c.degrees():
        Kn = K.get(n, mx.zeros(c.rank(n - 1), c.rank(n)))
        Kn1 = K.get(n + 1, mx.zeros(c.rank(n), c.rank(n + 1)))
        out[n] = mx.mm(c.d(n - 1), Kn) + mx.mm(Kn1, c.d(n))
    return out


def homotopic_to_scalar(rng: random.Random, c: FreeComplex, a: int = 1) -> Tuple[ChainMap, Homotopy]:
    """``f = a id + dK + Kd`` with the homotopy ``K: f ~ a id``."""
    K = random_degree_minus_one(rng, c)
    dK = boundary_of(c, K)
    f = ChainMap(c, c, {n: mx.identity(c.rank(n), a) + dK[n] for n in c.degrees()})
    s = ChainMap(c, c, {n: mx.identity(c.rank(n), a) for n in c.degrees()})
    return f, Homotopy(f, s, K)


def polynomial_in(f: ChainMap, coeffs) -> ChainMap:
    """``Σ coeffs[i] f^i``; commutes with ``f``."""
    c = f.source
    out = {n: mx.zeros(c.rank(n), c.rank(n)) for n in c.degrees()}
    power = identity_map(c)
    for a in coeffs:
        for n in c.degrees():
            out[n] = out[n] + mx.scalar_mul(a, power.at(n))
        power = f.compose(power)
    return ChainMap(c, c, out)


def commuting_pair(rng: random.Random, c: FreeComplex) -> Tuple[ChainMap, ChainMap]:
    f, _ = homotopic_to_scalar(rng, c, rng.choice([1, 2, -1]))
    g = polynomial_in(f, [rng.randint(-2, 2) for _ in range(3)])
    return f, g


def homotopy_to_identity(rng: random.Random, c: FreeComplex) -> Tuple[ChainMap, Homotopy]:
    """``h = id + dA + Ad`` and ``A: h ~ id``."""
    return homotopic_to_scalar(rng, c, 1)
