"""
Exact integer linear algebra: Smith normal form and homology over Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np

from .matrices import mm, to_int, zeros, identity, is_zero


@dataclass(frozen=True)
class SNFResult:
    """
    ``U @ M @ V == D`` with ``D`` diagonal, ``d_i | d_{i+1}`` and ``U``,
    ``V`` unimodular.  Diagonal entries are nonnegative.
    """

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> List[int]:
        n = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(n)]

    @property
    def invariant_factors(self) -> List[int]:
        return [d for d in self.diagonal if d != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M) -> SNFResult:
    """
    Smith normal form of an integer matrix.

    The pivot at each stage is the entry of smallest absolute value in the
    remaining block (ties broken row-major), which keeps intermediate
    coefficients small.

    EXAMPLES::

        >>> smith_normal_form([[2, 0], [0, 3]]).diagonal
        [1, 6]
    """
    M = np.asarray(M, dtype=object)
    if M.ndim != 2:
        M = M.reshape(1, -1) if M.size else zeros(0, 0)
    m, n = M.shape
    A = [[int(v) for v in row] for row in to_int(M)]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # row and column cleared; enforce divisibility on the rest
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    def arr(rows, r, c):
        out = zeros(r, c)
        for i in range(r):
            for j in range(c):
                out[i, j] = rows[i][j]
        return out

    return SNFResult(arr(U, m, m), arr(A, m, n), arr(V, n, n))


def determinantal_invariants(M) -> List[int]:
    """
    Invariant factors via gcds of k-by-k minors (slow; used as an oracle).
    """
    from itertools import combinations
    from math import gcd

    import sympy

    A = sympy.Matrix(np.asarray(M, dtype=object).tolist()) if np.size(M) else sympy.zeros(*np.shape(M))
    m, n = A.shape
    divisors = [1]
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(A.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        divisors.append(g)
        out.append(g // divisors[-2])
    return out


def homology_z(c, n: int) -> Tuple[int, List[int]]:
    """
    Cohomology of a finite free complex over Z in degree ``n``.

    Returns ``(betti, torsion)`` where torsion lists the invariant factors
    greater than one.

    EXAMPLES::

        >>> from findom.complexes import FreeComplex
        >>> c = FreeComplex.from_lists({0: 1, 1: 1}, {0: [[2]]})
        >>> homology_z(c, 0), homology_z(c, 1)
        ((0, []), (0, [2]))
    """
    rank = c.rank(n)
    if rank == 0:
        return 0, []
    out_rank = smith_normal_form(to_int(c.d(n))).rank if c.rank(n + 1) else 0
    if c.rank(n - 1):
        snf_in = smith_normal_form(to_int(c.d(n - 1)))
        in_factors = snf_in.invariant_factors
    else:
        in_factors = []
    betti = rank - out_rank - len(in_factors)
    return betti, [d for d in in_factors if d > 1]


def homology_all(c) -> Dict[int, Tuple[int, List[int]]]:
    return {n: homology_z(c, n) for n in c.degrees()}


def is_acyclic_z(c) -> bool:
    return all(b == 0 and not t for b, t in homology_all(c).values())


@dataclass
class WindowVerdict:
    """Outcome of a graded scan: exact iff ``failures`` is empty."""

    checked: int
    failures: List[Tuple[Tuple[int, int], str]] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return not self.failures


def window_exact(
    piece: Callable[[Tuple[int, int]], object],
    degrees: Iterable[Tuple[int, int]],
    expect: Callable[[Tuple[int, int]], Dict[int, int]] | None = None,
) -> WindowVerdict:
    """
    Run a graded scan.

    ``piece(d)`` returns a finite complex over Z (the graded piece at degree
    ``d``).  Each piece must satisfy ``d^2 = 0`` and have the homology given
    by ``expect(d)`` (a map degree -> betti number, torsion always required
    to vanish); the default expectation is acyclicity.
    """
    failures = []
    count = 0
    for d in degrees:
        count += 1
        c = piece(d)
        bad = c.validate()
        if not bad.ok:
            failures.append((d, f"d^2 != 0 at degrees {bad.degrees}"))
            continue
        want = expect(d) if expect else {}
        for n in c.degrees():
            b, tors = homology_z(c, n)
            if tors or b != want.get(n, 0):
                failures.append((d, f"H^{n} = Z^{b} + torsion {tors}, expected Z^{want.get(n, 0)}"))
                break
        else:
            for n, b in want.items():
                if b and c.rank(n) == 0:
                    failures.append((d, f"H^{n} = 0, expected Z^{b}"))
                    break
    return WindowVerdict(count, failures)


def contraction_z(c) -> Dict[int, np.ndarray]:
    """
    A contraction ``s`` (``s[n]: C^n -> C^(n-1)``) with ``ds + sd = id`` for
    an acyclic finite free complex over Z.

    Raises ``ValueError`` when the complex is not acyclic.
    """
    degs = c.degrees()
    if not is_acyclic_z(c):
        raise ValueError("complex is not acyclic over Z")
    snfs = {n: smith_normal_form(to_int(c.d(n))) for n in degs}
    s: Dict[int, np.ndarray] = {}
    for n in degs:
        # s on C^(n+1): kernel part K_{n+1} = im d_n maps back through W_n
        if not c.rank(n + 1):
            continue
        r = snfs[n].rank
        nxt = c.rank(n + 1)
        # basis of C^(n+1) adapted to ker d_(n+1): columns of V_(n+1)
        if c.rank(n + 2):
            Vn1 = snfs[n + 1].V
            r1 = snfs[n + 1].rank
        else:
            Vn1 = identity(nxt)
            r1 = 0
        Vinv = _unimodular_inverse(Vn1)
        # coordinates of c in basis V_(n+1); last nxt-r1 coords are the kernel part
        P = zeros(nxt, nxt)
        for i in range(r1, nxt):
            P[i, i] = 1
        kernel_proj = mm(mm(Vn1, P), Vinv)  # projection C^(n+1) -> K_(n+1)
        U, V = snfs[n].U, snfs[n].V
        # d_n(V[:, :r] a) = U^{-1} [a; 0]  =>  a = (U k)[:r]
        sel = mm(V[:, :r], mm(U, kernel_proj)[:r, :])
        s[n + 1] = sel
    for n in degs:
        s.setdefault(n, zeros(c.rank(n - 1), c.rank(n)))
    return s


def _unimodular_inverse(M: np.ndarray) -> np.ndarray:
    import sympy

    inv = sympy.Matrix(M.tolist()).inv()
    out = zeros(*M.shape)
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            v = inv[i, j]
            if not v.is_integer:
                raise ValueError("matrix is not unimodular")
            out[i, j] = int(v)
    return out
