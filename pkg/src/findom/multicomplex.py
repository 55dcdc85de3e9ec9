"""
Double and triple complexes, totalisations, the filtration of lower
triangular complexes and the constructive contraction chases.

Positions are integer tuples: ``(p, q)`` for double complexes, ``(x, y, z)``
for triple complexes.  A differential stored at a position maps *out of*
that position.  Missing matrices are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import matrices as mx
from .complexes import ChainMap, FreeComplex
from .errors import MarginExceeded, NotInKernel, ShapeMismatch, WindowTooSmall
from .flavors import FULL_LAURENT, RingFlavor

Pos2 = Tuple[int, int]
Pos3 = Tuple[int, int, int]


@dataclass(eq=False)
class DoubleComplex:
    """
    ``d_h: D^{p,q} -> D^{p+1,q}`` and ``d_v: D^{p,q} -> D^{p,q+1}``, squaring
    to zero and anti-commuting.

    ``columns`` optionally declares the closed range of columns on which the
    entries are defined (for windowed pieces of infinite objects).
    """

    ranks: Dict[Pos2, int]
    dh: Dict[Pos2, np.ndarray] = field(default_factory=dict)
    dv: Dict[Pos2, np.ndarray] = field(default_factory=dict)
    flavor: RingFlavor = FULL_LAURENT
    columns: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        self.ranks = {tuple(k): v for k, v in self.ranks.items() if v}
        self.dh = {tuple(k): mx.as_matrix(m, self.rank(k[0] + 1, k[1]), self.rank(*k)) for k, m in self.dh.items()}
        self.dv = {tuple(k): mx.as_matrix(m, self.rank(k[0], k[1] + 1), self.rank(*k)) for k, m in self.dv.items()}

    def rank(self, p: int, q: int) -> int:
        return self.ranks.get((p, q), 0)

    def h(self, p: int, q: int) -> np.ndarray:
        m = self.dh.get((p, q))
        return m if m is not None else mx.zeros(self.rank(p + 1, q), self.rank(p, q))

    def v(self, p: int, q: int) -> np.ndarray:
        m = self.dv.get((p, q))
        return m if m is not None else mx.zeros(self.rank(p, q + 1), self.rank(p, q))

    def positions(self) -> List[Pos2]:
        return sorted(self.ranks)

    def check(self) -> List[str]:
        """Failures of ``d_h^2 = 0``, ``d_v^2 = 0`` and anti-commutation."""
        bad = []
        for p, q in self.positions():
            if not mx.is_zero(mx.mm(self.h(p + 1, q), self.h(p, q))):
                bad.append(f"d_h^2 at {(p, q)}")
            if not mx.is_zero(mx.mm(self.v(p, q + 1), self.v(p, q))):
                bad.append(f"d_v^2 at {(p, q)}")
            ac = mx.mm(self.h(p, q + 1), self.v(p, q)) + mx.mm(self.v(p + 1, q), self.h(p, q))
            if not mx.is_zero(ac):
                bad.append(f"anti-commutation at {(p, q)}")
        return bad


@dataclass(eq=False)
class TripleComplex:
    """Three anti-commuting differentials ``d_x, d_y, d_z`` on a finite box."""

    ranks: Dict[Pos3, int]
    dx: Dict[Pos3, np.ndarray] = field(default_factory=dict)
    dy: Dict[Pos3, np.ndarray] = field(default_factory=dict)
    dz: Dict[Pos3, np.ndarray] = field(default_factory=dict)
    flavor: RingFlavor = FULL_LAURENT

    _STEP = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}

    def __post_init__(self):
        self.ranks = {tuple(k): v for k, v in self.ranks.items() if v}
        for name in "xyz":
            store = getattr(self, "d" + name)
            step = self._STEP[name]
            fixed = {}
            for k, m in store.items():
                k = tuple(k)
                tgt = tuple(a + b for a, b in zip(k, step))
                fixed[k] = mx.as_matrix(m, self.rank(*tgt), self.rank(*k))
            setattr(self, "d" + name, fixed)

    def rank(self, x: int, y: int, z: int) -> int:
        return self.ranks.get((x, y, z), 0)

    def d(self, name: str, pos: Pos3) -> np.ndarray:
        step = self._STEP[name]
        tgt = tuple(a + b for a, b in zip(pos, step))
        m = getattr(self, "d" + name).get(tuple(pos))
        return m if m is not None else mx.zeros(self.rank(*tgt), self.rank(*pos))

    def positions(self) -> List[Pos3]:
        return sorted(self.ranks)

    def check(self) -> List[str]:
        bad = []
        for pos in self.positions():
            for a in "xyz":
                for b in "xyz":
                    if a > b:
                        continue
                    sa, sb = self._STEP[a], self._STEP[b]
                    mid_a = tuple(u + v for u, v in zip(pos, sa))
                    mid_b = tuple(u + v for u, v in zip(pos, sb))
                    if a == b:
                        if not mx.is_zero(mx.mm(self.d(a, mid_a), self.d(a, pos))):
                            bad.append(f"d_{a}^2 at {pos}")
                    else:
                        s = mx.mm(self.d(b, mid_a), self.d(a, pos)) + mx.mm(self.d(a, mid_b), self.d(b, pos))
                        if not mx.is_zero(s):
                            bad.append(f"d_{a} d_{b} anti-commutation at {pos}")
        return bad


# totalisation ---------------------------------------------------------------


def _tot(ranks: Dict[tuple, int], order, maps, flavor, keep=None) -> FreeComplex:
    """
    Generic totalisation.  ``maps`` is a list of ``(step, getter)``; the
    total degree of a position is the sum of its coordinates.
    """
    keep = keep or (lambda pos: True)
    by_deg: Dict[int, List[tuple]] = {}
    for pos, r in ranks.items():
        if r and keep(pos):
            by_deg.setdefault(sum(pos), []).append(pos)
    for n in by_deg:
        by_deg[n].sort(key=order)
    offsets = {}
    tot_ranks = {}
    labels = {}
    for n, plist in by_deg.items():
        off = 0
        labels[n] = []
        for pos in plist:
            offsets[pos] = off
            off += ranks[pos]
            labels[n].extend((pos, i) for i in range(ranks[pos]))
        tot_ranks[n] = off
    diff = {}
    for n, plist in by_deg.items():
        if n + 1 not in tot_ranks:
            continue
        m = mx.zeros(tot_ranks[n + 1], tot_ranks[n])
        for pos in plist:
            c0 = offsets[pos]
            for step, get in maps:
                tgt = tuple(a + b for a, b in zip(pos, step))
                if tgt not in offsets or not keep(tgt):
                    continue
                block = get(pos)
                if block.size:
                    r0 = offsets[tgt]
                    m[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] += block
        diff[n] = m
    return FreeComplex(tot_ranks, diff, flavor, labels)


def tot_sum(obj) -> FreeComplex:
    """
    Direct-sum totalisation.  Double complex: ``⊕_{p+q=n}`` ordered by
    ``p``; triple complex: ``⊕_{x+y+z=n}`` ordered by ``(x+y, x)`` so that it
    coincides with the totalisation of :func:`partial_tot_xy`.
    """
    if isinstance(obj, DoubleComplex):
        return _tot(
            obj.ranks,
            lambda pos: pos[0],
            [((1, 0), lambda pos: obj.h(*pos)), ((0, 1), lambda pos: obj.v(*pos))],
            obj.flavor,
        )
    if isinstance(obj, TripleComplex):
        return _tot(
            obj.ranks,
            lambda pos: (pos[0] + pos[1], pos[0]),
            [(obj._STEP[a], (lambda a: lambda pos: obj.d(a, pos))(a)) for a in "xyz"],
            obj.flavor,
        )
    raise TypeError(type(obj))


def partial_tot_xy(tc: TripleComplex) -> DoubleComplex:
    """``D^{p,q} = ⊕_{x+y=p} T^{x,y,q}`` with ``d_h = d_x + d_y``, ``d_v = d_z``."""
    groups: Dict[Pos2, List[Pos3]] = {}
    for (x, y, z) in tc.positions():
        groups.setdefault((x + y, z), []).append((x, y, z))
    for k in groups:
        groups[k].sort()
    ranks = {k: sum(tc.rank(*pos) for pos in v) for k, v in groups.items()}
    offs = {}
    for k, v in groups.items():
        off = 0
        for pos in v:
            offs[pos] = off
            off += tc.rank(*pos)
    dh, dv = {}, {}
    for (p, q), plist in groups.items():
        for tgt_key, names, store in (((p + 1, q), "xy", dh), ((p, q + 1), "z", dv)):
            if tgt_key not in groups:
                continue
            m = mx.zeros(ranks[tgt_key], ranks[(p, q)])
            for pos in plist:
                for a in names:
                    tgt = tuple(u + w for u, w in zip(pos, tc._STEP[a]))
                    if tgt in offs:
                        blk = tc.d(a, pos)
                        r0, c0 = offs[tgt], offs[pos]
                        m[r0 : r0 + blk.shape[0], c0 : c0 + blk.shape[1]] += blk
            store[(p, q)] = m
    return DoubleComplex(ranks, dh, dv, tc.flavor)


def truncated_tot(obj, side: str, window) -> FreeComplex:
    """
    Window model of a truncated-product totalisation.

    For a double complex (``side`` ``"lt"`` or ``"rt"``) the window is a
    column range ``(p0, p1)``; for a triple complex (``side="blt"``) it is a
    box ``((x0, x1), (y0, y1))``.  The model keeps the positions inside the
    window and drops differential components that leave it; since every
    differential raises a coordinate, this is the subquotient
    ``{support >= lower corner} / {support beyond upper corner}`` of the
    truncated product, so it is a complex whose differential is the
    displayed ``d(Σ a_p z^p) = Σ (d_h a_{p-1} + d_v a_p) z^p``.
    """
    if isinstance(obj, DoubleComplex):
        if side not in ("lt", "rt"):
            raise ValueError("double complexes use side 'lt' or 'rt'")
        p0, p1 = window
        if obj.columns is not None and (p0 < obj.columns[0] or p1 > obj.columns[1]):
            raise WindowTooSmall(f"window {window} exceeds the defined columns {obj.columns}")
        return _tot(
            obj.ranks,
            lambda pos: pos[0],
            [((1, 0), lambda pos: obj.h(*pos)), ((0, 1), lambda pos: obj.v(*pos))],
            obj.flavor,
            keep=lambda pos: p0 <= pos[0] <= p1,
        )
    if isinstance(obj, TripleComplex):
        if side != "blt":
            raise ValueError("triple complexes use side 'blt'")
        (x0, x1), (y0, y1) = window
        return _tot(
            obj.ranks,
            lambda pos: (pos[0] + pos[1], pos[0]),
            [(obj._STEP[a], (lambda a: lambda pos: obj.d(a, pos))(a)) for a in "xyz"],
            obj.flavor,
            keep=lambda pos: x0 <= pos[0] <= x1 and y0 <= pos[1] <= y1,
        )
    raise TypeError(type(obj))


# contraction chases -------------------------------------------------------------


@dataclass
class ChaseResult:
    """A preimage ``b`` of a cocycle ``m`` and the window on which ``d b = m`` holds."""

    preimage: Dict[tuple, np.ndarray]
    window: tuple
    verified: bool


def _vec(v, n: int) -> np.ndarray:
    if v is None:
        return mx.zeros(n, 1)
    return mx.as_matrix(np.asarray(v, dtype=object).reshape(-1, 1) if not isinstance(v, np.ndarray) or v.ndim == 1 else v, n, 1)


def contract_lt(dc: DoubleComplex, contraction: Dict[Pos2, np.ndarray], cocycle: Dict[int, object], degree: int, window: Tuple[int, int]) -> ChaseResult:
    """
    Solve ``d b = m`` column by column in increasing z-power.

    ``cocycle`` maps a column ``p`` to a vector in ``D^{p, degree-p}``;
    ``contraction[(p, q)]: D^{p,q} -> D^{p,q-1}`` satisfies
    ``d_v s + s d_v = id`` on column ``p``.  The result satisfies
    ``(d b)_p = d_h b_{p-1} + d_v b_p = m_p`` for every column in the window.
    """
    p0, p1 = window
    outside = [p for p, v in cocycle.items() if not p0 <= p <= p1 and not mx.is_zero(_vec(v, dc.rank(p, degree - p)))]
    if outside:
        raise MarginExceeded(f"cocycle has components in columns {outside} outside the window {window}")
    m = {p: _vec(cocycle.get(p), dc.rank(p, degree - p)) for p in range(p0, p1 + 1)}
    # cocycle condition inside the window model
    for p in range(p0, p1 + 1):
        dm = mx.mm(dc.v(p, degree - p), m[p])
        if p > p0:
            dm = dm + mx.mm(dc.h(p - 1, degree - p + 1), m[p - 1])
        if not mx.is_zero(dm):
            raise NotInKernel(f"not a cocycle: component {p} of d(m) is nonzero")
    b: Dict[int, np.ndarray] = {}
    for p in range(p0, p1 + 1):
        q = degree - p
        y = m[p]
        if p > p0:
            y = y - mx.mm(dc.h(p - 1, q), b[p - 1])
        s = contraction.get((p, q))
        if s is None:
            s = mx.zeros(dc.rank(p, q - 1), dc.rank(p, q))
        b[p] = mx.mm(mx.as_matrix(s, dc.rank(p, q - 1), dc.rank(p, q)), y)
    ok = True
    for p in range(p0, p1 + 1):
        q = degree - p
        db = mx.mm(dc.v(p, q - 1), b[p])
        if p > p0:
            db = db + mx.mm(dc.h(p - 1, q), b[p - 1])
        ok &= mx.equal(db, m[p])
    return ChaseResult({(p,): v for p, v in b.items()}, window, ok)


def _blt_order(x0, x1, y0, y1):
    """Corner-outward order: (k,k), (k+l,k), (k,k+l) for l = 1, 2, ..., then the next diagonal."""
    order = []
    for t in range(0, max(x1 - x0, y1 - y0) + 1):
        a, b = x0 + t, y0 + t
        if a <= x1 and b <= y1:
            order.append((a, b))
        for l in range(1, max(x1 - x0, y1 - y0) + 1):
            if a + l <= x1 and b <= y1:
                order.append((a + l, b))
            if a <= x1 and b + l <= y1:
                order.append((a, b + l))
    return order


def contract_blt(tc: TripleComplex, contraction: Dict[Pos3, np.ndarray], cocycle: Dict[Pos2, object], degree: int, window) -> ChaseResult:
    """
    Solve ``d b = m`` in the below-and-left truncated totalisation, in the
    corner-outward order ``b_{k,k}``, ``b_{k+l,k}``, ``b_{k,k+l}``, then the
    next diagonal entry.  ``contraction[(x, y, z)]: T^{x,y,z} -> T^{x,y,z-1}``
    contracts the z-direction.
    """
    (x0, x1), (y0, y1) = window
    rk = lambda x, y: tc.rank(x, y, degree - x - y)
    outside = [k for k, v in cocycle.items() if not (x0 <= k[0] <= x1 and y0 <= k[1] <= y1) and not mx.is_zero(_vec(v, rk(*k)))]
    if outside:
        raise MarginExceeded(f"cocycle has components at {outside} outside the window {window}")
    pts = [(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)]
    m = {k: _vec(cocycle.get(k), rk(*k)) for k in pts}

    def inside(x, y):
        return x0 <= x <= x1 and y0 <= y <= y1

    def d_in(vals, x, y, deg):
        # component at (x, y) of d applied to a cochain of total degree deg
        z = deg + 1 - x - y
        out = mx.mm(tc.d("z", (x, y, z - 1)), vals[(x, y)])
        if inside(x - 1, y):
            out = out + mx.mm(tc.d("x", (x - 1, y, z)), vals[(x - 1, y)])
        if inside(x, y - 1):
            out = out + mx.mm(tc.d("y", (x, y - 1, z)), vals[(x, y - 1)])
        return out

    for k in pts:
        if not mx.is_zero(d_in(m, k[0], k[1], degree)):
            raise NotInKernel(f"not a cocycle at {k}")
    b: Dict[Pos2, np.ndarray] = {}
    for (x, y) in _blt_order(x0, x1, y0, y1):
        z = degree - x - y
        yv = m[(x, y)]
        if inside(x - 1, y):
            yv = yv - mx.mm(tc.d("x", (x - 1, y, z)), b[(x - 1, y)])
        if inside(x, y - 1):
            yv = yv - mx.mm(tc.d("y", (x, y - 1, z)), b[(x, y - 1)])
        s = contraction.get((x, y, z))
        s = mx.zeros(tc.rank(x, y, z - 1), tc.rank(x, y, z)) if s is None else mx.as_matrix(s, tc.rank(x, y, z - 1), tc.rank(x, y, z))
        b[(x, y)] = mx.mm(s, yv)
    ok = all(mx.equal(d_in(b, x, y, degree - 1), m[(x, y)]) for (x, y) in pts)
    return ChaseResult(b, window, ok)


# lower triangular complexes ---------------------------------------------------------


@dataclass
class TriangularStructure:
    """A complex with each ``C^q`` split as ``⊕_{p=1..n} C^{p,q}`` (block sizes per degree)."""

    complex: FreeComplex
    blocks: Dict[int, Sequence[int]]

    @property
    def n(self) -> int:
        return max(len(b) for b in self.blocks.values()) if self.blocks else 0

    def sizes(self, q: int) -> List[int]:
        b = list(self.blocks.get(q, []))
        return b + [0] * (self.n - len(b))

    def offsets(self, q: int) -> List[int]:
        out, off = [], 0
        for s in self.sizes(q):
            out.append(off)
            off += s
        return out + [off]

    def check(self) -> List[str]:
        bad = []
        c = self.complex
        for q in c.degrees():
            if sum(self.sizes(q)) != c.rank(q):
                bad.append(f"block sizes in degree {q} do not add up to the rank")
                continue
            d = c.d(q)
            src, tgt = self.offsets(q), self.offsets(q + 1)
            for l in range(self.n):
                for k in range(l + 1, self.n):
                    blk = d[tgt[l] : tgt[l + 1], src[k] : src[k + 1]]
                    if blk.size and not mx.is_zero(blk):
                        bad.append(f"block ({l + 1},{k + 1}) of d({q}) is nonzero")
        return bad


@dataclass
class FiltrationStep:
    k: int
    sub: FreeComplex
    quotient: FreeComplex
    inclusion: ChainMap
    projection: ChainMap


def _restrict(c: FreeComplex, idx: Dict[int, List[int]]) -> FreeComplex:
    ranks = {q: len(v) for q, v in idx.items()}
    diff = {}
    for q in idx:
        if idx.get(q + 1):
            diff[q] = c.d(q)[np.ix_(idx[q + 1], idx[q])] if idx[q] else mx.zeros(len(idx[q + 1]), 0)
    return FreeComplex(ranks, diff, c.flavor)


def triangular_filtration(ts: TriangularStructure) -> List[FiltrationStep]:
    """
    The subcomplexes ``C(k) = ⊕_{p >= k} C^{p,*}`` and quotients
    ``C(k)/C(k+1) = C^{k,*}`` for ``k = 1..n``.
    """
    bad = ts.check()
    if bad:
        raise ShapeMismatch("; ".join(bad))
    c = ts.complex
    out = []
    for k in range(1, ts.n + 1):
        sub_idx = {q: list(range(ts.offsets(q)[k - 1], c.rank(q))) for q in c.degrees()}
        quo_idx = {q: list(range(ts.offsets(q)[k - 1], ts.offsets(q)[k])) for q in c.degrees()}
        sub = _restrict(c, sub_idx)
        quo = _restrict(c, quo_idx)
        inc = {}
        proj = {}
        for q in c.degrees():
            m = mx.zeros(c.rank(q), len(sub_idx[q]))
            for j, i in enumerate(sub_idx[q]):
                m[i, j] = 1
            inc[q] = m
            pm = mx.zeros(len(quo_idx[q]), len(sub_idx[q]))
            for j in range(len(quo_idx[q])):
                pm[j, j] = 1
            proj[q] = pm
        out.append(FiltrationStep(k, sub, quo, ChainMap(sub, c, inc), ChainMap(sub, quo, proj)))
    return out


# augmentation -------------------------------------------------------------------------


def augment(C: FreeComplex, E: DoubleComplex, h: Dict[int, np.ndarray]) -> ChainMap:
    """
    The chain map ``C -> Tot(E)`` induced by ``h_q: C^q -> E^{0,q}``.

    Requires ``d_h h = 0`` and ``d_v h_q = ± h_{q+1} d_C``; the signs are
    normalised degree by degree (``h_q`` replaced by ``ε_q h_q`` with
    ``ε_q = ±1``) so that the result is a chain map.
    """
    tot = tot_sum(E)
    degs = sorted(set(C.degrees()) | {q for (p, q) in E.positions() if p == 0})
    hm = {q: mx.as_matrix(h.get(q, mx.zeros(E.rank(0, q), C.rank(q))), E.rank(0, q), C.rank(q)) for q in degs}
    for q in degs:
        if not mx.is_zero(mx.mm(E.h(0, q), hm[q])):
            raise ShapeMismatch(f"d_h h_{q} != 0")
    eps = {}
    cur = 1
    for q in degs:
        eps[q] = cur
        lhs = mx.mm(E.v(0, q), hm[q])
        rhs = mx.mm(hm.get(q + 1, mx.zeros(E.rank(0, q + 1), C.rank(q + 1))), C.d(q))
        if mx.equal(lhs, rhs):
            continue
        if mx.equal(lhs, -rhs):
            cur = -cur
            continue
        raise ShapeMismatch(f"d_v h_{q} and h_{q + 1} d do not agree up to sign")
    mats = {}
    for q in degs:
        m = mx.zeros(tot.rank(q), C.rank(q))
        # column 0 sits after the columns p < 0 in the ordering by p
        off = sum(E.rank(p, q - p) for p in range(min((p for p, _ in E.positions()), default=0), 0))
        m[off : off + E.rank(0, q), :] = mx.scalar_mul(eps[q], hm[q])
        mats[q] = m
    return ChainMap(C, tot, mats)


def tensor_double(A: FreeComplex, B: FreeComplex) -> DoubleComplex:
    """``D^{p,q} = A^p ⊗ B^q`` with ``d_h = d_A ⊗ 1`` and ``d_v = (-1)^p ⊗ d_B``."""
    ranks, dh, dv = {}, {}, {}
    for p in A.degrees():
        for q in B.degrees():
            ranks[(p, q)] = A.rank(p) * B.rank(q)
            dh[(p, q)] = mx.kron(A.d(p), mx.identity(B.rank(q)))
            dv[(p, q)] = mx.scalar_mul((-1) ** (p % 2), mx.kron(mx.identity(A.rank(p)), B.d(q)))
    return DoubleComplex(ranks, dh, dv, A.flavor)


def tensor_triple(A: FreeComplex, B: FreeComplex, C: FreeComplex) -> TripleComplex:
    """Koszul-signed tensor product of three complexes."""
    ranks, dx, dy, dz = {}, {}, {}, {}
    for x in A.degrees():
        for y in B.degrees():
            for z in C.degrees():
                ranks[(x, y, z)] = A.rank(x) * B.rank(y) * C.rank(z)
                ia, ib, ic = mx.identity(A.rank(x)), mx.identity(B.rank(y)), mx.identity(C.rank(z))
                dx[(x, y, z)] = mx.kron(mx.kron(A.d(x), ib), ic)
                dy[(x, y, z)] = mx.scalar_mul((-1) ** (x % 2), mx.kron(mx.kron(ia, B.d(y)), ic))
                dz[(x, y, z)] = mx.scalar_mul((-1) ** ((x + y) % 2), mx.kron(mx.kron(ia, ib), C.d(z)))
    return TripleComplex(ranks, dx, dy, dz, A.flavor)
