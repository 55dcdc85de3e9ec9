"""
The square ``S = [-1, 1]^2``: its face lattice, diagrams indexed by it,
Čech complexes, the augmented row complex with constructive exactness,
the finite replacement ``B'``, the nerve diagrams and graded pieces.

Faces are named ``v_bl, v_br, v_tl, v_tr`` (vertices), ``e_b, e_l, e_r, e_t``
(edges, oriented counter-clockwise) and ``S``.  Within each dimension this
is also the basis order used by every matrix below.

Grading: every structure map in ``D(k)`` and every nerve diagram is a signed
monomial multiplication or an inclusion, so the complexes split into graded
pieces.  A term ``x^i y^j`` in a summand with *shift* ``v`` has degree
``(i, j) + v``; the shift of the ``F``-summand of ``D(k)`` is ``k v_F``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import matrices as mx
from .complexes import ChainMap, FreeComplex
from .errors import IncidenceViolation, NotIncident, NotInKernel, ShapeMismatch
from .flavors import BARYCENTRE, FULL_LAURENT, INTEGERS, RingFlavor, contains_monomial, face_algebra, nerve_ring
from .laurent import LaurentPoly, Monomial
from .multicomplex import DoubleComplex, augment, tot_sum

VERTICES = ("v_bl", "v_br", "v_tl", "v_tr")
EDGES = ("e_b", "e_l", "e_r", "e_t")
FACES = VERTICES + EDGES + ("S",)
PROPER_FACES = VERTICES + EDGES
EMPTY = "empty"

# oriented edges: (tail, head)
_EDGE_ENDS = {"e_b": ("v_bl", "v_br"), "e_r": ("v_br", "v_tr"), "e_t": ("v_tr", "v_tl"), "e_l": ("v_tl", "v_bl")}


# faces ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    id: str
    dim: int
    barycentre: Tuple[int, int]


def face(name: str) -> Face:
    if name == EMPTY:
        return Face(EMPTY, -1, (0, 0))
    return Face(name, dim(name), BARYCENTRE[name])


def dim(name: str) -> int:
    if name == EMPTY:
        return -1
    if name == "S":
        return 2
    return 0 if name.startswith("v") else 1


def faces_of_dim(d: int) -> Tuple[str, ...]:
    return {0: VERTICES, 1: EDGES, 2: ("S",)}.get(d, ())


def contained(F: str, G: str) -> bool:
    """``F ⊆ G`` (the empty face is contained in every face)."""
    if F == G or F == EMPTY or G == "S":
        return True
    if dim(F) == 0 and dim(G) == 1:
        return F in _EDGE_ENDS[G]
    return False


def incidence(F: str, G: str) -> int:
    """
    Incidence number ``[F:G]`` for the counter-clockwise orientation.

    EXAMPLES::

        >>> incidence("v_bl", "e_b"), incidence("v_br", "e_b"), incidence("e_l", "S")
        (-1, 1, 1)
    """
    if not contained(F, G):
        raise NotIncident(f"{F} is not a face of {G}")
    if dim(G) != dim(F) + 1:
        return 0
    if F == EMPTY:
        return 1
    if G == "S":
        return 1
    tail, head = _EDGE_ENDS[G]
    return 1 if F == head else -1


def monomial_m(F: str, G: str) -> Monomial:
    """
    The exponent of ``m_FG``, namely ``v_G - v_F`` (``v_∅ = 0``).

    EXAMPLES::

        >>> monomial_m("v_tl", "S"), monomial_m("empty", "e_l")
        ((1, -1), (-1, 0))
    """
    if not contained(F, G):
        raise NotIncident(f"{F} is not a face of {G}")
    a, b = face(F).barycentre, face(G).barycentre
    return (b[0] - a[0], b[1] - a[1])


def mono_power(m: Monomial, k: int, coeff: int = 1) -> LaurentPoly:
    """``coeff * m^k``."""
    return LaurentPoly.monomial(m[0] * k, m[1] * k, coeff)


# posets with degree and incidence functions ----------------------------------------------


@dataclass
class Poset:
    """Finite poset with a strictly increasing degree function and incidence numbers."""

    elements: List
    less: Callable[[object, object], bool]
    degree: Callable[[object], int]
    inc: Callable[[object, object], int]

    def check(self) -> List[str]:
        """Violations of the three axioms (bottom-degree incidences summing to zero included)."""
        bad = []
        els = self.elements
        for a in els:
            for b in els:
                if self.inc(a, b) and not (self.less(a, b) and self.degree(b) == self.degree(a) + 1):
                    bad.append(f"DI1: [{a}:{b}] != 0")
        for a in els:
            for c in els:
                if self.less(a, c) and self.degree(c) == self.degree(a) + 2:
                    s = sum(self.inc(a, b) * self.inc(b, c) for b in els if self.less(a, b) and self.less(b, c))
                    if s:
                        bad.append(f"DI2: interval ({a}, {c}) sums to {s}")
        low = min((self.degree(e) for e in els), default=0)
        for c in els:
            if self.degree(c) == low + 1:
                s = sum(self.inc(b, c) for b in els if self.less(b, c))
                if s:
                    bad.append(f"DI3: {c} sums to {s}")
        return bad

    def require(self):
        bad = self.check()
        if bad:
            raise IncidenceViolation("; ".join(bad))


def face_poset() -> Poset:
    return Poset(
        list(FACES),
        lambda a, b: a != b and contained(a, b),
        dim,
        lambda a, b: incidence(a, b) if a != b and contained(a, b) else 0,
    )


# summand bookkeeping for graded pieces ---------------------------------------------------------


@dataclass(frozen=True)
class LatticeBox:
    """The lattice points ``kS ∩ Z^2``, used as the support of an augmentation summand."""

    k: int

    @property
    def name(self) -> str:
        return f"Z[{self.k}S]"

    def contains(self, m: Monomial) -> bool:
        return abs(m[0]) <= self.k and abs(m[1]) <= self.k


def _member(ring, m: Monomial) -> bool:
    if isinstance(ring, LatticeBox):
        return ring.contains(m)
    return contains_monomial(ring, m)


@dataclass(frozen=True)
class Summand:
    """A rank-one summand: label, ring (or lattice box) and grading shift."""

    label: tuple
    ring: object
    shift: Tuple[int, int] = (0, 0)

    def on(self, d: Tuple[int, int]) -> bool:
        return _member(self.ring, (d[0] - self.shift[0], d[1] - self.shift[1]))


def graded_piece(c: FreeComplex, d: Tuple[int, int]) -> FreeComplex:
    """
    The degree-``d`` piece of a complex whose labels are :class:`Summand`
    objects and whose entries are signed monomials (or zero).

    A summand is *on* iff ``d - shift`` is a member of its ring; the
    entries of the piece are the integer coefficients between on summands.
    """
    if c.labels is None:
        raise ShapeMismatch("graded pieces need Summand labels")
    ranks, diff, labels = {}, {}, {}
    on = {}
    for n in c.degrees():
        on[n] = [i for i, s in enumerate(c.labels[n]) if s.on(d)]
        ranks[n] = len(on[n])
        labels[n] = [c.labels[n][i] for i in on[n]]
    for n in c.degrees():
        if n + 1 not in on:
            continue
        m = mx.zeros(len(on[n + 1]), len(on[n]))
        full = c.d(n)
        for a, i in enumerate(on[n + 1]):
            si = c.labels[n + 1][i]
            for b, j in enumerate(on[n]):
                e = full[i, j]
                if e == 0:
                    continue
                p = LaurentPoly(e)
                if not p.is_monomial():
                    raise ShapeMismatch(f"entry ({i},{j}) of d({n}) is not a monomial")
                (ex, ey), coeff = next(iter(p.terms.items()))
                sj = c.labels[n].__getitem__(j)
                # homogeneity: exponent d - shift_j moves to d - shift_i
                if (ex, ey) != (sj.shift[0] - si.shift[0], sj.shift[1] - si.shift[1]):
                    raise ShapeMismatch(f"entry ({i},{j}) of d({n}) is not degree preserving")
                m[a, b] = coeff
        diff[n] = m
    return FreeComplex(ranks, diff, INTEGERS, labels)


def on_pattern(c: FreeComplex, d: Tuple[int, int]) -> Dict[int, List[tuple]]:
    """Labels of the summands that are on at degree ``d``."""
    return {n: [s.label for s in c.labels[n] if s.on(d)] for n in c.degrees()}


# D(k) and the augmented row -------------------------------------------------------------------


@dataclass
class SquareDiagram:
    """
    Per face ``F`` a complex ``values[F]`` (over ``A_F``) and per pair
    ``F ⊆ G`` a structure map ``maps[(F, G)]``; ``shifts[F][n]`` is the
    grading shift of each basis element of ``values[F]^n``.
    """

    values: Dict[str, FreeComplex]
    maps: Dict[Tuple[str, str], ChainMap]
    k: Dict[int, int] = field(default_factory=dict)

    def s(self, F: str, G: str) -> ChainMap:
        if F == G:
            v = self.values[F]
            return ChainMap(v, v, {n: mx.identity(v.rank(n)) for n in v.degrees()})
        return self.maps[(F, G)]

    def check(self) -> List[str]:
        """Functoriality, chain-map property of the structure maps and ``d_F^2 = 0``."""
        bad = []
        for F in FACES:
            if not self.values[F].validate().ok:
                bad.append(f"d_{F}^2 != 0")
        for (F, G), m in self.maps.items():
            if m.failures():
                bad.append(f"s_{F},{G} is not a chain map")
        for F in FACES:
            for G in FACES:
                for H in FACES:
                    if len({F, G, H}) == 3 and contained(F, G) and contained(G, H):
                        lhs = self.s(G, H).compose(self.s(F, G))
                        rhs = self.s(F, H)
                        if any(not mx.equal(lhs.at(n), rhs.at(n)) for n in rhs.source.degrees()):
                            bad.append(f"s_{G}{H} s_{F}{G} != s_{F}{H}")
        return bad


def structure_multiplier(F: str, G: str, k: int) -> LaurentPoly:
    """``m_FG^{-k}``."""
    return mono_power(monomial_m(F, G), -k)


def diagram_Dk(k: int) -> SquareDiagram:
    """``D(k)``: ``A_F`` in degree 0 with structure maps ``m_FG^{-k}``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    values = {
        F: FreeComplex({0: 1}, {}, face_algebra(F), {0: [Summand((F,), face_algebra(F), _shift(F, k))]}) for F in FACES
    }
    maps = {}
    for F in FACES:
        for G in FACES:
            if F != G and contained(F, G):
                maps[(F, G)] = ChainMap(values[F], values[G], {0: [[structure_multiplier(F, G, k)]]})
    return SquareDiagram(values, maps, {0: k})


def _shift(F: str, k: int) -> Tuple[int, int]:
    v = BARYCENTRE[F]
    return (k * v[0], k * v[1])


def dk_row(k: int, augmented: bool = True) -> FreeComplex:
    """
    ``Γ(D(k))`` in degrees 0, 1, 2, preceded (if ``augmented``) by
    ``Z[kS ∩ Z^2]`` in degree -1.  The lattice summand is a single
    summand supported on the box (its graded pieces are rank one there).
    """
    ranks = {0: 4, 1: 4, 2: 1}
    labels = {
        0: [Summand((v,), face_algebra(v), _shift(v, k)) for v in VERTICES],
        1: [Summand((e,), face_algebra(e), _shift(e, k)) for e in EDGES],
        2: [Summand(("S",), face_algebra("S"), (0, 0))],
    }
    d = row_matrices(k)
    diff = {0: d[0], 1: d[1]}
    if augmented:
        ranks[-1] = 1
        labels[-1] = [Summand(("lattice",), LatticeBox(k), (0, 0))]
        diff[-1] = d[-1]
    return FreeComplex(ranks, diff, FULL_LAURENT, labels)


def row_matrices(k: int) -> Dict[int, np.ndarray]:
    """The matrices ``d^{-1}``, ``d^0``, ``d^1`` with entries ``[F:G] m_FG^{-k}``."""
    dm1 = mx.zeros(4, 1)
    for i, v in enumerate(VERTICES):
        dm1[i, 0] = structure_multiplier(EMPTY, v, k)
    d0 = mx.zeros(4, 4)
    for r, e in enumerate(EDGES):
        for c, v in enumerate(VERTICES):
            if contained(v, e):
                d0[r, c] = structure_multiplier(v, e, k) * incidence(v, e)
    d1 = mx.zeros(1, 4)
    for c, e in enumerate(EDGES):
        d1[0, c] = structure_multiplier(e, "S", k) * incidence(e, "S")
    return {-1: dm1, 0: d0, 1: d1}


def augmented_row(k: int) -> FreeComplex:
    return dk_row(k, augmented=True)


def _apply(m: np.ndarray, vec: Sequence) -> List[LaurentPoly]:
    v = mx.as_matrix([[LaurentPoly(e)] for e in vec], m.shape[1], 1)
    return [LaurentPoly(e) for e in mx.mm(m, v)[:, 0]]


def d1_preimage(p, k: int) -> List[LaurentPoly]:
    """``(y^k p_+, 0, 0, y^{-k} p_-)`` with ``p_+`` the part with ``y``-exponent ``>= 0``."""
    p = LaurentPoly(p)
    plus = p.filter(lambda e: e[1] >= 0)
    minus = p - plus
    return [plus.shift(0, k), LaurentPoly(0), LaurentPoly(0), minus.shift(0, -k)]


def _region(t: int, k: int) -> str:
    return "L" if t < -k else ("R" if t > k else "M")


# vertex coefficients (A, B, C, D) = (v_bl, v_br, v_tl, v_tr) as combinations of the
# edge coefficients (b, l, r, t) = (e_b, e_l, e_r, e_t) at one degree
_PREIMAGE = {
    ("R", "R"): {"v_bl": {"e_b": -1}},
    ("L", "R"): {"v_br": {"e_b": 1}},
    ("R", "L"): {"v_tl": {"e_t": 1}},
    ("L", "L"): {"v_tr": {"e_r": 1}},
    ("M", "R"): {"v_bl": {"e_l": 1}, "v_br": {"e_r": -1}},
    ("M", "L"): {"v_tl": {"e_l": -1}, "v_tr": {"e_r": 1}},
    ("R", "M"): {"v_bl": {"e_b": -1}, "v_tl": {"e_t": 1}},
    ("L", "M"): {"v_br": {"e_b": 1}, "v_tr": {"e_t": -1}},
    ("M", "M"): {"v_bl": {"e_l": 1, "e_t": 1}, "v_br": {"e_r": -1}, "v_tl": {"e_t": 1}},
}


def row_preimage(e1: Sequence, k: int) -> List[LaurentPoly]:
    """
    For ``e1 ∈ ker d^1`` (components on ``e_b, e_l, e_r, e_t``) an element
    ``e0`` with ``d^0(e0) = e1``, assembled degree by degree from explicit
    local formulas.
    """
    e1 = [LaurentPoly(e) for e in e1]
    d = row_matrices(k)
    if any(v != 0 for v in _apply(d[1], e1)):
        raise NotInKernel("e1 is not in the kernel of d^1")
    degrees = set()
    for e, p in zip(EDGES, e1):
        s = _shift(e, k)
        degrees |= {(a + s[0], b + s[1]) for (a, b) in p.support()}
    out = {v: {} for v in VERTICES}
    for (i, j) in degrees:
        coeff = {}
        for e, p in zip(EDGES, e1):
            s = _shift(e, k)
            coeff[e] = p.coeff(i - s[0], j - s[1])
        for v, combo in _PREIMAGE[(_region(i, k), _region(j, k))].items():
            c = sum(w * coeff[e] for e, w in combo.items())
            if c:
                s = _shift(v, k)
                out[v][(i - s[0], j - s[1])] = c
    e0 = [LaurentPoly(out[v]) for v in VERTICES]
    if _apply(d[0], e0) != e1:
        raise NotInKernel("local preimage formulas failed; input is not a cocycle")
    return e0


def row_kernel_to_lattice(e0: Sequence, k: int) -> LaurentPoly:
    """
    For ``e0 ∈ ker d^0`` the lattice element
    ``e_{-1} = Σ_{|i|,|j| <= k} a_{i+k, j+k} x^i y^j`` (``a`` the ``v_bl``
    coefficients), so that ``d^{-1}(e_{-1}) = e0``.
    """
    e0 = [LaurentPoly(e) for e in e0]
    d = row_matrices(k)
    if any(v != 0 for v in _apply(d[0], e0)):
        raise NotInKernel("e0 is not in the kernel of d^0")
    a = e0[0]
    em1 = LaurentPoly({(i, j): a.coeff(i + k, j + k) for i in range(-k, k + 1) for j in range(-k, k + 1)})
    if _apply(d[-1], [em1]) != e0:
        raise NotInKernel("e0 is not in the image of d^-1")
    return em1


def lattice_points(k: int) -> List[Monomial]:
    """Basis order of ``Z[kS ∩ Z^2]``: ``j`` outer, ``i`` inner."""
    return [(i, j) for j in range(-k, k + 1) for i in range(-k, k + 1)]


def lattice_to_vector(p: LaurentPoly, k: int) -> List[int]:
    p = LaurentPoly(p)
    pts = lattice_points(k)
    if any(m not in set(pts) for m in p.support()):
        raise ValueError(f"support of {p} is outside the box of radius {k}")
    return [p.coeff(*m) for m in pts]


def vector_to_lattice(v: Sequence[int], k: int) -> LaurentPoly:
    return LaurentPoly({m: int(c) for m, c in zip(lattice_points(k), v) if c})


# extending a complex to a diagram ------------------------------------------------------------------


def _face_need(p: LaurentPoly, F: str) -> int:
    """Minimal ``t >= 0`` with ``m_FS^t p ∈ A_F`` (``0`` for ``p = 0``)."""
    ring = face_algebra(F)
    m = monomial_m(F, "S")
    t = 0
    while True:
        q = p * mono_power(m, t)
        if all(contains_monomial(ring, e) for e in q.support()):
            return t
        t += 1


def extend(C: FreeComplex) -> Tuple[Dict[int, int], SquareDiagram]:
    """
    Extend a bounded free complex over the Laurent ring to a diagram ``Y``
    with ``Y_S = C`` and ``Y^j ≅ ⊕_{B_j} D(k_j)``, choosing each ``k_{j+1}``
    minimal: the least ``k_{j+1} >= 0`` with
    ``m_FS^{k_{j+1} - k_j} d^j`` having entries in ``A_F`` for every proper
    face ``F``.  The differential of ``Y_F`` is that twisted matrix.
    """
    degs = C.degrees()
    ks: Dict[int, int] = {}
    if degs:
        ks[degs[0]] = 0
        for j in range(degs[0], degs[-1]):
            d = C.d(j)
            entries = [LaurentPoly(e) for e in d.flat if e != 0]
            if not entries:
                ks[j + 1] = 0
                continue
            kj = ks[j]
            # smallest k_{j+1} >= 0 with m_FS^{k_{j+1}-k_j} d in A_F for all F
            k = 0
            while True:
                ok = True
                for F in PROPER_FACES:
                    m = monomial_m(F, "S")
                    ring = face_algebra(F)
                    tw = mono_power(m, k - kj)
                    if not all(contains_monomial(ring, e) for p in entries for e in (p * tw).support()):
                        ok = False
                        break
                if ok:
                    break
                k += 1
            ks[j + 1] = k
    values = {}
    for F in FACES:
        ring = face_algebra(F)
        m = monomial_m(F, "S")
        diff = {}
        for j in degs:
            if j + 1 in ks and C.rank(j + 1):
                tw = mono_power(m, ks[j + 1] - ks[j])
                diff[j] = mx.scalar_mul(tw, C.d(j)) if F != "S" else C.d(j)
        labels = {j: [Summand((F, b), ring, _shift(F, ks[j])) for b in range(C.rank(j))] for j in degs}
        values[F] = FreeComplex({j: C.rank(j) for j in degs}, diff, ring, labels)
    maps = {}
    for F in FACES:
        for G in FACES:
            if F != G and contained(F, G):
                maps[(F, G)] = ChainMap(
                    values[F],
                    values[G],
                    {j: mx.identity(C.rank(j), structure_multiplier(F, G, ks[j])) for j in degs},
                )
    return ks, SquareDiagram(values, maps, ks)


def k_closed_form(C: FreeComplex) -> Dict[int, int]:
    """Independent oracle: ``k_{j+1} = k_j + max |exponent|`` over the entries of ``d^j``."""
    degs = C.degrees()
    ks: Dict[int, int] = {}
    if not degs:
        return ks
    ks[degs[0]] = 0
    for j in range(degs[0], degs[-1]):
        exps = [abs(a) for e in C.d(j).flat if e != 0 for m in LaurentPoly(e).support() for a in m]
        nonzero = any(e != 0 for e in C.d(j).flat)
        ks[j + 1] = ks[j] + max(exps, default=0) if nonzero else 0
    return ks


# Čech complexes -----------------------------------------------------------------------------------


def cech_double(Y: SquareDiagram) -> DoubleComplex:
    """
    ``D^{i,j} = ⊕_{dim F = i} Y_F^j`` with ``d_h = [F:G] s_FG`` and
    ``d_v = (-1)^i ⊕ d_F``.  Basis order: faces in the fixed order, then
    the basis of ``Y_F^j``.
    """
    degs = sorted(set().union(*(v.degrees() for v in Y.values.values())))
    ranks, dh, dv = {}, {}, {}
    for i in range(3):
        for j in degs:
            ranks[(i, j)] = sum(Y.values[F].rank(j) for F in faces_of_dim(i))
    for i in range(3):
        Fs = faces_of_dim(i)
        for j in degs:
            dv[(i, j)] = mx.scalar_mul((-1) ** i, mx.block_diag(*(Y.values[F].d(j) for F in Fs)))
            if i < 2:
                Gs = faces_of_dim(i + 1)
                rows = []
                for G in Gs:
                    row = []
                    for F in Fs:
                        r, c = Y.values[G].rank(j), Y.values[F].rank(j)
                        if contained(F, G):
                            row.append(mx.scalar_mul(incidence(F, G), Y.s(F, G).at(j)))
                        else:
                            row.append(mx.zeros(r, c))
                    rows.append(row)
                dh[(i, j)] = mx.block(rows)
    return DoubleComplex(ranks, dh, dv, FULL_LAURENT)


def cech_labels(Y: SquareDiagram) -> Dict[int, List[Summand]]:
    """Summand labels of ``tot_sum(cech_double(Y))`` in its basis order."""
    degs = sorted(set().union(*(v.degrees() for v in Y.values.values())))
    out: Dict[int, List[Summand]] = {}
    for n in range(min(degs, default=0), max(degs, default=-1) + 3):
        out[n] = []
        for i in range(3):
            j = n - i
            for F in faces_of_dim(i):
                out[n].extend(Y.values[F].labels[j] if Y.values[F].labels and j in Y.values[F].labels else [])
    return {n: v for n, v in out.items() if v}


def cech(Y: SquareDiagram) -> FreeComplex:
    """``Γ(Y) = Tot(cech_double(Y))`` with :class:`Summand` labels."""
    t = tot_sum(cech_double(Y))
    return FreeComplex(t.ranks, t.diff, t.flavor, cech_labels(Y))


# B' -----------------------------------------------------------------------------------------------


@dataclass
class BPrime:
    complex: FreeComplex
    chi: ChainMap
    k: Dict[int, int]
    Y: SquareDiagram


def build_Bprime(C: FreeComplex) -> BPrime:
    """
    The bounded free Z-complex ``B'`` with ``B'^j = ⊕_{B_j} Z[k_j S ∩ Z^2]``
    and the quasi-isomorphism ``χ`` (blockwise ``d^{-1}``) into ``Γ(Y)``.

    ``d_{B'}`` is computed constructively: apply ``d^{-1}``, then the
    vertex differentials of ``Y``, then pull back to the lattice by
    :func:`row_kernel_to_lattice` (possible because the image lies in
    ``ker d^0``).  The sign is the one making ``χ`` a chain map.
    """
    ks, Y = extend(C)
    degs = C.degrees()
    size = {j: (2 * ks[j] + 1) ** 2 for j in degs}
    ranks = {j: C.rank(j) * size[j] for j in degs}
    labels = {j: [(b, p) for b in range(C.rank(j)) for p in lattice_points(ks[j])] for j in degs}
    dm1 = {j: row_matrices(ks[j])[-1] for j in degs}
    diff = {}
    for j in degs:
        if j + 1 not in ks or not C.rank(j + 1):
            continue
        m = mx.zeros(ranks[j + 1], ranks[j])
        vd = {v: Y.values[v].d(j) for v in VERTICES}
        for b in range(C.rank(j)):
            for li, p in enumerate(lattice_points(ks[j])):
                lat = LaurentPoly.monomial(p[0], p[1])
                comps = [LaurentPoly(dm1[j][vi, 0]) * lat for vi in range(4)]  # d^{-1}, block b
                for b2 in range(C.rank(j + 1)):
                    img = [LaurentPoly(vd[v][b2, b]) * comps[vi] for vi, v in enumerate(VERTICES)]
                    e = row_kernel_to_lattice(img, ks[j + 1])
                    col = b * size[j] + li
                    for lj, c in enumerate(lattice_to_vector(e, ks[j + 1])):
                        m[b2 * size[j + 1] + lj, col] = c
        diff[j] = m
    B = FreeComplex(ranks, diff, INTEGERS, labels)
    G = cech(Y)
    mats = {}
    for j in degs:
        # column 0 of degree j sits first in Γ(Y)^j (ordering by column)
        m = mx.zeros(G.rank(j), ranks[j])
        for b in range(C.rank(j)):
            for li, p in enumerate(lattice_points(ks[j])):
                lat = LaurentPoly.monomial(p[0], p[1])
                for vi in range(4):
                    m[vi * C.rank(j) + b, b * size[j] + li] = LaurentPoly(dm1[j][vi, 0]) * lat
        mats[j] = m
    return BPrime(B, ChainMap(B, G, mats), ks, Y)


# nerve diagrams ----------------------------------------------------------------------------------


def star(F: str) -> List[str]:
    return [G for G in FACES if contained(F, G)]


def flags(F: str) -> List[Tuple[str, ...]]:
    """Flags (chains of strict inclusions) in the star of ``F``, by dimension then face order."""
    st = star(F)
    out = []
    for n in range(1, len(st) + 1):
        for combo in combinations(st, n):
            chain = tuple(sorted(combo, key=lambda f: (dim(f), FACES.index(f))))
            if all(contained(a, b) and a != b for a, b in zip(chain, chain[1:])):
                out.append(chain)
    return sorted(out, key=lambda t: (len(t), [FACES.index(f) for f in t]))


def nerve_poset(F: str) -> Poset:
    fl = flags(F)

    def inc(a, b):
        if len(b) != len(a) + 1:
            return 0
        for i in range(len(b)):
            if b[:i] + b[i + 1 :] == a:
                return (-1) ** i
        return 0

    return Poset(fl, lambda a, b: a != b and set(a) <= set(b), lambda t: len(t) - 1, inc)


@dataclass
class NerveData:
    face: str
    flags: List[Tuple[str, ...]]
    complex: FreeComplex
    sigma: np.ndarray

    def flags_of_dim(self, t: int) -> List[Tuple[str, ...]]:
        return [f for f in self.flags if len(f) == t + 1]


def nerve_diagram(F: str) -> NerveData:
    """
    ``Γ(bsd_F)``: the Čech complex of the nerve diagram of ``st(F)``, the
    map ``σ_F`` (all-ones column over the 0-flags) and labels carrying
    the ring ``A<τ>`` of each flag.
    """
    P = nerve_poset(F)
    P.require()
    fl = P.elements
    by = {t: [f for f in fl if len(f) == t + 1] for t in range(3)}
    by = {t: v for t, v in by.items() if v}
    ranks = {t: len(v) for t, v in by.items()}
    labels = {t: [Summand(f, nerve_ring(f)) for f in v] for t, v in by.items()}
    diff = {}
    for t in by:
        if t + 1 in by:
            m = mx.zeros(ranks[t + 1], ranks[t])
            for r, b in enumerate(by[t + 1]):
                for c, a in enumerate(by[t]):
                    m[r, c] = P.inc(a, b)
            diff[t] = m
    c = FreeComplex(ranks, diff, FULL_LAURENT, labels)
    sigma = mx.zeros(ranks[0], 1)
    for i in range(ranks[0]):
        sigma[i, 0] = 1
    return NerveData(F, fl, c, sigma)


def sigma_complex(F: str) -> FreeComplex:
    """``Cone(σ_F)``-free presentation: ``A_F`` in degree -1 augmenting ``Γ(bsd_F)``."""
    nd = nerve_diagram(F)
    c = nd.complex
    ranks = dict(c.ranks)
    ranks[-1] = 1
    labels = dict(c.labels)
    labels[-1] = [Summand(("A_F", F), face_algebra(F))]
    diff = dict(c.diff)
    diff[-1] = nd.sigma
    return FreeComplex(ranks, diff, FULL_LAURENT, labels)


def lam(F: str, G: str) -> Dict[int, np.ndarray]:
    """``λ_FG: Γ(bsd_F) -> Γ(bsd_G)``, the 0/1 projection onto the flags of ``N_G``."""
    if not contained(F, G):
        raise NotIncident(f"{F} is not a face of {G}")
    a, b = nerve_diagram(F), nerve_diagram(G)
    out = {}
    for t in range(3):
        src, tgt = a.flags_of_dim(t), b.flags_of_dim(t)
        m = mx.zeros(len(tgt), len(src))
        for r, f in enumerate(tgt):
            m[r, src.index(f)] = 1
        out[t] = m
    return out


def lam_map(F: str, G: str) -> ChainMap:
    a, b = nerve_diagram(F), nerve_diagram(G)
    L = lam(F, G)
    return ChainMap(a.complex, b.complex, {t: m for t, m in L.items() if m.size})


# the complex W -------------------------------------------------------------------------------------


def dual_cellular() -> FreeComplex:
    """The augmented dual cellular complex ``Z -> Z^4 -> Z^4 -> Z`` of the square."""
    d = row_matrices(0)
    return FreeComplex.from_lists({-1: 1, 0: 4, 1: 4, 2: 1}, {n: mx.to_int(m) for n, m in d.items()})


@dataclass
class WData:
    cellular: FreeComplex
    W: DoubleComplex
    augmentation: ChainMap


def dual_cellular_W(C: FreeComplex) -> WData:
    """
    ``W^{p,q} = ⊕_{dim F = p} C^q`` with ``d_h = [F:G]`` and
    ``d_v = (-1)^p d_C``, and the map ``C -> Tot(W)`` induced by the
    diagonal inclusions ``h_q = (-1)^q Δ`` (sign-normalised by
    :func:`~findom.multicomplex.augment`).
    """
    cell = dual_cellular()
    ranks, dh, dv = {}, {}, {}
    for p in range(3):
        nF = len(faces_of_dim(p))
        for q in C.degrees():
            ranks[(p, q)] = nF * C.rank(q)
            dv[(p, q)] = mx.scalar_mul((-1) ** p, mx.kron(mx.identity(nF), C.d(q)))
            if p < 2:
                dh[(p, q)] = mx.kron(cell.d(p), mx.identity(C.rank(q)))
    W = DoubleComplex(ranks, dh, dv, C.flavor)
    h = {q: mx.scalar_mul((-1) ** (q % 2), mx.kron(cell.d(-1), mx.identity(C.rank(q)))) for q in C.degrees()}
    return WData(cell, W, augment(C, W, h))
