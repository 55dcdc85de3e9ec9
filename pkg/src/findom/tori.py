"""
Mapping 1-tori, mapping 2-tori, the 2-torus analogue and the comparison
maps between them.

All block matrices are taken verbatim, signs included.  Base complexes are
finite free complexes (usually over Z); the tori live over the Laurent ring,
with ``z = x`` for the 1-torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from . import matrices as mx
from .complexes import ChainMap, FreeComplex, Homotopy, check_homotopy, cone
from .errors import HomotopyInvalid, NotInKernel, ShapeMismatch
from .flavors import FULL_LAURENT
from .laurent import LaurentPoly, X, Y
from .multicomplex import DoubleComplex, TriangularStructure


def _on(c: FreeComplex) -> FreeComplex:
    """View a base complex over the Laurent ring (entries unchanged)."""
    return c if c.flavor == FULL_LAURENT else c.with_flavor(FULL_LAURENT)


def _minus_scalar(m: np.ndarray, t) -> np.ndarray:
    """``m - t * id`` for a square matrix."""
    return m - mx.identity(m.shape[0], t)


def _check_self_map(f: ChainMap, c: FreeComplex, name: str):
    if f.source != c or f.target != c:
        raise ShapeMismatch(f"{name} is not a self map of the base complex")


# 1-tori -----------------------------------------------------------------------------


def mapping_torus_1(h: ChainMap) -> FreeComplex:
    """``T(h) = Cone(h ⊗ id - id ⊗ z)`` over ``Z[z, z^-1]`` with ``z = x``."""
    c = _on(h.source)
    if c.is_zero():
        return FreeComplex.zero(FULL_LAURENT)
    m = ChainMap(c, c, {n: _minus_scalar(h.at(n), X) for n in c.degrees()})
    return cone(m)


def mapping_torus_bicomplex(h: ChainMap, columns: Tuple[int, int]) -> DoubleComplex:
    """
    The bicomplex whose left truncated totalisation is ``T(h)`` tensored
    with the Novikov ring in ``z``: ``D^{p,q} = C^{p+q+1} ⊕ C^{p+q}``,
    ``d_h(x, y) = (0, -x)``, ``d_v(x, y) = (-d x, h x + d y)``.  Only the
    columns in the given range are built.
    """
    c = h.source
    p0, p1 = columns
    ranks, dh, dv = {}, {}, {}
    cdeg = c.degrees()
    if not cdeg:
        return DoubleComplex({}, {}, {}, c.flavor, columns)
    lo, hi = min(cdeg), max(cdeg)
    for p in range(p0, p1 + 1):
        for q in range(lo - 1 - p, hi - p + 1):
            n = p + q
            ranks[(p, q)] = c.rank(n + 1) + c.rank(n)
    for (p, q) in ranks:
        n = p + q
        a, b = c.rank(n + 1), c.rank(n)
        if p + 1 <= p1:
            # (x, y) -> (0, -x) into C^{n+2} ⊕ C^{n+1}
            dh[(p, q)] = mx.block(
                [[mx.zeros(c.rank(n + 2), a), mx.zeros(c.rank(n + 2), b)], [-mx.identity(a), mx.zeros(a, b)]]
            )
        dv[(p, q)] = mx.block([[-c.d(n + 1), mx.zeros(c.rank(n + 2), b)], [h.at(n + 1), c.d(n)]])
    return DoubleComplex(ranks, dh, dv, c.flavor, columns)


def torus_1_isomorphism(K: Homotopy) -> ChainMap:
    """
    For ``dK + Kd = f - g`` the isomorphism ``T(f) -> T(g)``,
    ``(a, b) -> (a, K a + b)``.
    """
    if not check_homotopy(K):
        raise HomotopyInvalid("K is not a homotopy f ~ g")
    Tf, Tg = mapping_torus_1(K.f), mapping_torus_1(K.g)
    c = K.f.source
    mats = {}
    for n in Tf.degrees():
        a, b = c.rank(n + 1), c.rank(n)
        mats[n] = mx.block([[mx.identity(a), mx.zeros(a, b)], [K.at(n + 1), mx.identity(b)]])
    return ChainMap(Tf, Tg, mats)


def torus_1_isomorphism_inverse(K: Homotopy) -> ChainMap:
    """Inverse of :func:`torus_1_isomorphism`: ``(a, b) -> (a, b - K a)``."""
    Tf, Tg = mapping_torus_1(K.f), mapping_torus_1(K.g)
    c = K.f.source
    mats = {}
    for n in Tg.degrees():
        a, b = c.rank(n + 1), c.rank(n)
        mats[n] = mx.block([[mx.identity(a), mx.zeros(a, b)], [-K.at(n + 1), mx.identity(b)]])
    return ChainMap(Tg, Tf, mats)


# 2-tori -----------------------------------------------------------------------------


def _homotopy_matrices(f: ChainMap, g: ChainMap, H) -> Dict[int, np.ndarray]:
    c = f.source
    fg, gf = f.compose(g), g.compose(f)
    if H is None:
        if any(not mx.equal(fg.at(n), gf.at(n)) for n in c.degrees()):
            raise HomotopyInvalid("H = 0 requires fg = gf")
        return {}
    if isinstance(H, Homotopy):
        mats = {n: H.at(n) for n in c.degrees()}
    else:
        mats = dict(H)
    hom = Homotopy(fg, gf, mats)
    if not check_homotopy(hom):
        raise HomotopyInvalid("H is not a homotopy fg ~ gf")
    return {n: hom.at(n) for n in c.degrees()}


def _four_block(c: FreeComplex, f: ChainMap, g: ChainMap, Hm, xs, ys, flavor) -> FreeComplex:
    """
    Degree ``n`` is ``C^{n+2} ⊕ C^{n+1} ⊕ C^{n+1} ⊕ C^n`` and the
    differential is the lower triangular block matrix with rows
    ``[d, 0, 0, 0]``, ``[-(g - xs), -d, 0, 0]``, ``[f - ys, 0, -d, 0]``,
    ``[H, f - ys, g - xs, d]``.
    """
    degs = c.degrees()
    if not degs:
        return FreeComplex.zero(flavor)
    lo, hi = min(degs), max(degs)
    r = c.rank
    ranks, diff, labels = {}, {}, {}
    for n in range(lo - 2, hi + 1):
        ranks[n] = r(n + 2) + 2 * r(n + 1) + r(n)
        labels[n] = [(blk, k, i) for blk, k in ((1, n + 2), (2, n + 1), (3, n + 1), (4, n)) for i in range(r(k))]

    def H(k):
        m = Hm.get(k)
        return m if m is not None else mx.zeros(r(k - 1), r(k))

    def fs(k):
        return _minus_scalar(f.at(k), ys) if ys is not None else f.at(k)

    def gs(k):
        return _minus_scalar(g.at(k), xs) if xs is not None else g.at(k)

    Z = mx.zeros
    for n in range(lo - 2, hi):
        rows = [
            [c.d(n + 2), Z(r(n + 3), r(n + 1)), Z(r(n + 3), r(n + 1)), Z(r(n + 3), r(n))],
            [-gs(n + 2), -c.d(n + 1), Z(r(n + 2), r(n + 1)), Z(r(n + 2), r(n))],
            [fs(n + 2), Z(r(n + 2), r(n + 1)), -c.d(n + 1), Z(r(n + 2), r(n))],
            [H(n + 2), fs(n + 1), gs(n + 1), c.d(n)],
        ]
        diff[n] = mx.block(rows)
    return FreeComplex(ranks, diff, flavor, labels)


def mapping_torus_2(f: ChainMap, g: ChainMap, H=None) -> FreeComplex:
    """
    The mapping 2-torus ``T(f, g; H)`` over the Laurent ring.

    ``H`` is a :class:`Homotopy` (or a dict of matrices ``C^n -> C^{n-1}``)
    with ``d H + H d = fg - gf``; ``None`` means ``H = 0`` and requires
    ``fg = gf`` exactly.
    """
    c = f.source
    _check_self_map(f, c, "f")
    _check_self_map(g, c, "g")
    Hm = _homotopy_matrices(f, g, H)
    return _four_block(c, f, g, Hm, X, Y, FULL_LAURENT)


def analogue_A(f: ChainMap, g: ChainMap, H=None) -> FreeComplex:
    """The 2-torus analogue ``A(f, g; H)``: same matrix without ``x`` and ``y``."""
    c = f.source
    _check_self_map(f, c, "f")
    _check_self_map(g, c, "g")
    Hm = _homotopy_matrices(f, g, H)
    return _four_block(c, f, g, Hm, None, None, c.flavor)


def torus_triangular_structure(t: FreeComplex, base: FreeComplex) -> TriangularStructure:
    """The lower 4-triangular splitting of a 2-torus (or its analogue)."""
    r = base.rank
    return TriangularStructure(t, {n: [r(n + 2), r(n + 1), r(n + 1), r(n)] for n in t.degrees()})


def iterated_cone_square(f: ChainMap, g: ChainMap) -> Tuple[FreeComplex, ChainMap]:
    """
    ``Cone(Cone(f) -> Cone(f))`` for the map induced by ``g`` on the
    commuting square, and the isomorphism
    ``(p1, p2, q1, q2) -> (p1, -q1, -p2, -q2)`` onto ``A(f, g; 0)``.
    """
    c = f.source
    A = analogue_A(f, g)
    cf = cone(f)
    G = ChainMap(cf, cf, {n: mx.block_diag(g.at(n + 1), g.at(n)) for n in cf.degrees()})
    if not G.is_chain_map():
        raise HomotopyInvalid("g does not commute with f")
    cc = cone(G)
    r = c.rank
    mats = {}
    for n in cc.degrees():
        p1, p2, q1, q2 = r(n + 2), r(n + 1), r(n + 1), r(n)
        Z = mx.zeros
        I = mx.identity
        mats[n] = mx.block(
            [
                [I(p1), Z(p1, p2), Z(p1, q1), Z(p1, q2)],
                [Z(q1, p1), Z(q1, p2), -I(q1), Z(q1, q2)],
                [Z(p2, p1), -I(p2), Z(p2, q1), Z(p2, q2)],
                [Z(q2, p1), Z(q2, p2), Z(q2, q1), -I(q2)],
            ]
        )
    return cc, ChainMap(cc, A, mats)


# comparison maps -------------------------------------------------------------------------


def block_sizes(base: FreeComplex, n: int) -> List[int]:
    r = base.rank
    return [r(n + 2), r(n + 1), r(n + 1), r(n)]


def get_block(m: np.ndarray, rows: List[int], cols: List[int], i: int, j: int) -> np.ndarray:
    """Block ``(i, j)`` (1-based) of a block matrix with the given row and column sizes."""
    r0 = sum(rows[: i - 1])
    c0 = sum(cols[: j - 1])
    return m[r0 : r0 + rows[i - 1], c0 : c0 + cols[j - 1]]


def twisted_homotopy(f: ChainMap, g: ChainMap, h: ChainMap, A: Homotopy) -> Dict[int, np.ndarray]:
    """``h (f A g - g A f)``, a homotopy ``(hf)(hg) ~ (hg)(hf)`` when ``fg = gf``."""
    c = f.source
    out = {}
    for n in c.degrees():
        t = mx.chain(f.at(n - 1), A.at(n), g.at(n)) - mx.chain(g.at(n - 1), A.at(n), f.at(n))
        out[n] = mx.mm(h.at(n - 1), t)
    return out


def phi(f: ChainMap, g: ChainMap, h: ChainMap, A: Homotopy) -> ChainMap:
    """
    ``Φ: T(f, g; 0) -> T(hf, hg; h(fAg - gAf))`` for commuting ``f, g`` and
    a homotopy ``A: h ~ id``.
    """
    c = f.source
    if not check_homotopy(A):
        raise HomotopyInvalid("A is not a homotopy h ~ id")
    src = mapping_torus_2(f, g)
    hf, hg = h.compose(f), h.compose(g)
    Ht = twisted_homotopy(f, g, h, A)
    tgt = mapping_torus_2(hf, hg, Ht)
    Z = mx.zeros
    r = c.rank
    mats = {}
    for n in src.degrees():
        a, b, e = r(n + 2), r(n + 1), r(n)
        hgA = mx.chain(h.at(n + 1), g.at(n + 1), A.at(n + 2))
        hfA = mx.chain(h.at(n + 1), f.at(n + 1), A.at(n + 2))
        hfA0 = mx.chain(h.at(n), f.at(n), A.at(n + 1))
        hgA0 = mx.chain(h.at(n), g.at(n), A.at(n + 1))
        corner = mx.mm(Ht.get(n + 1, Z(r(n), r(n + 1))), A.at(n + 2))
        mats[n] = mx.block(
            [
                [h.at(n + 2), Z(a, b), Z(a, b), Z(a, e)],
                [-hgA, h.at(n + 1), Z(b, b), Z(b, e)],
                [hfA, Z(b, b), h.at(n + 1), Z(b, e)],
                [corner, -hfA0, -hgA0, h.at(n)],
            ]
        )
    return ChainMap(src, tgt, mats)


def phi_entry_41(f: ChainMap, g: ChainMap, h: ChainMap, A: Homotopy, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """The two sides ``(Φ d_T)_{4,1}`` and ``(d̂_T Φ)_{4,1}`` in degree ``n``."""
    m = phi(f, g, h, A)
    c = f.source
    lhs = mx.mm(m.at(n + 1), m.source.d(n))
    rhs = mx.mm(m.target.d(n), m.at(n))
    rows, cols = block_sizes(c, n + 1), block_sizes(c, n)
    return get_block(lhs, rows, cols, 4, 1), get_block(rhs, rows, cols, 4, 1)


def alpha_star(f: ChainMap, g: ChainMap, alpha: ChainMap, beta: ChainMap, A: Homotopy) -> ChainMap:
    """
    ``α_*: T(βfα, βgα; β(fAg - gAf)α) -> T(αβf, αβg; αβ(fAg - gAf))``, the
    block diagonal map with ``α`` on the diagonal; ``A: αβ ~ id`` on ``C``.
    """
    B, C = alpha.source, alpha.target
    if not check_homotopy(A):
        raise HomotopyInvalid("A is not a homotopy αβ ~ id")
    K = {n: mx.chain(f.at(n - 1), A.at(n), g.at(n)) - mx.chain(g.at(n - 1), A.at(n), f.at(n)) for n in C.degrees()}
    bfa, bga = beta.compose(f).compose(alpha), beta.compose(g).compose(alpha)
    HB = {n: mx.chain(beta.at(n - 1), K[n], alpha.at(n)) for n in B.degrees() if n in K}
    ab = alpha.compose(beta)
    abf, abg = ab.compose(f), ab.compose(g)
    HC = {n: mx.mm(ab.at(n - 1), K[n]) for n in C.degrees()}
    src = mapping_torus_2(bfa, bga, HB)
    tgt = mapping_torus_2(abf, abg, HC)
    mats = {n: mx.block_diag(alpha.at(n + 2), alpha.at(n + 1), alpha.at(n + 1), alpha.at(n)) for n in src.degrees()}
    return ChainMap(src, tgt, mats)


# tensor elements of C ⊗_R L for an L-complex C -----------------------------------------


@dataclass
class TensorElement:
    """
    An element ``Σ m_{i,j} ⊗ x^i y^j`` of ``C^k ⊗_R L`` where ``C^k = L^r``.
    ``coeffs`` maps the outer exponent ``(i, j)`` to an inner column vector
    of Laurent polynomials.
    """

    rank: int
    coeffs: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            v = mx.as_matrix(np.asarray(v, dtype=object).reshape(-1, 1), self.rank, 1) if self.rank else mx.zeros(0, 1)
            if not mx.is_zero(v):
                clean[tuple(k)] = v
        self.coeffs = clean

    @classmethod
    def inner(cls, vec) -> "TensorElement":
        """``m ⊗ 1``."""
        v = np.asarray(vec, dtype=object).reshape(-1, 1)
        return cls(v.shape[0], {(0, 0): v})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return TensorElement(self.rank, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.rank, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and (self - other).is_zero()

    def outer(self, ex: int, ey: int) -> "TensorElement":
        """Multiply by the outer monomial ``x^ex y^ey``."""
        return TensorElement(self.rank, {(i + ex, j + ey): v for (i, j), v in self.coeffs.items()})

    def apply(self, m: np.ndarray) -> "TensorElement":
        """Apply an inner (L-linear) matrix to every coefficient."""
        return TensorElement(m.shape[0], {k: mx.mm(m, v) for k, v in self.coeffs.items()})

    def inner_mul(self, p) -> "TensorElement":
        return TensorElement(self.rank, {k: mx.scalar_mul(p, v) for k, v in self.coeffs.items()})

    def x_amplitude(self) -> Optional[Tuple[int, int]]:
        if not self.coeffs:
            return None
        xs = [i for i, _ in self.coeffs]
        return min(xs), max(xs)


def alpha_row(z: TensorElement) -> Tuple[TensorElement, TensorElement]:
    """``α(z) = (-(x_in - X) z, (y_in - Y) z)`` for ``f = y``, ``g = x``."""
    return (z.outer(1, 0) - z.inner_mul(X), z.inner_mul(Y) - z.outer(0, 1))


def beta_row(z1: TensorElement, z2: TensorElement) -> TensorElement:
    """``β(z1, z2) = (y_in - Y) z1 + (x_in - X) z2``."""
    return (z1.inner_mul(Y) - z1.outer(0, 1)) + (z2.inner_mul(X) - z2.outer(1, 0))


def gamma(z: TensorElement) -> np.ndarray:
    """``γ(Σ m ⊗ x^i y^j) = Σ m x^i y^j``."""
    out = mx.zeros(z.rank, 1)
    for (i, j), v in z.coeffs.items():
        out = out + mx.scalar_mul(LaurentPoly.monomial(i, j), v)
    return out


@dataclass
class AmplitudeCertificate:
    """A preimage under ``α`` and the number of reduction rounds used."""

    preimage: TensorElement
    rounds: int
    verified: bool


def amplitude_reduce(z1: TensorElement, z2: TensorElement) -> AmplitudeCertificate:
    """
    Express a kernel element of ``β`` as ``α(u)`` by shrinking the
    x-amplitude: with ``b`` the top x-exponent of ``z1``, subtract
    ``α(Σ_j m_{b,j} ⊗ x^{b-1} y^j)``, which clears column ``b`` of ``z1``.
    When ``z1`` is concentrated in the lowest column both components must
    vanish.
    """
    if not beta_row(z1, z2).is_zero():
        raise NotInKernel("(z1, z2) is not in the kernel of β")
    amps = [a for a in (z1.x_amplitude(), z2.x_amplitude()) if a]
    if not amps:
        return AmplitudeCertificate(TensorElement(z1.rank), 0, True)
    a = min(lo for lo, _ in amps)
    orig = (z1, z2)
    pre = TensorElement(z1.rank)
    rounds = 0
    while not z1.is_zero() and z1.x_amplitude()[1] > a:
        b = z1.x_amplitude()[1]
        u = TensorElement(z1.rank, {(b - 1, j): v for (i, j), v in z1.coeffs.items() if i == b})
        a1, a2 = alpha_row(u)
        z1, z2 = z1 - a1, z2 - a2
        pre = pre + u
        rounds += 1
    if not (z1.is_zero() and z2.is_zero()):
        raise NotInKernel("reduction left a nonzero remainder")
    c1, c2 = alpha_row(pre)
    return AmplitudeCertificate(pre, rounds, c1 == orig[0] and c2 == orig[1])


def comparison_maps(kind: str, **data):
    """Dispatch to :func:`phi`, :func:`alpha_star` or :func:`gamma`."""
    if kind == "phi":
        return phi(data["f"], data["g"], data["h"], data["A"])
    if kind == "alpha_star":
        return alpha_star(data["f"], data["g"], data["alpha"], data["beta"], data["A"])
    if kind == "gamma":
        return gamma
    raise ValueError(f"unknown comparison map {kind!r}")
