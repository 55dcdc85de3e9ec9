"""
Catalogue of coefficient rings.

Every ring that appears in the construction is a subring of a ring of
formal Laurent series in x and y.  A :class:`RingFlavor` records which one
through a *kind* and orientation signs ``sx, sy`` (``+1``, ``-1`` or ``0``
for a free direction).  Writing ``a = sx*i`` and ``b = sy*j`` for the
oriented exponents of ``x^i y^j``:

================== ========================== ==============================
kind               ring (canonical signs)     monomial membership
================== ========================== ==============================
``integers``       Z                          ``(0, 0)`` only
``laurent``        Z[x^±, y^±]                all
``face``           A_F = Z[T_F ∩ Z²]          ``a >= 0`` and ``b >= 0``
``corner_power``   Z[[x, y]]                  ``a >= 0`` and ``b >= 0``
``edge_power``     Z[x^±][[y]]                series coordinate ``>= 0``
``corner_novikov`` Z[[x, y]][(xy)^-1]         all
``edge_novikov``   Z[x^±]((y))                all
``nested_nov_pow`` Z((x))[[y]]                outer coordinate ``>= 0``
``nested_nov_nov`` Z((x))((y))                all
================== ========================== ==============================

For face algebras a zero sign means the direction is free, so the same
predicate covers vertices, edges and the whole square.  Edge kinds carry
their series ``axis``; nested kinds carry their *outer* axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import FlavorMismatch, NotAnElement, NotUnit, WindowTooSmall
from .laurent import LaurentPoly, Monomial, radius, substitute

KINDS = (
    "integers",
    "laurent",
    "face",
    "corner_power",
    "edge_power",
    "corner_novikov",
    "edge_novikov",
    "nested_nov_pow",
    "nested_nov_nov",
)

# barycentres of the faces of the square [-1, 1]^2
BARYCENTRE = {
    "v_bl": (-1, -1),
    "v_br": (1, -1),
    "v_tl": (-1, 1),
    "v_tr": (1, 1),
    "e_b": (0, -1),
    "e_t": (0, 1),
    "e_l": (-1, 0),
    "e_r": (1, 0),
    "S": (0, 0),
}


def _face_of_signs(sx: int, sy: int) -> str:
    for name, (vx, vy) in BARYCENTRE.items():
        if (-vx, -vy) == (sx, sy):
            return name
    raise ValueError((sx, sy))


@dataclass(frozen=True)
class RingFlavor:
    """
    A ring from the catalogue.

    Construct flavors through the helper functions (:func:`corner_novikov`,
    :func:`face_algebra`, :func:`nerve_ring`, ...) or :func:`flavor_by_name`
    rather than directly.
    """

    kind: str
    sx: int = 0
    sy: int = 0
    axis: str = ""
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown flavor kind {self.kind!r}")

    # naming ---------------------------------------------------------------
    @property
    def name(self) -> str:
        return self.label or canonical_name(self)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"RingFlavor({self.name})"

    # membership -------------------------------------------------------------
    def contains(self, m: Monomial) -> bool:
        return contains_monomial(self, m)

    def oriented(self, m: Monomial) -> Tuple[int, int]:
        return (self.sx * m[0], self.sy * m[1])

    @property
    def is_series(self) -> bool:
        return self.kind not in ("integers", "laurent", "face")

    @property
    def is_novikov(self) -> bool:
        return self.kind in ("corner_novikov", "edge_novikov", "nested_nov_nov")

    def transform(self, sx: int = 1, sy: int = 1, swap: bool = False) -> "RingFlavor":
        """
        The image flavor under ``x -> x^sx, y -> y^sy`` followed by an
        optional exchange of x and y, so that
        ``is_unit(f, p) == is_unit(f.transform(...), substitute(p, ...))``.
        """
        nx, ny, axis = self.sx * sx, self.sy * sy, self.axis
        if swap:
            nx, ny = ny, nx
            axis = {"x": "y", "y": "x"}.get(axis, axis)
        return RingFlavor(self.kind, nx, ny, axis)


def _var(v: str, s: int) -> str:
    return v if s > 0 else f"{v}^-1"


def canonical_name(f: RingFlavor) -> str:
    k = f.kind
    if k == "integers":
        return "Z"
    if k == "laurent":
        return "Lxy"
    if k == "face":
        return f"A({_face_of_signs(f.sx, f.sy)})"
    if k == "corner_novikov":
        return f"Nov({_var('x', f.sx)},{_var('y', f.sy)})"
    if k == "corner_power":
        return f"Pow({_var('x', f.sx)},{_var('y', f.sy)})"
    if k in ("edge_novikov", "edge_power"):
        free = "y" if f.axis == "x" else "x"
        s = f.sx if f.axis == "x" else f.sy
        tag = "Nov" if k == "edge_novikov" else "Pow"
        return f"L{free}.{tag}({_var(f.axis, s)})"
    inner = "y" if f.axis == "x" else "x"
    si = f.sy if inner == "y" else f.sx
    so = f.sx if f.axis == "x" else f.sy
    tag = "Nov" if k == "nested_nov_nov" else "Pow"
    return f"Nov({_var(inner, si)}).{tag}({_var(f.axis, so)})"


# constructors -----------------------------------------------------------------

INTEGERS = RingFlavor("integers")
FULL_LAURENT = RingFlavor("laurent")


def corner_novikov(sx: int, sy: int) -> RingFlavor:
    return RingFlavor("corner_novikov", sx, sy)


def corner_power(sx: int, sy: int) -> RingFlavor:
    return RingFlavor("corner_power", sx, sy)


def edge_novikov(axis: str, s: int) -> RingFlavor:
    return RingFlavor("edge_novikov", s if axis == "x" else 0, s if axis == "y" else 0, axis)


def edge_power(axis: str, s: int) -> RingFlavor:
    return RingFlavor("edge_power", s if axis == "x" else 0, s if axis == "y" else 0, axis)


def nested(outer_axis: str, outer_sign: int, inner_sign: int, outer_novikov: bool) -> RingFlavor:
    """``Z((inner))((outer))`` or ``Z((inner))[[outer]]``."""
    kind = "nested_nov_nov" if outer_novikov else "nested_nov_pow"
    if outer_axis == "x":
        return RingFlavor(kind, outer_sign, inner_sign, "x")
    return RingFlavor(kind, inner_sign, outer_sign, "y")


def face_algebra(face: str) -> RingFlavor:
    """``A_F``, the monoid algebra of the tangent cone of the square at ``F``."""
    vx, vy = BARYCENTRE[face]
    return RingFlavor("face", -vx, -vy, label=f"A({face})")


def detection_flavors() -> List[RingFlavor]:
    """
    The eight test rings: corners bl, br, tl, tr, then edges b, t, l, r.
    """
    corners = [corner_novikov(-vx, -vy) for vx, vy in (BARYCENTRE[v] for v in ("v_bl", "v_br", "v_tl", "v_tr"))]
    edges = [edge_novikov("y", 1), edge_novikov("y", -1), edge_novikov("x", 1), edge_novikov("x", -1)]
    return corners + edges


def _face_dim(face: str) -> int:
    return 2 if face == "S" else (1 if face.startswith("e_") else 0)


def nerve_ring(flag) -> RingFlavor:
    """
    The ring ``A<tau>`` attached to a flag ``tau`` (a chain of faces,
    given as names, in increasing order).
    """
    flag = tuple(sorted(flag, key=_face_dim))
    label = "A<" + ",".join(flag) + ">"
    dims = tuple(_face_dim(f) for f in flag)
    lowest = flag[0]
    vx, vy = BARYCENTRE[lowest]
    if dims == (2,):
        return RingFlavor("laurent", label=label)
    if dims in ((0,), (0, 2)):
        kind = "corner_power" if dims == (0,) else "corner_novikov"
        return RingFlavor(kind, -vx, -vy, label=label)
    if dims in ((1,), (1, 2)):
        axis = "x" if vx else "y"
        s = -(vx or vy)
        f = edge_power(axis, s) if dims == (1,) else edge_novikov(axis, s)
        return RingFlavor(f.kind, f.sx, f.sy, f.axis, label=label)
    if dims in ((0, 1), (0, 1, 2)):
        e = flag[1]
        ex, ey = BARYCENTRE[e]
        axis = "x" if ex else "y"
        f = nested(axis, -(ex or ey), -(vy if axis == "x" else vx), dims == (0, 1, 2))
        return RingFlavor(f.kind, f.sx, f.sy, f.axis, label=label)
    raise ValueError(f"not a flag: {flag}")


def _all_flags():
    faces = list(BARYCENTRE)
    cont = {f: {g for g in faces if _contains(g, f)} for f in faces}
    flags = []
    for a in faces:
        flags.append((a,))
        for b in faces:
            if b != a and b in cont[a]:
                flags.append((a, b))
                for c in faces:
                    if c not in (a, b) and c in cont[b]:
                        flags.append((a, b, c))
    return flags


def _contains(big: str, small: str) -> bool:
    """True when face ``small`` is contained in face ``big``."""
    if big == small or big == "S":
        return True
    if _face_dim(big) == 1 and _face_dim(small) == 0:
        (bx, by), (sx, sy) = BARYCENTRE[big], BARYCENTRE[small]
        return (bx == 0 or bx == sx) and (by == 0 or by == sy)
    return False


def _registry() -> Dict[str, RingFlavor]:
    reg: Dict[str, RingFlavor] = {"Z": INTEGERS, "Lxy": FULL_LAURENT}
    for s1 in (1, -1):
        for s2 in (1, -1):
            for f in (corner_novikov(s1, s2), corner_power(s1, s2)):
                reg[f.name] = f
            for axis in ("x", "y"):
                for outer_nov in (True, False):
                    f = nested(axis, s1, s2, outer_nov)
                    reg[f.name] = f
        for axis in ("x", "y"):
            for f in (edge_novikov(axis, s1), edge_power(axis, s1)):
                reg[f.name] = f
    for face in BARYCENTRE:
        f = face_algebra(face)
        reg[f.name] = f
    for flag in _all_flags():
        f = nerve_ring(flag)
        reg[f.name] = f
    return reg


_REGISTRY: Optional[Dict[str, RingFlavor]] = None


def flavor_by_name(name: str) -> RingFlavor:
    """Look up a flavor by its external name (e.g. ``"Nov(x^-1,y)"``)."""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _registry()
    try:
        return _REGISTRY[name.replace(" ", "")]
    except KeyError:
        raise KeyError(f"unknown flavor name {name!r}") from None


def flavor_names() -> List[str]:
    flavor_by_name("Z")
    return sorted(_REGISTRY)


# membership -----------------------------------------------------------------


def contains_monomial(f: RingFlavor, m: Monomial) -> bool:
    """True iff ``x^m[0] y^m[1]`` is an element of the ring ``f``."""
    k = f.kind
    if k in ("laurent", "corner_novikov", "edge_novikov", "nested_nov_nov"):
        return True
    if k == "integers":
        return m == (0, 0)
    if k == "nested_nov_pow":
        return (f.sx * m[0] if f.axis == "x" else f.sy * m[1]) >= 0
    # face, corner_power, edge_power: zero sign = free direction
    return f.sx * m[0] >= 0 and f.sy * m[1] >= 0


def contains(f: RingFlavor, p: LaurentPoly) -> bool:
    return all(contains_monomial(f, m) for m in p.support())


def require_member(f: RingFlavor, p: LaurentPoly) -> None:
    if not contains(f, p):
        bad = sorted(m for m in p.support() if not contains_monomial(f, m))
        raise NotAnElement(f"{p} is not an element of {f.name}: monomials {bad}")


# unit detection ---------------------------------------------------------------


@dataclass(frozen=True)
class UnitAnswer:
    """
    Result of :func:`is_unit`.  Truthy exactly for units; ``leading`` is the
    leading monomial and ``coeff`` its coefficient (``±1``) for units.
    """

    unit: bool
    leading: Optional[Monomial] = None
    coeff: int = 0
    reason: str = ""

    def __bool__(self):
        return self.unit


def _not_unit(reason: str) -> UnitAnswer:
    return UnitAnswer(False, reason=reason)


def _canonical(f: RingFlavor, p: LaurentPoly):
    """
    Substitute so that ``f`` becomes its canonical orientation: positive
    signs, series/outer axis ``y``.  Returns the new polynomial and the map
    sending a canonical monomial back.
    """
    sx = f.sx or 1
    sy = f.sy or 1
    swap = f.axis == "x"
    q = substitute(p, sx, sy, swap)

    def back(m: Monomial) -> Monomial:
        a, b = (m[1], m[0]) if swap else m
        return (sx * a, sy * b)

    def back_poly(r: LaurentPoly) -> LaurentPoly:
        if swap:
            r = substitute(r, 1, 1, True)
        return substitute(r, sx, sy, False)

    return q, back, back_poly


def _slices(p: LaurentPoly) -> Dict[int, Dict[int, int]]:
    out: Dict[int, Dict[int, int]] = {}
    for (i, j), c in p.items():
        out.setdefault(j, {})[i] = c
    return out


def is_unit(f: RingFlavor, p: LaurentPoly) -> UnitAnswer:
    """
    Decide whether ``p`` is a unit of ``f``.

    Novikov-type rings use the leading-term rule: the extremal part of the
    support must be a single term with coefficient ``±1``.  Region-restricted
    rings first check that ``p`` is an element at all.

    EXAMPLES::

        >>> mu = LaurentPoly({(0, 0): 1, (1, 2): 1, (2, 0): 1, (2, 1): 1})
        >>> is_unit(corner_novikov(-1, 1), mu).leading
        (2, 0)
    """
    p = LaurentPoly(p)
    if f.kind in ("integers", "face", "corner_power", "edge_power", "nested_nov_pow"):
        require_member(f, p)
    if p.is_zero():
        return _not_unit("zero")
    k = f.kind
    if k in ("integers", "laurent", "face"):
        single = p.leading_single()
        if single is None:
            return _not_unit("not a single term")
        m, c = single
        if abs(c) != 1:
            return _not_unit(f"coefficient {c} is not ±1")
        inv = (-m[0], -m[1])
        if not contains_monomial(f, inv):
            return _not_unit(f"inverse monomial {inv} is not in {f.name}")
        return UnitAnswer(True, m, c)

    q, back, _ = _canonical(f, p)
    if k in ("corner_novikov", "corner_power"):
        sup = q.support()
        a0 = min(m[0] for m in sup)
        b0 = min(m[1] for m in sup)
        c = q.coeff(a0, b0)
        if c == 0:
            return _not_unit("no componentwise minimum of the support")
        if abs(c) != 1:
            return _not_unit(f"minimal coefficient {c} is not ±1")
        if k == "corner_power" and (a0, b0) != (0, 0):
            return _not_unit("no constant term")
        return UnitAnswer(True, back((a0, b0)), c)

    sl = _slices(q)
    j0 = min(sl)
    low = sl[j0]
    if k in ("edge_novikov", "edge_power"):
        if k == "edge_power" and j0 != 0:
            return _not_unit("lowest series slice is not in degree 0")
        if len(low) != 1:
            return _not_unit("lowest series slice is not a single term")
        (i0, c), = low.items()
        if abs(c) != 1:
            return _not_unit(f"coefficient {c} is not ±1")
        return UnitAnswer(True, back((i0, j0)), c)

    # nested: the lowest outer slice must be a unit of Z((inner))
    if k == "nested_nov_pow" and j0 != 0:
        return _not_unit("lowest outer slice is not in degree 0")
    i0 = min(low)
    c = low[i0]
    if abs(c) != 1:
        return _not_unit(f"lowest inner coefficient {c} of the lowest outer slice is not ±1")
    return UnitAnswer(True, back((i0, j0)), c)


def leading_key(f: RingFlavor, m: Monomial) -> Tuple[int, ...]:
    """
    Sort key of a leading monomial, expressed in the oriented coordinates of
    ``f`` and symmetric under exchanging x and y, so that pivot choices are
    compatible with coordinate changes.
    """
    a, b = f.sx * m[0], f.sy * m[1]
    k = f.kind
    if k in ("corner_novikov", "corner_power"):
        return (a + b, min(a, b))
    if k in ("edge_novikov", "edge_power"):
        series, free = (a, m[1]) if f.axis == "x" else (b, m[0])
        return (series, abs(free))
    if k in ("nested_nov_nov", "nested_nov_pow"):
        return (a, b) if f.axis == "x" else (b, a)
    return (abs(m[0]) + abs(m[1]), min(abs(m[0]), abs(m[1])))


# Newton-polygon obstruction --------------------------------------------------


def initial_form_obstruction(f: RingFlavor, p: LaurentPoly) -> Optional[Tuple[Tuple[int, int], LaurentPoly]]:
    """
    An independent certificate that ``p`` is *not* a unit of a Novikov
    flavor: a weight ``w`` in the flavor's positive cone whose initial form
    ``in_w(p)`` is not ``±monomial``.  Since initial forms are multiplicative,
    a unit must have a ``±monomial`` initial form for every such weight.

    Returns ``None`` when no obstruction exists.  The weights tried are the
    normals of the south-west Newton polygon (corner rings) or the series
    direction (edge rings).
    """
    p = LaurentPoly(p)
    if p.is_zero():
        return ((1, 1), p)
    q, _, back_poly = _canonical(f, p)
    if f.kind == "edge_novikov":
        weights = [(0, 1)]
    elif f.kind == "corner_novikov":
        weights = _southwest_normals(q.support())
    else:
        raise ValueError("obstructions are implemented for detection flavors only")
    for w in weights:
        vals = {m: w[0] * m[0] + w[1] * m[1] for m in q.support()}
        lo = min(vals.values())
        init = q.filter(lambda m: vals[m] == lo)
        single = init.leading_single()
        if single is None or abs(single[1]) != 1:
            return (w, back_poly(init))
    return None


def _southwest_normals(points) -> List[Tuple[int, int]]:
    pts = sorted(set(points))
    # Pareto-minimal staircase, then its lower convex hull
    stair = []
    best_b = None
    for a, b in pts:
        if best_b is None or b < best_b:
            stair.append((a, b))
            best_b = b
    hull: List[Tuple[int, int]] = []
    for pt in stair:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    if len(hull) == 1:
        return [(1, 1)]
    return [(hull[t][1] - hull[t + 1][1], hull[t + 1][0] - hull[t][0]) for t in range(len(hull) - 1)]


# truncated series -----------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """
    A series known on the window ``[-N, N]^2``; coefficients are guaranteed
    to agree with the true series on the smaller box of L-infinity radius
    ``radius``.
    """

    flavor: RingFlavor
    window: int
    terms: LaurentPoly
    radius: int

    @classmethod
    def from_poly(cls, f: RingFlavor, p: LaurentPoly, window: int) -> "TruncatedSeries":
        p = LaurentPoly(p)
        require_member(f, p)
        if radius(p) > window:
            raise WindowTooSmall(f"{p} does not fit in the window of radius {window}")
        return cls(f, window, p, window)

    def exact_part(self) -> LaurentPoly:
        return self.terms.clip(max(self.radius, -1))

    def agrees_with(self, p: LaurentPoly) -> bool:
        """True when ``p`` and the series agree on the guaranteed box."""
        r = self.radius
        return (self.terms - LaurentPoly(p)).clip(r).is_zero()

    def __add__(self, other):
        return series_arith(self, other, "add")

    def __mul__(self, other):
        return series_arith(self, other, "mul")


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    """
    Add or multiply two truncated series of the same flavor and window.

    The guaranteed radius of a product shrinks by the support radius of the
    other operand.
    """
    if a.flavor != b.flavor or a.window != b.window:
        raise FlavorMismatch(f"{a.flavor.name}/{a.window} vs {b.flavor.name}/{b.window}")
    f, n = a.flavor, a.window
    if op == "add":
        t = a.terms + b.terms
        r = min(a.radius, b.radius)
    elif op == "mul":
        t = a.terms * b.terms
        r = min(a.radius - radius(b.terms), b.radius - radius(a.terms))
    else:
        raise ValueError(f"unknown op {op!r}")
    t = t.clip(n).filter(lambda m: contains_monomial(f, m))
    return TruncatedSeries(f, n, t, r)


def invert(f: RingFlavor, p: LaurentPoly, window: int) -> TruncatedSeries:
    """
    Inverse of a unit as a truncated series on ``[-N, N]^2``.

    Writing ``p = ±m (1 + r)`` with ``m`` the leading monomial, the inverse
    is ``±m^-1 Σ (-r)^t``; it is computed by the equivalent recursion
    ``s = 1 - r s`` ordered by the flavor's valuation, which only ever refers
    to already-known coefficients.  The result is exact on the box of
    radius ``N - radius(p)``.

    EXAMPLES::

        >>> one = LaurentPoly(1)
        >>> invert(corner_novikov(1, 1), one - LaurentPoly.x(), 3).terms
        LaurentPoly('1 + x + x^2 + x^3')
    """
    p = LaurentPoly(p)
    ans = is_unit(f, p)
    if not ans:
        raise NotUnit(f"{p} is not a unit of {f.name}: {ans.reason}")
    guaranteed = window - radius(p)
    if guaranteed < 0:
        raise WindowTooSmall(f"window {window} is smaller than the support radius of {p}")
    k = f.kind
    (li, lj), c = ans.leading, ans.coeff
    if k in ("integers", "laurent", "face"):
        q = LaurentPoly.monomial(-li, -lj, c)
        return TruncatedSeries(f, window, q.clip(window), guaranteed)

    q, back, back_poly = _canonical(f, p)
    # leading monomial in canonical coordinates
    lead = next(m for m in q.support() if back(m) == (li, lj))
    # normalised tail r = c m^-1 q - 1
    r = {(a - lead[0], b - lead[1]): c * v for (a, b), v in q.items() if (a, b) != lead}
    # every canonical exponent e of the result sits at e - lead in s
    bound = window + max(abs(lead[0]), abs(lead[1]))

    if k in ("corner_novikov", "corner_power"):
        s = _invert_corner(r, bound)
    elif k in ("edge_novikov", "edge_power"):
        s = _invert_edge(r, bound, window + abs(lead[0]))
    else:
        s = _invert_nested(r, bound, window + abs(lead[0]))
    inv = LaurentPoly(s).shift(-lead[0], -lead[1]).scale(c)
    inv = back_poly(inv).clip(window)
    return TruncatedSeries(f, window, inv, guaranteed)


def _invert_corner(r: Dict[Monomial, int], bound: int) -> Dict[Monomial, int]:
    # r supported in the quadrant minus the origin; solve s = 1 - r s on [0, bound]^2
    s: Dict[Monomial, int] = {}
    tail = list(r.items())
    for tot in range(0, 2 * bound + 1):
        for a in range(max(0, tot - bound), min(tot, bound) + 1):
            b = tot - a
            v = 1 if (a, b) == (0, 0) else 0
            for (ta, tb), rc in tail:
                prev = s.get((a - ta, b - tb))
                if prev:
                    v -= rc * prev
            if v:
                s[(a, b)] = v
    return s


def _invert_edge(r: Dict[Monomial, int], bound: int, xbound: int) -> Dict[Monomial, int]:
    # r supported in slices j >= 1 with arbitrary x; solve slice by slice
    rs: Dict[int, Dict[int, int]] = {}
    for (i, j), v in r.items():
        rs.setdefault(j, {})[i] = v
    reach = max((abs(i) for (i, _) in r), default=0)
    slices: Dict[int, Dict[int, int]] = {0: {0: 1}}
    for j in range(1, bound + 1):
        acc: Dict[int, int] = {}
        limit = xbound + (bound - j) * reach
        for l, rl in rs.items():
            prev = slices.get(j - l)
            if not prev:
                continue
            for i1, c1 in rl.items():
                for i2, c2 in prev.items():
                    i = i1 + i2
                    if abs(i) <= limit:
                        acc[i] = acc.get(i, 0) - c1 * c2
        slices[j] = {i: v for i, v in acc.items() if v}
    return {(i, j): v for j, sl in slices.items() for i, v in sl.items()}


def _invert_nested(r: Dict[Monomial, int], bound: int, xbound: int) -> Dict[Monomial, int]:
    # r = r0 + (slices j >= 1), r0 in slice 0 with x-exponents >= 1.
    # Inner series are truncated above; precision is tracked and the
    # truncation point enlarged until every slice is exact up to xbound.
    rs: Dict[int, Dict[int, int]] = {}
    for (i, j), v in r.items():
        rs.setdefault(j, {})[i] = v
    r0 = rs.pop(0, {})
    lows = [min(sl) for sl in rs.values()]
    drop = max(0, -min(lows, default=0))
    cap = xbound + (bound + 1) * (drop + 1) + 1
    while True:
        out, ok = _nested_attempt(r0, rs, bound, xbound, cap)
        if ok:
            return out
        cap *= 2
        if cap > 10**6:  # pragma: no cover - would need absurd windows
            raise WindowTooSmall("nested inversion did not reach the requested precision")


def _nested_attempt(r0, rs, bound, xbound, cap):
    def mul(a, ha, b, hb):
        # a exact up to ha, b exact up to hb (hb None = polynomial)
        out: Dict[int, int] = {}
        for i1, c1 in a.items():
            for i2, c2 in b.items():
                i = i1 + i2
                if i <= cap:
                    out[i] = out.get(i, 0) + c1 * c2
        lo_a = min(a, default=0)
        lo_b = min(b, default=0)
        h = ha + lo_b if hb is None else min(ha + lo_b, hb + lo_a)
        return {i: v for i, v in out.items() if v}, min(h, cap)

    # u = (1 + r0)^-1 in Z((x)), exact up to cap
    u: Dict[int, int] = {}
    for i in range(0, cap + 1):
        v = 1 if i == 0 else 0
        for t, rc in r0.items():
            prev = u.get(i - t)
            if prev:
                v -= rc * prev
        if v:
            u[i] = v
    hu = cap
    slices = {0: (u, hu)}
    for j in range(1, bound + 1):
        acc: Dict[int, int] = {}
        hacc = cap
        for l, rl in rs.items():
            if l > j:
                continue
            prev, hp = slices[j - l]
            if not prev:
                hacc = min(hacc, hp + min(rl))
                continue
            prod, hprod = mul(prev, hp, rl, None)
            hacc = min(hacc, hprod)
            for i, v in prod.items():
                acc[i] = acc.get(i, 0) + v
        acc = {i: -v for i, v in acc.items() if v}
        if acc:
            sj, hj = mul(acc, hacc, u, hu)
        else:
            sj, hj = {}, hacc + min(u, default=0)
        slices[j] = (sj, hj)
    ok = all(h >= xbound for _, h in slices.values())
    out = {(i, j): v for j, (sl, h) in slices.items() for i, v in sl.items() if i <= h}
    return out, ok
