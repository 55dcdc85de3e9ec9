"""
Sparse Laurent polynomials in two variables over the integers.

Elements of ``L = Z[x, x^-1, y, y^-1]`` are stored as a dictionary mapping
exponent pairs ``(ex, ey)`` to nonzero Python integers.  Python integers are
arbitrary precision, so coefficient growth during elimination never
overflows.

The class interoperates with plain ``int``: ``LaurentPoly(0) == 0`` and
``p + 1`` both work, which lets numpy object arrays hold a mix of the two.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

Monomial = Tuple[int, int]


def _clean(terms: Iterable[Tuple[Monomial, int]]) -> Dict[Monomial, int]:
    out: Dict[Monomial, int] = {}
    for m, c in terms:
        c = int(c)
        if c:
            m = (int(m[0]), int(m[1]))
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class LaurentPoly:
    """
    An immutable element of ``Z[x, x^-1, y, y^-1]``.

    INPUT:

    - ``terms`` -- a mapping ``(ex, ey) -> coefficient``, an ``int``
      (constant polynomial) or another ``LaurentPoly``

    EXAMPLES::

        >>> x, y = LaurentPoly.x(), LaurentPoly.y()
        >>> (1 + x) * (1 - x)
        LaurentPoly('1 - x^2')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            t = {}
        elif isinstance(terms, LaurentPoly):
            t = terms._terms
        elif isinstance(terms, int):
            t = {(0, 0): terms} if terms else {}
        elif isinstance(terms, Mapping):
            t = _clean(terms.items())
        else:
            t = _clean(terms)
        object.__setattr__(self, "_terms", t)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, ex: int, ey: int, c: int = 1) -> "LaurentPoly":
        return cls({(ex, ey): c})

    @classmethod
    def x(cls) -> "LaurentPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "LaurentPoly":
        return cls.monomial(0, 1)

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "LaurentPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # container-like access --------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, int]:
        """A copy of the term map."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self._terms.items())

    def coeff(self, ex: int, ey: int) -> int:
        return self._terms.get((ex, ey), 0)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        """True for a single term with any nonzero coefficient."""
        return len(self._terms) == 1

    def leading_single(self) -> Optional[Tuple[Monomial, int]]:
        if len(self._terms) != 1:
            return None
        return next(iter(self._terms.items()))

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        try:
            import numbers

            if isinstance(other, numbers.Integral):
                return LaurentPoly(int(other))
        except Exception:  # pragma: no cover
            pass
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        t = dict(self._terms)
        for m, c in o._terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                del t[m]
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return multiply(self, o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            single = self.leading_single()
            if single is None or abs(single[1]) != 1:
                raise ValueError("only ±monomials have Laurent inverses")
            (ex, ey), c = single
            k = -n
            return LaurentPoly.monomial(-ex * k, -ey * k, c**k)
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, ex: int, ey: int) -> "LaurentPoly":
        """Multiply by the monomial ``x^ex y^ey``."""
        if ex == 0 and ey == 0:
            return self
        return LaurentPoly._raw({(a + ex, b + ey): c for (a, b), c in self._terms.items()})

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly()
        return LaurentPoly._raw({m: c * v for m, v in self._terms.items()})

    def filter(self, keep) -> "LaurentPoly":
        """Keep the terms whose monomial satisfies ``keep``."""
        return LaurentPoly._raw({m: c for m, c in self._terms.items() if keep(m)})

    def clip(self, radius: int) -> "LaurentPoly":
        """Drop terms outside the L-infinity box of the given radius."""
        return self.filter(lambda m: abs(m[0]) <= radius and abs(m[1]) <= radius)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            if not self._terms:
                h = hash(0)
            elif len(self._terms) == 1 and (0, 0) in self._terms:
                h = hash(self._terms[(0, 0)])
            else:
                h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # presentation -------------------------------------------------------
    def sorted_terms(self):
        """Terms in the canonical order: lexicographic by ``(ey, ex)``."""
        return sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0]))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (ex, ey), c in sorted(self._terms.items()):
            mono = []
            if ex:
                mono.append("x" if ex == 1 else f"x^{ex}")
            if ey:
                mono.append("y" if ey == 1 else f"y^{ey}")
            m = "*".join(mono)
            if not m:
                s = str(abs(c))
            elif abs(c) == 1:
                s = m
            else:
                s = f"{abs(c)}*{m}"
            pieces.append(("-" if c < 0 else "+", s))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in pieces[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"LaurentPoly('{self}')"

    def to_json(self):
        return [{"c": str(c), "x": ex, "y": ey} for (ex, ey), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, location: str = "") -> "LaurentPoly":
        from .errors import InputError

        if isinstance(data, int) and not isinstance(data, bool):
            return cls(data)
        if not isinstance(data, list):
            raise InputError("polynomial must be an array of terms", location)
        terms = []
        for k, term in enumerate(data):
            loc = f"{location}[{k}]"
            if not isinstance(term, dict):
                raise InputError("term must be an object", loc)
            extra = set(term) - {"c", "x", "y"}
            if extra:
                raise InputError(f"unknown keys {sorted(extra)}", loc)
            c = term.get("c")
            if isinstance(c, str):
                try:
                    c = int(c)
                except ValueError:
                    raise InputError("coefficient is not an integer string", loc + ".c") from None
            elif not (isinstance(c, int) and not isinstance(c, bool)):
                raise InputError("coefficient must be an integer string", loc + ".c")
            ex, ey = term.get("x", 0), term.get("y", 0)
            for name, v in (("x", ex), ("y", ey)):
                if not (isinstance(v, int) and not isinstance(v, bool)):
                    raise InputError("exponent must be an integer", f"{loc}.{name}")
            terms.append(((ex, ey), c))
        return cls(terms)


def multiply(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact product; cancelled terms are removed."""
    if not p._terms or not q._terms:
        return LaurentPoly._raw({})
    if len(p._terms) > len(q._terms):
        p, q = q, p
    out: Dict[Monomial, int] = {}
    qt = q._terms.items()
    for (a, b), c in p._terms.items():
        for (e, f), d in qt:
            m = (a + e, b + f)
            out[m] = out.get(m, 0) + c * d
    return LaurentPoly._raw({m: c for m, c in out.items() if c})


def support_box(p: LaurentPoly) -> Optional[Tuple[int, int, int, int]]:
    """
    Componentwise extremes ``(min_ex, max_ex, min_ey, max_ey)``, or ``None``
    for the zero polynomial.
    """
    if not p._terms:
        return None
    xs = [m[0] for m in p._terms]
    ys = [m[1] for m in p._terms]
    return (min(xs), max(xs), min(ys), max(ys))


def substitute(p: LaurentPoly, sx: int = 1, sy: int = 1, swap: bool = False) -> LaurentPoly:
    """Apply ``x -> x^sx, y -> y^sy`` and then optionally exchange x and y."""
    if sx not in (1, -1) or sy not in (1, -1):
        raise ValueError("sx and sy must be +1 or -1")
    if swap:
        return LaurentPoly._raw({(sy * b, sx * a): c for (a, b), c in p._terms.items()})
    return LaurentPoly._raw({(sx * a, sy * b): c for (a, b), c in p._terms.items()})


def radius(p: LaurentPoly) -> int:
    """Largest L-infinity norm of an exponent in the support (0 for p = 0)."""
    return max((max(abs(a), abs(b)) for a, b in p._terms), default=0)


def spread(p: LaurentPoly) -> int:
    """Largest side length of the support box (0 for zero or a monomial)."""
    box = support_box(p)
    if box is None:
        return 0
    return max(box[1] - box[0], box[3] - box[2])


X = LaurentPoly.x()
Y = LaurentPoly.y()
ONE = LaurentPoly(1)
ZERO = LaurentPoly()


def mono(ex: int, ey: int, c: int = 1) -> LaurentPoly:
    """Shorthand for ``c * x^ex * y^ey``."""
    return LaurentPoly.monomial(ex, ey, c)
