"""
Bounded cochain complexes of finitely generated free modules.

A :class:`FreeComplex` stores ranks per degree and the differential
``d(n): C^n -> C^(n+1)`` as a ``rank(n+1) x rank(n)`` object array (entries
act on column vectors).  Missing differentials are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import matrices as mx
from .errors import FlavorMismatch, InputError, NotAnElement, ShapeMismatch
from .flavors import FULL_LAURENT, INTEGERS, RingFlavor, contains, flavor_by_name
from .laurent import LaurentPoly, substitute


@dataclass
class ValidationReport:
    ok: bool
    degrees: List[int] = field(default_factory=list)
    messages: List[str] = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class FreeComplex:
    """
    A bounded cochain complex of free modules over ``flavor``.

    ``labels`` optionally annotates each basis element (for example with the
    face of the square or the flag it belongs to); it does not take part in
    any algebra.
    """

    ranks: Dict[int, int]
    diff: Dict[int, np.ndarray]
    flavor: RingFlavor = FULL_LAURENT
    labels: Optional[Dict[int, list]] = None

    def __post_init__(self):
        ranks = {int(n): int(r) for n, r in self.ranks.items() if r}
        object.__setattr__(self, "ranks", ranks)
        diff = {}
        for n, m in self.diff.items():
            n = int(n)
            m = mx.as_matrix(m, ranks.get(n + 1, 0), ranks.get(n, 0))
            if m.size and not mx.is_zero(m):
                diff[n] = m
        object.__setattr__(self, "diff", diff)

    @classmethod
    def from_lists(cls, ranks, diff, flavor: RingFlavor = INTEGERS, labels=None) -> "FreeComplex":
        return cls(dict(ranks), {n: mx.as_matrix(m) for n, m in diff.items()}, flavor, labels)

    @classmethod
    def zero(cls, flavor: RingFlavor = FULL_LAURENT) -> "FreeComplex":
        return cls({}, {}, flavor)

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def d(self, n: int) -> np.ndarray:
        m = self.diff.get(n)
        if m is None:
            return mx.zeros(self.rank(n + 1), self.rank(n))
        return m

    def degrees(self) -> List[int]:
        return sorted(self.ranks)

    def is_zero(self) -> bool:
        return not self.ranks

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * r for n, r in self.ranks.items())

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def validate(self) -> ValidationReport:
        """Check shapes and ``d(n+1) d(n) = 0``."""
        bad, msgs = [], []
        for n in self.degrees():
            if self.rank(n + 1) and self.rank(n + 2):
                prod = mx.mm(self.d(n + 1), self.d(n))
                if not mx.is_zero(prod):
                    bad.append(n)
                    msgs.append(f"d({n + 1}) d({n}) has nonzero entries {mx.nonzero_entries(prod)[:5]}")
        return ValidationReport(not bad, bad, msgs)

    def with_flavor(self, flavor: RingFlavor) -> "FreeComplex":
        return FreeComplex(self.ranks, self.diff, flavor, self.labels)

    def map_entries(self, fn) -> "FreeComplex":
        return FreeComplex(self.ranks, {n: mx.apply_entrywise(m, fn) for n, m in self.diff.items()}, self.flavor, self.labels)

    def __eq__(self, other):
        if not isinstance(other, FreeComplex):
            return NotImplemented
        if self.ranks != other.ranks or self.flavor != other.flavor:
            return False
        return all(mx.equal(self.d(n), other.d(n)) for n in self.degrees())

    __hash__ = None

    def __repr__(self):
        shape = " -> ".join(f"{self.rank(n)}@{n}" for n in self.degrees()) or "0"
        return f"FreeComplex({self.flavor.name}: {shape})"

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        diff = {}
        for n in sorted(self.diff):
            diff[str(n)] = [[LaurentPoly(v).to_json() for v in row] for row in self.diff[n]]
        return {
            "flavor": self.flavor.name,
            "ranks": {str(n): self.ranks[n] for n in self.degrees()},
            "diff": diff,
        }

    @classmethod
    def from_json(cls, data) -> "FreeComplex":
        if not isinstance(data, dict):
            raise InputError("complex must be a JSON object")
        extra = set(data) - {"flavor", "ranks", "diff"}
        if extra:
            raise InputError(f"unknown keys {sorted(extra)}")
        try:
            flavor = flavor_by_name(data.get("flavor", "Lxy"))
        except (KeyError, AttributeError):
            raise InputError(f"unknown flavor {data.get('flavor')!r}", "flavor") from None
        ranks_in = data.get("ranks", {})
        if not isinstance(ranks_in, dict):
            raise InputError("ranks must be an object", "ranks")
        ranks = {}
        for k, v in ranks_in.items():
            n = _parse_degree(k, f"ranks.{k}")
            if not (isinstance(v, int) and not isinstance(v, bool)) or v < 0:
                raise InputError("rank must be a nonnegative integer", f"ranks.{k}")
            ranks[n] = v
        diff_in = data.get("diff", {})
        if not isinstance(diff_in, dict):
            raise InputError("diff must be an object", "diff")
        diff = {}
        for k, rows in diff_in.items():
            n = _parse_degree(k, f"diff.{k}")
            want_r, want_c = ranks.get(n + 1, 0), ranks.get(n, 0)
            if not isinstance(rows, list) or len(rows) != want_r:
                raise InputError(f"expected {want_r} rows", f"diff.{k}")
            m = mx.zeros(want_r, want_c)
            for i, row in enumerate(rows):
                if not isinstance(row, list) or len(row) != want_c:
                    raise InputError(f"expected {want_c} columns", f"diff.{k}[{i}]")
                for j, entry in enumerate(row):
                    m[i, j] = LaurentPoly.from_json(entry, f"diff.{k}[{i}][{j}]")
            diff[n] = m
        c = cls(ranks, diff, flavor)
        rep = c.validate()
        if not rep.ok:
            raise InputError("differential does not square to zero: " + "; ".join(rep.messages), "diff")
        return c


def _parse_degree(key, location) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise InputError("degree keys must be integers", location) from None


def validate(c: FreeComplex) -> ValidationReport:
    return c.validate()


# maps -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ChainMap:
    """
    A degree-preserving map ``source -> target``; ``mats[n]`` has shape
    ``target.rank(n) x source.rank(n)``.
    """

    source: FreeComplex
    target: FreeComplex
    mats: Dict[int, np.ndarray]

    def __post_init__(self):
        mats = {}
        for n, m in self.mats.items():
            mats[int(n)] = mx.as_matrix(m, self.target.rank(n), self.source.rank(n))
        object.__setattr__(self, "mats", mats)

    def at(self, n: int) -> np.ndarray:
        m = self.mats.get(n)
        if m is None:
            return mx.zeros(self.target.rank(n), self.source.rank(n))
        return m

    def degrees(self) -> List[int]:
        return sorted(set(self.source.degrees()) | set(self.target.degrees()))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        return ChainMap(other.source, self.target, {n: mx.mm(self.at(n), other.at(n)) for n in other.source.degrees()})

    def is_chain_map(self) -> bool:
        return is_chain_map(self)

    def failures(self) -> List[int]:
        bad = []
        degs = sorted(set(self.degrees()) | {n - 1 for n in self.degrees()})
        for n in degs:
            lhs = mx.mm(self.target.d(n), self.at(n))
            rhs = mx.mm(self.at(n + 1), self.source.d(n))
            if not mx.equal(lhs, rhs):
                bad.append(n)
        return bad


def is_chain_map(f: ChainMap) -> bool:
    return not f.failures()


def identity_map(c: FreeComplex) -> ChainMap:
    return ChainMap(c, c, {n: mx.identity(c.rank(n)) for n in c.degrees()})


def zero_map(source: FreeComplex, target: FreeComplex) -> ChainMap:
    return ChainMap(source, target, {})


@dataclass(frozen=True, eq=False)
class Homotopy:
    """
    ``mats[n]: C^n -> D^(n-1)`` with ``dH + Hd = f - g``.
    """

    f: ChainMap
    g: ChainMap
    mats: Dict[int, np.ndarray]

    def at(self, n: int) -> np.ndarray:
        m = self.mats.get(n)
        if m is None:
            return mx.zeros(self.f.target.rank(n - 1), self.f.source.rank(n))
        return mx.as_matrix(m, self.f.target.rank(n - 1), self.f.source.rank(n))


def check_homotopy(h: Homotopy) -> bool:
    """True iff ``d H + H d = f - g`` in every degree."""
    src, tgt = h.f.source, h.f.target
    if h.g.source is not src and h.g.source != src:
        raise ShapeMismatch("homotopy endpoints have different sources")
    for n in sorted(set(src.degrees()) | set(tgt.degrees())):
        lhs = mx.mm(tgt.d(n - 1), h.at(n)) + mx.mm(h.at(n + 1), src.d(n))
        rhs = h.f.at(n) - h.g.at(n)
        if not mx.equal(lhs, rhs):
            return False
    return True


# constructions ------------------------------------------------------------------


def cone(f: ChainMap) -> FreeComplex:
    """
    ``Cone(f)^n = X^(n+1) ⊕ Y^n`` with differential
    ``[[-d_X, 0], [f, d_Y]]``.
    """
    X, Y = f.source, f.target
    if X.flavor != Y.flavor:
        raise FlavorMismatch("cone of a map between different flavors")
    degs = sorted({n - 1 for n in X.degrees()} | set(Y.degrees()))
    ranks = {n: X.rank(n + 1) + Y.rank(n) for n in degs}
    diff = {}
    for n in degs:
        if not ranks.get(n + 1):
            continue
        diff[n] = mx.block(
            [
                [-X.d(n + 1), mx.zeros(X.rank(n + 2), Y.rank(n))],
                [f.at(n + 1), Y.d(n)],
            ]
        )
    return FreeComplex(ranks, diff, Y.flavor)


def shift(c: FreeComplex, s: int) -> FreeComplex:
    """``C[s]^n = C^(n+s)`` with differential ``(-1)^s d``."""
    sign = -1 if s % 2 else 1
    return FreeComplex(
        {n - s: r for n, r in c.ranks.items()},
        {n - s: (m if sign == 1 else -m) for n, m in c.diff.items()},
        c.flavor,
        None if c.labels is None else {n - s: l for n, l in c.labels.items()},
    )


def direct_sum(*cs: FreeComplex) -> FreeComplex:
    if not cs:
        raise ValueError("direct_sum needs at least one complex")
    flavor = cs[0].flavor
    for c in cs[1:]:
        if c.flavor != flavor and not c.is_zero():
            raise FlavorMismatch(f"{c.flavor.name} vs {flavor.name}")
    degs = sorted(set().union(*(c.degrees() for c in cs)))
    ranks = {n: sum(c.rank(n) for c in cs) for n in degs}
    diff = {n: mx.block_diag(*(c.d(n) for c in cs)) for n in degs}
    return FreeComplex(ranks, diff, flavor)


def shift_and_sum(*ops) -> FreeComplex:
    """
    Direct sum of shifted complexes; each op is a complex or a pair
    ``(complex, shift)``.
    """
    parts = [shift(*op) if isinstance(op, tuple) else op for op in ops]
    return direct_sum(*parts)


def base_change(c: FreeComplex, g: RingFlavor) -> FreeComplex:
    """Reinterpret the matrices of ``c`` over the larger ring ``g``."""
    for n, m in c.diff.items():
        for (i, j), v in np.ndenumerate(m):
            if v != 0 and not contains(g, LaurentPoly(v)):
                raise NotAnElement(f"entry ({i},{j}) of d({n}) = {v} is not in {g.name}")
    return c.with_flavor(g)


def substitute_complex(c: FreeComplex, sx: int = 1, sy: int = 1, swap: bool = False) -> FreeComplex:
    """Apply a coordinate change to every entry (and to the flavor)."""
    return FreeComplex(
        c.ranks,
        {n: mx.apply_entrywise(m, lambda v: substitute(LaurentPoly(v), sx, sy, swap)) for n, m in c.diff.items()},
        c.flavor.transform(sx, sy, swap) if c.flavor.kind != "face" else c.flavor,
        c.labels,
    )


def base_change_map(f: ChainMap, g: RingFlavor) -> ChainMap:
    return ChainMap(base_change(f.source, g), base_change(f.target, g), f.mats)


def single(m, flavor: RingFlavor = FULL_LAURENT, degree: int = 0) -> FreeComplex:
    """``0 -> R --m--> R -> 0`` in degrees ``degree, degree + 1``."""
    return FreeComplex({degree: 1, degree + 1: 1}, {degree: [[m]]}, flavor)


def koszul_pair(mu, nu, flavor: RingFlavor = FULL_LAURENT) -> FreeComplex:
    """``R --(mu, nu)^T--> R^2 --(-nu, mu)--> R`` in degrees 0, 1, 2."""
    return FreeComplex({0: 1, 1: 2, 2: 1}, {0: [[mu], [nu]], 1: [[-nu, mu]]}, flavor)
