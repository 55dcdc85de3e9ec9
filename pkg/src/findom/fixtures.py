"""Built-in fixtures: small inputs with their expected report fragments."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from . import matrices as mx
from .complexes import FreeComplex
from .flavors import FULL_LAURENT
from .laurent import LaurentPoly

X, Y = LaurentPoly.x(), LaurentPoly.y()
MU = 1 + X * Y**2 + X**2 + X**2 * Y
NU = X + Y + Y**2 + X**2 * Y**2

MU_FLAVORS = ("Nov(x,y)", "Nov(x^-1,y)", "Lx.Nov(y^-1)", "Ly.Nov(x)")


def cone_of(m) -> FreeComplex:
    """``0 -> L --m--> L -> 0`` in degrees 0, 1."""
    return FreeComplex({0: 1, 1: 1}, {0: mx.as_matrix([[LaurentPoly(m)]])}, FULL_LAURENT)


def koszul_example(mu=MU, nu=NU) -> FreeComplex:
    """``L --(mu, nu)--> L^2 --(-nu, mu)--> L``."""
    return FreeComplex(
        {0: 1, 1: 2, 2: 1},
        {0: mx.as_matrix([[mu], [nu]]), 1: mx.as_matrix([[-nu, mu]])},
        FULL_LAURENT,
    )


@dataclass
class Fixture:
    name: str
    description: str
    run: Callable[[], Tuple[bool, Dict]]


def _check(C, expect_overall, extra=None):
    from .detector import check_finite_domination

    def run():
        rep = check_finite_domination(C)
        frag = {"overall": rep.overall}
        if rep.failing is not None:
            frag["failing_flavor"] = rep.failing.name
        ok = rep.overall == expect_overall
        if extra:
            more_ok, more = extra(rep)
            ok = ok and more_ok
            frag.update(more)
        return ok, frag

    return run


def _partition(rep):
    got = {v.flavor.name: ("mu" if v.first_pivot == MU else "nu" if v.first_pivot == NU else "other") for v in rep.verdicts}
    want = {name: ("mu" if name in MU_FLAVORS else "nu") for name in got}
    return got == want, {"first_pivot": dict(sorted(got.items()))}


def _failing_flavor(name):
    def extra(rep):
        got = rep.failing.name if rep.failing else None
        return got == name, {}

    return extra


def _dk_rows(kmax=2, radius=6):
    def run():
        from .cli import scan_dk

        res = scan_dk(kmax, radius)
        return all(r["exact"] for r in res), {"rows": res}

    return run


def _nerve_sigma(radius=4):
    def run():
        from .cli import scan_nerve

        res = scan_nerve(radius)
        return all(r["exact"] for r in res), {"faces": res}

    return run


def fixtures() -> List[Fixture]:
    return [
        Fixture("monomial-unit", "cone of multiplication by x^3 y^-2", _check(cone_of(LaurentPoly.monomial(3, -2)), "FinitelyDominated")),
        Fixture(
            "non-unit-1px",
            "cone of multiplication by 1 + x",
            _check(cone_of(1 + X), "NotFinitelyDominated", _failing_flavor("Lx.Nov(y)")),
        ),
        Fixture("square-domination", "Koszul complex of (mu, nu)", _check(koszul_example(), "FinitelyDominated", _partition)),
        Fixture("Dk-rows", "graded exactness of the augmented D(k) rows, k <= 2, radius 6", _dk_rows()),
        Fixture("nerve-sigma", "sigma_F is a quasi-isomorphism on graded pieces, radius 4", _nerve_sigma()),
    ]


def input_json(name: str) -> dict:
    """The input complex of a detector fixture as JSON."""
    table = {
        "monomial-unit": cone_of(LaurentPoly.monomial(3, -2)),
        "non-unit-1px": cone_of(1 + X),
        "square-domination": koszul_example(),
    }
    return table[name].to_json()
