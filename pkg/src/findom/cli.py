"""
Command line front end.

    findom check --input FILE [--window N]
    findom witness --input FILE
    findom verify graded --target {dk,nerve} [--kmax K] [--radius R]
    findom fixtures run

Exit codes: 0 success / FinitelyDominated / pass, 1 NotFinitelyDominated or
a failed check, 2 Inconclusive, 3 input error.  Output is UTF-8 JSON with
sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .complexes import FreeComplex
from .errors import InputError
from .homology import window_exact

EXIT_OK, EXIT_NOT_FD, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


def emit(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def load_complex(path: str) -> FreeComplex:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(str(e), path) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(e.msg, f"{path}:{e.lineno}:{e.colno}") from None
    return FreeComplex.from_json(data)


def _box(r: int):
    return [(a, b) for b in range(-r, r + 1) for a in range(-r, r + 1)]


def scan_dk(kmax: int, radius: int) -> List[dict]:
    from .square import augmented_row, graded_piece

    out = []
    for k in range(kmax + 1):
        row = augmented_row(k)
        v = window_exact(lambda d: graded_piece(row, d), _box(radius))
        out.append({"k": k, "checked": v.checked, "exact": v.exact, "failures": [f"{d}: {m}" for d, m in v.failures]})
    return out


def scan_nerve(radius: int) -> List[dict]:
    from .flavors import contains_monomial, face_algebra
    from .square import FACES, graded_piece, nerve_diagram

    out = []
    for F in FACES:
        c = nerve_diagram(F).complex
        ring = face_algebra(F)
        v = window_exact(
            lambda d: graded_piece(c, d),
            _box(radius),
            lambda d: {0: 1} if contains_monomial(ring, d) else {},
        )
        out.append({"face": F, "checked": v.checked, "exact": v.exact, "failures": [f"{d}: {m}" for d, m in v.failures]})
    return out


def cmd_check(args) -> int:
    from .detector import FINITELY_DOMINATED, NOT_FINITELY_DOMINATED, check_finite_domination

    C = load_complex(args.input)
    rep = check_finite_domination(C, args.window)
    emit(rep.to_json())
    return {FINITELY_DOMINATED: EXIT_OK, NOT_FINITELY_DOMINATED: EXIT_NOT_FD}.get(rep.overall, EXIT_INCONCLUSIVE)


def cmd_witness(args) -> int:
    from .detector import witness

    C = load_complex(args.input)
    w = witness(C)
    emit(w.to_json())
    return EXIT_OK if all(w.transcript.values()) else EXIT_NOT_FD


def cmd_verify(args) -> int:
    if args.target == "dk":
        res = scan_dk(args.kmax, args.radius)
    else:
        res = scan_nerve(args.radius)
    ok = all(r["exact"] for r in res)
    emit({"target": args.target, "pass": ok, "results": res})
    return EXIT_OK if ok else EXIT_NOT_FD


def cmd_fixtures(args) -> int:
    from .fixtures import fixtures

    results, ok = [], True
    for fx in fixtures():
        passed, frag = fx.run()
        ok = ok and passed
        results.append({"name": fx.name, "description": fx.description, "pass": passed, "report": frag})
    emit({"fixtures": results, "pass": ok})
    return EXIT_OK if ok else EXIT_NOT_FD


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="findom", description="Finite domination of chain complexes over Z[x, 1/x, y, 1/y].")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the eight-ring detector")
    c.add_argument("--input", required=True)
    c.add_argument("--window", type=int, default=32)
    c.set_defaults(func=cmd_check)

    w = sub.add_parser("witness", help="build the finite replacement B'")
    w.add_argument("--input", required=True)
    w.set_defaults(func=cmd_witness)

    v = sub.add_parser("verify", help="graded exactness scans")
    vsub = v.add_subparsers(dest="what", required=True)
    g = vsub.add_parser("graded")
    g.add_argument("--target", choices=("dk", "nerve"), required=True)
    g.add_argument("--kmax", type=int, default=4)
    g.add_argument("--radius", type=int, default=10)
    g.set_defaults(func=cmd_verify)

    f = sub.add_parser("fixtures", help="built-in fixtures")
    fsub = f.add_subparsers(dest="what", required=True)
    r = fsub.add_parser("run")
    r.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as e:
        emit({"error": str(e), "location": e.location}, sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
