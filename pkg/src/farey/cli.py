"""Command-line front end.  JSON goes to stdout; exit codes: 0 ok, 1 usage error, 2 verdict false."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .contfrac import cf_eval, convergents, forbidden_scan, parse_cf
from .expansions import (
    HeckeNum,
    WallNum,
    euclid_expand,
    hecke_convergents,
    hecke_digits,
    nicf_expand,
    pqPQ_check,
    wall_convergents,
    wall_digits,
)
from .field import embed, format_q, parse_q, to_json
from .geometry import export_json, export_svg, standard_cell, tessellate
from .graph import certificate_json, distance_from_infinity, is_geodesic_cf, neighbors_bounded
from .ring import EUCLIDEAN_D, format_ring
from .suites import DEFAULT_SEED, run_suites

OK, USAGE, VERDICT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _point_json(z) -> dict:
    out = {"value": format_q(z), "cusp": to_json(z)}
    if not z.is_inf():
        e = embed(z)
        out["x"], out["y"] = str(e.x), str(e.y)  # z = x + y*sqrt(-d)
    return out


def _cf_json(cf) -> dict:
    return {"d": cf.d, "digits": cf.pairs(), "cf": str(cf)}


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}: {exc}") from None


def cmd_expand(a):
    z = parse_q(a.d, a.elem)
    cf = nicf_expand(z) if a.algo == "nicf" else euclid_expand(z)
    return {"algo": a.algo, **_cf_json(cf), "target": _point_json(z)}, OK


def cmd_eval(a):
    cf = parse_cf(a.cf, a.d)
    return {**_cf_json(cf), **_point_json(cf_eval(cf)),
            "convergents": [format_q(c) for c in convergents(cf)]}, OK


def cmd_distance(a):
    cert = distance_from_infinity(parse_q(a.d, a.elem), _fraction(a.slack))
    return certificate_json(cert), OK


def cmd_geodesic(a):
    cf = parse_cf(a.cf, a.d)
    verdict = is_geodesic_cf(cf, _fraction(a.slack))
    out = verdict.to_json()
    out["violations"] = [v.to_json() for v in forbidden_scan(cf)]
    code = VERDICT if a.assert_ and not verdict.geodesic else OK
    return out, code


def cmd_neighbors(a):
    z = parse_q(a.d, a.elem)
    if z.is_inf():
        raise UsageError("inf has infinitely many neighbours; pick a finite element")
    ns = neighbors_bounded(z, a.cap)
    return {"vertex": format_q(z), "cap": a.cap, "neighbors": [format_q(n) for n in ns]}, OK


def cmd_hecke(a):
    y = _fraction(a.y)
    x = HeckeNum(a.ell, y)
    conv = hecke_convergents(x, a.n)
    return {
        "ell": a.ell,
        "x": f"{y}*sqrt({x.m})",
        "digits": hecke_digits(x, a.n),
        "convergents": [[p.to_json(), q.to_json()] for p, q in conv],
    }, OK


def cmd_wall(a):
    y = _fraction(a.y)
    z = WallNum(a.d, y)
    rep = pqPQ_check(y, a.d, a.n)
    out = {
        "d": a.d,
        "y": str(y),
        "digits": [format_ring(b) for b in wall_digits(z, a.n)],
        "convergents": [format_q(c) for c in wall_convergents(z, a.n)],
        "pqPQ": rep.to_json(),
    }
    return out, VERDICT if a.assert_ and not rep.ok else OK


def cmd_cell(a):
    cell = standard_cell(a.d, a.conjugated)
    return {
        "d": a.d,
        "conjugated": cell.conjugated,
        "cusps": [format_q(c) for c in cell.cusps],
        "faces": [{"kind": f.kind, "cusps": [format_q(c) for c in f.cusps]} for f in cell.faces],
    }, OK


def cmd_tessellate(a):
    if a.d != 7:
        raise UsageError(f"tessellation is only available for d=7, got d={a.d}")
    if a.generations < 0:
        raise UsageError("--generations must be >= 0")
    t = tessellate(a.generations)
    if a.format == "svg":
        return export_svg(t), OK
    return json.loads(export_json(t)), OK


def cmd_check(a):
    results = run_suites(a.suite, a.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = []
    for r in results:
        j = r.to_json()
        if not a.timings:
            j.pop("seconds")
        out.append(j)
    ok = all(r.passed for r in results)
    return {"passed": ok, "suites": out}, OK if ok else VERDICT


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="farey", description="Farey graphs and continued fractions over Euclidean imaginary quadratic fields")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def with_d(sp, default=None):
        sp.add_argument("--d", type=int, choices=EUCLIDEAN_D, default=default, required=default is None)

    s = sub.add_parser("expand", help="expand an element as a continued fraction")
    with_d(s)
    s.add_argument("elem", help="'(a,b)/(c,e)' meaning (a+b*w)/(c+e*w), or 'inf'")
    s.add_argument("--algo", choices=("nicf", "euclid"), default="nicf")
    s.set_defaults(fn=cmd_expand)

    s = sub.add_parser("eval", help="evaluate a digit list")
    with_d(s)
    s.add_argument("--cf", required=True, help='JSON digits [[a,b],...] or {"d":D,"digits":[...]}')
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("distance", help="graph distance from infinity with a certificate")
    with_d(s)
    s.add_argument("elem")
    s.add_argument("--slack", default="1")
    s.set_defaults(fn=cmd_distance)

    s = sub.add_parser("geodesic", help="decide whether an expansion is geodesic")
    with_d(s)
    s.add_argument("--cf", required=True)
    s.add_argument("--slack", default="1")
    s.add_argument("--assert", dest="assert_", action="store_true", help="exit 2 if not geodesic")
    s.set_defaults(fn=cmd_geodesic)

    s = sub.add_parser("neighbors", help="neighbours with bounded denominator norm")
    with_d(s)
    s.add_argument("elem")
    s.add_argument("--cap", type=int, required=True)
    s.set_defaults(fn=cmd_neighbors)

    s = sub.add_parser("hecke", help="Hecke expansion of y*sqrt(ell/2)")
    s.add_argument("--ell", type=int, choices=(4, 6), required=True)
    s.add_argument("--y", required=True, help="rational in [0, 1)")
    s.add_argument("--n", type=int, default=None)
    s.set_defaults(fn=cmd_hecke)

    s = sub.add_parser("wall", help="wall expansion of y*w_d with the Hecke comparison")
    s.add_argument("--d", type=int, choices=(2, 7, 11), required=True)
    s.add_argument("--y", required=True, help="rational in [0, 1)")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--assert", dest="assert_", action="store_true")
    s.set_defaults(fn=cmd_wall)

    s = sub.add_parser("cell", help="standard cell cusps and faces")
    with_d(s)
    s.add_argument("--conjugated", action="store_true")
    s.set_defaults(fn=cmd_cell)

    s = sub.add_parser("tessellate", help="d=7 cells grown by face reflections")
    with_d(s, default=7)
    s.add_argument("--generations", type=int, default=6)
    s.add_argument("--format", choices=("json", "svg"), default="json")
    s.set_defaults(fn=cmd_tessellate)

    s = sub.add_parser("check", help="run acceptance suites")
    s.add_argument("--suite", default="all", help="'all' or a comma list of criterion numbers")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--timings", action="store_true", help="include wall-clock seconds (output is then not reproducible)")
    s.set_defaults(fn=cmd_check)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        result, code = args.fn(args)
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if isinstance(result, str):
        out.write(result)
    else:
        out.write(json.dumps(result, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
