"""Command-line front end.

Every subcommand prints JSON on stdout.  Exit codes: 0 success or pass,
1 a check failed (including unmet theorem premises), 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import contraction as C
from .complexity import (
    DEFAULT_CAP,
    CapExceeded,
    c_sharp,
    find_scc,
    han44_premise_and_bound,
    is_simple_closed_curve,
    parse_window,
)
from .image import (
    DigitalImage,
    ImageError,
    Metric,
    diameter,
    uniform_discreteness_witness,
)
from .selfmap import (
    SelfMap,
    fixed_points,
    image_sequence,
    is_eventually_constant,
    orbit,
)
from .suite import SCENARIOS, run_paper_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _number(text: str):
    try:
        return Fraction(text) if "/" in text or "." not in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def _xi_triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--xi needs three comma-separated numbers")
    return tuple(_number(p) for p in parts)


def _load_image(path) -> DigitalImage:
    return DigitalImage.load(path)


def _load_map(path, img: DigitalImage) -> SelfMap:
    f = SelfMap.load(path)
    f.check_fits(img)
    return f


def _dv(d) -> dict:
    return {"value": d.value, "payload": d.payload, "exponent": _jsonable(d.p)}


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


# -- handlers --------------------------------------------------------------------

def cmd_image_validate(args):
    img = _load_image(args.image)
    return {"valid": True, "dim": img.dim, "points": len(img), "cu": img.u}, EXIT_OK


def cmd_image_info(args):
    img = _load_image(args.image)
    metric = Metric.parse(args.metric)
    info = {
        "dim": img.dim,
        "points": len(img),
        "cu": img.u,
        "connected": img.is_connected(),
        "components": [list(b) for b in img.components],
    }
    if img.is_connected():
        info["uniformly_connected"] = img.is_uniformly_connected()
    if metric.kind != "hop" or img.is_connected():
        info["metric"] = metric.name
        info["diameter"] = _dv(diameter(metric, img))
        info["discreteness_witness"] = _dv(uniform_discreteness_witness(metric, img))
    if len(img) >= 4:
        info["simple_closed_curve"] = is_simple_closed_curve(img)
    return info, EXIT_OK


def cmd_map_classify(args):
    img = _load_image(args.image)
    f = _load_map(args.map, img)
    return C.classify(Metric.parse(args.metric), img, f).to_json(), EXIT_OK


def cmd_map_fixpoints(args):
    img = _load_image(args.image)
    f = _load_map(args.map, img)
    fix = sorted(fixed_points(img, f))
    return {"fixed_points": fix, "points": [list(img.points[i]) for i in fix]}, EXIT_OK


def cmd_map_iterate(args):
    img = _load_image(args.image)
    f = _load_map(args.map, img)
    metric = Metric.parse(args.metric)
    seq = image_sequence(img, f, args.steps)
    out = {
        "image_sets": [sorted(s) for s in seq.sets],
        "stabilized": seq.stabilized,
    }
    if not 0 <= args.x0 < len(img):
        raise ImageError(f"start index {args.x0} is not a point index")
    orb = orbit(f, args.x0, args.steps if args.steps else 2 * len(img))
    settled, start = is_eventually_constant(orb)
    out["orbit"] = orb
    out["orbit_eventually_constant"] = settled
    out["orbit_stabilization_index"] = start
    if C.is_distance_decreasing(metric, img, f):
        col = C.singleton_collapse(metric, img, f)
        out["singleton_collapse"] = {"steps": col.steps, "fixed_point": col.fixed_point,
                                     "distance_bound": col.distance_bound}
    if C.kannan_modulus(metric, img, f).is_kannan:
        out["kannan_fixed_point"] = C.kannan_fixed_point(metric, img, f, args.x0).fixed_point
    return out, EXIT_OK


def cmd_pair_check(args):
    img = _load_image(args.image)
    s, t = _load_map(args.s, img), _load_map(args.t, img)
    return C.pair_report(Metric.parse(args.metric), img, s, t).to_json(), EXIT_OK


def cmd_pair_saluja(args):
    img = _load_image(args.image)
    j, k = _load_map(args.j, img), _load_map(args.k, img)
    xi = None if args.xi is None else _xi_triple(args.xi)
    res = C.saluja_common_fixed_point(Metric.parse(args.metric), img, j, k, xi, args.u0)
    return {
        "common_fixed_point": res.point,
        "point": list(img.points[res.point]),
        "k_sequence": list(res.sequence),
        "xi": [float(x) for x in res.xi],
        "unique": res.unique,
    }, EXIT_OK


def cmd_quad_saljhade(args):
    img = _load_image(args.image)
    maps = [_load_map(p, img) for p in (args.j, args.k, args.l, args.m)]
    xi = _number(args.xi)
    res = C.four_map_common_fixed_point(Metric.parse(args.metric), img, *maps, xi, args.u0)
    return {
        "common_fixed_point": res.point,
        "point": list(img.points[res.point]),
        "q_sequence": list(res.sequence),
        "unique": res.unique,
    }, EXIT_OK


def cmd_quad_lm(args):
    img = _load_image(args.image)
    j, k, l = (_load_map(p, img) for p in (args.j, args.k, args.l))
    res = C.lm_collapse_check(Metric.parse(args.metric), img, j, k, l, _number(args.xi))
    out = {
        "J_equals_K": res.j_equals_k,
        "J_constant": res.j_constant,
        "constancy_applies": res.constancy_applies,
        "holds": res.holds,
    }
    return out, EXIT_OK if res.holds else EXIT_FAIL


def cmd_complexity(args):
    img = _load_image(args.image)
    res = c_sharp(Metric.parse(args.metric), img, args.cap, args.require_continuous, args.workers)
    out = res.to_json()
    out["cap"] = args.cap
    return out, EXIT_OK


def cmd_scc_find(args):
    window = parse_window(args.window)
    res = find_scc(args.dim, args.u, args.len, window, args.budget)
    return res.to_json(), EXIT_OK if res.found else EXIT_FAIL


def cmd_scc_check(args):
    img = _load_image(args.image)
    ok = is_simple_closed_curve(img)
    out = {"simple_closed_curve": ok, "length": len(img)}
    if ok and args.han44:
        res = han44_premise_and_bound(img, Metric.parse(args.metric), args.cap)
        out["premise"] = res.premise
        out["c_sharp"] = res.c_sharp
        out["bound_holds"] = res.bound_holds
        ok = res.bound_holds
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_paper_suite(args):
    only = None
    if args.only:
        only = [s.strip() for chunk in args.only for s in chunk.split(",") if s.strip()]
        unknown = [s for s in only if s not in SCENARIOS]
        if unknown:
            raise UsageError(f"unknown scenario id(s): {', '.join(unknown)}")
    outcomes = run_paper_suite(only)
    report = [o.to_json() for o in outcomes]
    failed = any(o.status == "fail" for o in outcomes)
    return report, EXIT_FAIL if failed else EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for samplers (all built-in sweeps are exhaustive)")
    metric = argparse.ArgumentParser(add_help=False)
    metric.add_argument("--metric", default="l2", help="l1, l2, lp:<p> or hop")

    parser = argparse.ArgumentParser(prog="digifix", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    image = sub.add_parser("image", help="inspect an image file").add_subparsers(dest="action", required=True)
    p = image.add_parser("validate", parents=[common])
    p.add_argument("--image", required=True)
    p.set_defaults(func=cmd_image_validate)
    p = image.add_parser("info", parents=[common, metric])
    p.add_argument("--image", required=True)
    p.set_defaults(func=cmd_image_info)

    mp = sub.add_parser("map", help="analyse a self-map").add_subparsers(dest="action", required=True)
    for name, func in (("classify", cmd_map_classify), ("fixpoints", cmd_map_fixpoints),
                       ("iterate", cmd_map_iterate)):
        p = mp.add_parser(name, parents=[common, metric])
        p.add_argument("--image", required=True)
        p.add_argument("--map", required=True)
        if name == "iterate":
            p.add_argument("--steps", type=int, default=None)
            p.add_argument("--x0", type=int, default=0)
        p.set_defaults(func=func)

    pair = sub.add_parser("pair", help="pairs of maps").add_subparsers(dest="action", required=True)
    p = pair.add_parser("check", parents=[common, metric])
    p.add_argument("--image", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_pair_check)
    p = pair.add_parser("saluja", parents=[common, metric])
    p.add_argument("--image", required=True)
    p.add_argument("--j", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--xi", default=None, help="xi1,xi2,xi3; omitted means search")
    p.add_argument("--u0", type=int, default=0)
    p.set_defaults(func=cmd_pair_saluja)

    quad = sub.add_parser("quad", help="four maps").add_subparsers(dest="action", required=True)
    p = quad.add_parser("saljhade", parents=[common, metric])
    for name in ("image", "j", "k", "l", "m", "xi"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--u0", type=int, default=0)
    p.set_defaults(func=cmd_quad_saljhade)
    p = quad.add_parser("lm-collapse", parents=[common, metric])
    for name in ("image", "j", "k", "l", "xi"):
        p.add_argument(f"--{name}", required=True)
    p.set_defaults(func=cmd_quad_lm)

    p = sub.add_parser("complexity", parents=[common, metric], help="C# by exhaustive enumeration")
    p.add_argument("--image", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--require-continuous", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_complexity)

    scc = sub.add_parser("scc", help="simple closed curves").add_subparsers(dest="action", required=True)
    p = scc.add_parser("find", parents=[common])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--window", required=True, help="e.g. 5x5")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.set_defaults(func=cmd_scc_find)
    p = scc.add_parser("check", parents=[common, metric])
    p.add_argument("--image", required=True)
    p.add_argument("--han44", action="store_true",
                   help="also test the neighbourhood premise and the C# <= 3 bound")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_scc_check)

    p = sub.add_parser("paper-suite", parents=[common], help="run verification scenarios S1..S10")
    p.add_argument("--only", action="append", help="scenario ids, comma separated or repeated")
    p.add_argument("--cap", type=int, default=None, help="accepted for symmetry; caps are fixed per scenario")
    p.set_defaults(func=cmd_paper_suite)
    return parser


def _pretty(payload) -> str:
    if isinstance(payload, list) and payload and "scenario" in payload[0]:
        lines = []
        for sc in payload:
            lines.append(f"{sc['scenario']:>4}  {sc['status'].upper():<12} {sc['title']}")
            for a in sc["assertions"]:
                mark = "ok " if a["ok"] else "BAD"
                lines.append(f"        [{mark}] {a['name']}: {a['actual']}")
        return "\n".join(lines)
    if isinstance(payload, dict):
        return "\n".join(f"{k}: {v}" for k, v in payload.items())
    return json.dumps(payload, indent=2)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        payload, code = args.func(args)
    except C.PremiseError as exc:
        print(json.dumps({"error": "premise", "violations": exc.violations}))
        print(f"premise violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ImageError, CapExceeded, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.pretty:
        print(_pretty(payload))
    else:
        print(json.dumps(payload, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
