"""Command-line interface.

Exit codes: 0 decided, 1 I/O or internal error, 2 usage error, 3 undecided at
maximum precision, 4 infeasible configuration.
"""
import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalog import SEED_NAMES, build_seed, list_seeds
from .claims import CLAIMS, SOLVER_TOL, ClaimSpec, dumps, refusal, run_claim, solve_report
from .errors import (
    EquilateralInfeasible,
    NotAPentagon,
    PacioliError,
    SymmetryUnavailable,
    ToleranceUnreachable,
)
from .mesh import HeightRule, arity_name, elevate
from .meshio import export_model
from .predicates import contact_and_stability
from .scalar import Real, SignPolicy

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_UNDECIDED, EXIT_INFEASIBLE = 0, 1, 2, 3, 4

_ARITY_KEYS = {"tri": 3, "triangle": 3, "quad": 4, "square": 4, "pent": 5, "pentagon": 5,
               "hex": 6, "hexagon": 6, "oct": 8, "octagon": 8, "deca": 10, "decagon": 10}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _height_value(text, arity):
    if text == "equilateral":
        return HeightRule.equilateral().height(arity)
    try:
        return Real.of(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad height {text!r}") from None


def parse_heights(text):
    """``tri=0.8,pent=equilateral`` -> explicit HeightRule."""
    heights = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip().lower()
        if not sep:
            raise UsageError(f"expected KEY=VALUE in --heights, got {item!r}")
        arity = _ARITY_KEYS.get(key)
        if arity is None:
            if not key.isdigit():
                raise UsageError(f"unknown face class {key!r} in --heights")
            arity = int(key)
        heights[arity] = _height_value(value.strip(), arity)
    return HeightRule.explicit(heights)


def _rule(args):
    if getattr(args, "heights", None):
        return parse_heights(args.heights)
    mode = getattr(args, "elevate", None)
    if mode == "equilateral":
        return HeightRule.equilateral()
    if mode == "zero":
        return HeightRule.zero()
    return None


def _policy(args):
    try:
        return SignPolicy(args.precision_start, args.precision_max)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _emit(text, path):
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_catalog(args):
    for name, v, e, f, counts in list_seeds():
        kinds = ", ".join(f"{c} {arity_name(n)}" for n, c in counts.items())
        sys.stdout.write(f"{name:<24} V={v:<3} E={e:<3} F={f:<3} ({kinds})\n")
    return EXIT_OK


def cmd_build(args):
    p = build_seed(args.seed)
    rule = _rule(args)
    mesh = p if rule is None else elevate(p, rule).mesh()
    fmt = args.format or Path(args.out).suffix.lstrip(".").lower()
    if fmt not in ("off", "obj"):
        raise UsageError("output must end in .off or .obj (or pass --format)")
    data = export_model(mesh, fmt, args.digits)
    Path(args.out).write_bytes(data)
    return EXIT_OK


def cmd_verify(args):
    rule = _rule(args) or HeightRule.equilateral()
    spec = ClaimSpec(args.claim, args.seed, rule, args.pentagon)
    policy = _policy(args)
    try:
        report = run_claim(spec, policy, args.solver_tol)
    except (EquilateralInfeasible, NotAPentagon) as err:
        _emit(dumps(refusal(spec, err)), args.json)
        raise
    _emit(dumps(report), args.json)
    return EXIT_UNDECIDED if report["verdict"] == "undecided" else EXIT_OK


def cmd_solve(args):
    fixed = None if args.fixed_tri == "equilateral" else _height_value(args.fixed_tri, 3)
    try:
        tol = Fraction(args.tol)
    except ValueError:
        raise UsageError(f"bad --tol {args.tol!r}") from None
    if tol <= 0:
        raise UsageError("--tol must be positive")
    report = solve_report(args.seed, fixed, args.tol, _policy(args))
    _emit(json.dumps(report, indent=2) + "\n", args.json)
    return EXIT_OK


def _face_index(p, text):
    kind, sep, k = text.partition(":")
    if not sep or not k.isdigit():
        raise UsageError(f"--face expects CLASS:K, got {text!r}")
    k = int(k)
    if kind == "face":
        if k >= p.n_faces:
            raise UsageError(f"face {k} out of range")
        return k
    arity = _ARITY_KEYS.get(kind)
    if arity is None:
        raise UsageError(f"unknown face class {kind!r}")
    faces = p.faces_of_arity(arity)
    if k >= len(faces):
        raise NotAPentagon(f"{p.name} has {len(faces)} {arity_name(arity)} faces")
    return faces[k]


def cmd_contact(args):
    p = build_seed(args.seed)
    rule = _rule(args) or HeightRule.zero()
    e = elevate(p, rule)
    f = _face_index(p, args.face)
    policy = _policy(args)
    # the area normal stays exact where the unit normal would need a foreign radical
    rep = contact_and_stability(e, e.frames[f].area_normal, policy)
    out = {
        "seed": args.seed,
        "height_rule": rule.mode,
        "face": args.face,
        "face_index": f,
        "direction": "face_axis",
        "touching": list(rep.touching),
        "marginal": list(rep.marginal),
        "stable": {"yes": True, "no": False}.get(rep.stable, "marginal"),
        "precision": {"start_bits": policy.start_bits, "used_bits": rep.precision,
                      "max_bits": policy.max_bits},
        "tool_version": __version__,
    }
    _emit(json.dumps(out, indent=2) + "\n", args.json)
    return EXIT_UNDECIDED if rep.stable == "marginal" else EXIT_OK


def _add_precision(sp):
    sp.add_argument("--precision-start", type=int, default=64, metavar="B")
    sp.add_argument("--precision-max", type=int, default=4096, metavar="B")


def _add_rule(sp):
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--elevate", choices=["equilateral", "zero"])
    g.add_argument("--heights", metavar="tri=F,pent=F")


def build_parser():
    parser = _Parser(prog="pacioli", description="Certified checks of Pacioli's elevated solids.")
    parser.add_argument("--version", action="version", version=f"pacioli {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("catalog", help="list seed solids with their counts")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("build", help="export a seed, optionally elevated, as OFF/OBJ")
    sp.add_argument("seed", choices=SEED_NAMES)
    _add_rule(sp)
    sp.add_argument("--out", required=True, metavar="FILE")
    sp.add_argument("--format", choices=["off", "obj"])
    sp.add_argument("--digits", type=int, default=17, choices=range(6, 41), metavar="N")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="certify a claim and print its JSON report")
    sp.add_argument("claim", choices=CLAIMS)
    sp.add_argument("--seed", default="icosidodecahedron", choices=SEED_NAMES)
    _add_rule(sp)
    sp.add_argument("--pentagon", type=int, default=None, metavar="F")
    sp.add_argument("--solver-tol", default=SOLVER_TOL, metavar="D")
    _add_precision(sp)
    sp.add_argument("--json", metavar="FILE")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("solve-height", help="pentagon height that makes the six apexes coplanar")
    sp.add_argument("--seed", default="icosidodecahedron", choices=SEED_NAMES)
    sp.add_argument("--fixed-tri", default="equilateral", metavar="F|equilateral")
    sp.add_argument("--tol", default=SOLVER_TOL, metavar="D")
    _add_precision(sp)
    sp.add_argument("--json", metavar="FILE")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("contact", help="support set and stability along a face axis")
    sp.add_argument("--seed", required=True, choices=SEED_NAMES)
    _add_rule(sp)
    sp.add_argument("--face", required=True, metavar="CLASS:K")
    _add_precision(sp)
    sp.add_argument("--json", metavar="FILE")
    sp.set_defaults(func=cmd_contact)
    return parser


def _fail(code, message):
    sys.stderr.write(f"pacioli: {message}\n")
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        return _fail(EXIT_USAGE, f"usage error: {err}")
    except EquilateralInfeasible as err:
        return _fail(EXIT_INFEASIBLE, f"infeasible: {err} (arity {err.arity})")
    except NotAPentagon as err:
        return _fail(EXIT_INFEASIBLE, f"infeasible: {err}")
    except ToleranceUnreachable as err:
        return _fail(EXIT_UNDECIDED, f"undecided: {err}")
    except SymmetryUnavailable as err:
        return _fail(EXIT_ERROR, f"internal error: {err}")
    except (PacioliError, ValueError) as err:
        return _fail(EXIT_ERROR, f"error: {err}")
    except OSError as err:
        return _fail(EXIT_ERROR, f"I/O error: {err}")


if __name__ == "__main__":
    sys.exit(main())
