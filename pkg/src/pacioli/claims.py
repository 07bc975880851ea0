"""The Pacioli pipeline: build, elevate, certify, report."""
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, localcontext
from importlib import resources

from . import __version__
from .catalog import build_seed
from .errors import EquilateralInfeasible
from .mesh import HeightRule, elevate
from .predicates import (
    _first_pentagon,
    apex_deviation,
    contact_and_stability,
    coplanarity,
    ring_plane,
    solve_coplanar_height,
)
from .scalar import DEFAULT_POLICY, Sign, evaluate, sign
from .scalar.interval import format_decimal

CLAIMS = ("pacioli-lii",)
REPORT_DIGITS = 40
SOLVER_TOL = "1e-30"

NOTES = (
    "height rule 'equilateral' (every lateral edge equals the base edge) is a convention; "
    "the claim only requires pyramids of one face class to share a height",
    "12 pentagonal and 20 triangular pyramids fit the icosidodecahedron, the default seed; "
    "a truncated dodecahedron has decagons, which admit no equilateral pyramid",
)


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str = "pacioli-lii"
    seed: str = "icosidodecahedron"
    rule: HeightRule = field(default_factory=HeightRule.equilateral)
    pentagon: int = None

    def __post_init__(self):
        if self.claim_id not in CLAIMS:
            raise ValueError(f"unknown claim {self.claim_id!r}")


def real_decimal(x, digits=REPORT_DIGITS):
    """Nearest decimal (``digits`` significant digits) to the 256-bit midpoint of ``x``."""
    mid = evaluate(x, 256).midpoint().to_decimal()
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        mid = +mid
    return format_decimal(mid)


def interval_dict(iv, digits=REPORT_DIGITS):
    lo, hi = iv.to_decimal_strings(digits)
    return {"lo": lo, "hi": hi}


def run_claim(spec=ClaimSpec(), policy=DEFAULT_POLICY, solver_tol=SOLVER_TOL):
    """Run the whole certification and return the report as an ordered dict."""
    base = build_seed(spec.seed)
    e = elevate(base, spec.rule, policy)
    pentagon = _first_pentagon(base) if spec.pentagon is None else spec.pentagon

    rp = ring_plane(e, pentagon)
    delta = apex_deviation(e, pentagon)
    dv = sign(delta, policy)
    # every ring apex is the image of the first under the certified rotation, so the
    # six points are tested with the ring first and the pentagon apex as candidate witness
    points = [e.apex_of[f] for f in rp.ring] + [e.apex_of[pentagon]]
    cv = coplanarity(points, policy)
    if cv.kind == "not_coplanar" and not dv.nonzero:
        raise AssertionError("coplanarity and deviation sign disagree")
    verdict = {"coplanar_exact": "coplanar", "not_coplanar": "not_coplanar"}.get(cv.kind, "undecided")
    if dv.sign is Sign.EXACT_ZERO:
        verdict = "coplanar"

    # the ring plane's normal is the pentagon's unit normal; its exact area normal
    # points the same way and keeps vertex ties decidable
    contact = contact_and_stability(e, e.frames[pentagon].area_normal, policy)
    solution = solve_coplanar_height(base, fixed=e.heights[3], tol=solver_tol,
                                     policy=policy, pentagon=pentagon)

    if dv.interval is not None:
        delta_iv = dv.interval
    else:
        delta_iv = evaluate(delta, policy.start_bits)
    used = max(dv.precision, cv.precision)
    stable = {"yes": True, "no": False}.get(contact.stable, "marginal")
    return {
        "claim_id": spec.claim_id,
        "seed": spec.seed,
        "height_rule": {
            "triangle": real_decimal(e.heights[3]),
            "pentagon": real_decimal(e.heights[5]),
            "mode": spec.rule.mode,
        },
        "verdict": verdict,
        "delta": {**interval_dict(delta_iv), "relative_to_edge": True},
        "ring_certificate": "symmetry_orbit",
        "contact": {
            "direction": "pentagon_axis",
            "touching": list(contact.touching),
            "stable": stable,
        },
        "corrected_pentagon_height": interval_dict(solution.interval),
        "precision": {
            "start_bits": policy.start_bits,
            "used_bits": used,
            "max_bits": policy.max_bits,
        },
        "tool_version": __version__,
        "notes": list(NOTES),
    }


def refusal(spec, err):
    """Structured report for a configuration the rule cannot realise."""
    out = {"claim_id": spec.claim_id, "seed": spec.seed, "verdict": "infeasible",
           "error": type(err).__name__, "message": str(err)}
    if isinstance(err, EquilateralInfeasible):
        out["arity"] = err.arity
    return out


def solve_report(seed="icosidodecahedron", fixed=None, tol=SOLVER_TOL, policy=DEFAULT_POLICY):
    sol = solve_coplanar_height(seed, fixed=fixed, tol=tol, policy=policy)
    equilateral = HeightRule.equilateral().height(5)
    versus = sign(sol.root - equilateral, policy)
    mid = sol.interval.midpoint().to_decimal()
    return {
        "seed": seed if isinstance(seed, str) else seed.name,
        "triangle_height": real_decimal(sol.triangle_height),
        "tol": str(tol),
        "pentagon_height": interval_dict(sol.interval),
        "midpoint": format_decimal(mid),
        "endpoint_delta_signs": {"lo": sol.lo_sign.name.lower(), "hi": sol.hi_sign.name.lower()},
        "equilateral_pentagon_height": real_decimal(equilateral),
        "sign_vs_equilateral": versus.sign.name.lower(),
        "precision": {"start_bits": policy.start_bits, "used_bits": sol.precision,
                      "max_bits": policy.max_bits},
        "tool_version": __version__,
    }


def dumps(report):
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def report_schema():
    text = resources.files("pacioli").joinpath("schemas/claim_report.schema.json").read_text()
    return json.loads(text)
