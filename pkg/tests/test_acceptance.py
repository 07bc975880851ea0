"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The CLI runs here go through real subprocesses so timing and byte-for-byte
determinism are measured on what a user would actually execute.
"""
import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from coplanar_oracle import run_oracle_batch
from pacioli.catalog import SEED_NAMES, build_seed
from pacioli.errors import EquilateralInfeasible
from pacioli.mesh import HeightRule, derive_topology, elevate
from pacioli.meshio import export_model, parse_off
from pacioli.predicates import _IDENTITY, _mat_pow, ring_plane
from pacioli.scalar import Sign, SignPolicy, evaluate, sign, sqrt

TWO_M100 = Fraction(1, 2**100)


def cli(*args, cwd=None):
    proc = subprocess.run([sys.executable, "-m", "pacioli", *args], capture_output=True, cwd=cwd)
    return proc.returncode, proc.stdout, proc.stderr


def say(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def bounds(d):
    return Fraction(d["lo"]), Fraction(d["hi"])


@pytest.fixture(scope="module")
def verify_run():
    t0 = time.perf_counter()
    code, out, err = cli("verify", "pacioli-lii")
    elapsed = time.perf_counter() - t0
    return code, json.loads(out), elapsed


def test_criterion_1_refutation(verify_run):
    code, report, elapsed = verify_run
    lo, hi = bounds(report["delta"])
    ok = code == 0 and report["verdict"] == "not_coplanar" and (lo > 0 or hi < 0) and elapsed < 5
    say(1, ok, f"verdict={report['verdict']} delta=[{report['delta']['lo']}, {report['delta']['hi']}] "
               f"runtime={elapsed:.2f}s")
    assert ok


def test_criterion_2_oracle_agreement(verify_run, oracle):
    _, report, _ = verify_run
    golden = Fraction(oracle["delta_equilateral"])
    lo, hi = bounds(report["delta"])
    mid = (lo + hi) / 2
    rel = abs(mid - golden) / golden
    ok = rel < Fraction(1, 10**12) and lo <= golden <= hi and lo > 0
    say(2, ok, f"relative error {float(rel):.2e}, contains oracle={lo <= golden <= hi}, sign=+ (apex proud)")
    assert ok


def test_criterion_3_ring_exactness():
    base = build_seed("icosidodecahedron")
    e = elevate(base, HeightRule.equilateral())
    worst = Fraction(0)
    certified = 0
    for f in base.faces_of_arity(5):
        rp = ring_plane(e, f)
        cert = rp.certificate
        assert _mat_pow(cert.rotation, 5) == _IDENTITY
        assert cert.verify(base)
        certified += 1
        for g in cert.orbit:
            iv = evaluate(rp.plane.residual(e.apex_of[g]), 128)
            worst = max(worst, iv.magnitude().fraction())
    ok = certified == 12 and worst < TWO_M100
    say(3, ok, f"{certified}/12 pentagons certified, max residual bound {float(worst):.1e} < 2^-100")
    assert ok


def test_criterion_4_corrected_height(oracle):
    code, out, _ = cli("solve-height", "--tol", "1e-30")
    r = json.loads(out)
    lo, hi = bounds(r["pentagon_height"])
    signs = r["endpoint_delta_signs"]
    code2, out2, _ = cli("verify", "pacioli-lii", "--heights", f"tri=equilateral,pent={r['midpoint']}")
    rerun = json.loads(out2)
    dlo, dhi = bounds(rerun["delta"])
    ok = (code == 0 and code2 == 0 and hi - lo <= Fraction(1, 10**30)
          and signs == {"lo": "negative", "hi": "positive"}
          and max(abs(dlo), abs(dhi)) < Fraction(1, 10**25)
          and r["sign_vs_equilateral"] in ("negative", "positive")
          and lo <= Fraction(oracle["coplanar_pentagon_height"]) <= hi)
    say(4, ok, f"width={float(hi - lo):.2e} signs={signs['lo']}/{signs['hi']} "
               f"rerun |delta|<{float(max(abs(dlo), abs(dhi))):.1e} h*-h_eq {r['sign_vs_equilateral']}")
    assert ok


def test_criterion_5_topology():
    checked = 0
    for name in SEED_NAMES:
        base = build_seed(name)
        meshes = [base, elevate(base, HeightRule.zero()).mesh()]
        try:
            meshes.append(elevate(base, HeightRule.equilateral()).mesh())
        except EquilateralInfeasible:
            pass
        for m in meshes:
            topo = derive_topology(m)  # raises on non-manifold edges or flipped faces
            assert all(len(fs) == 2 for fs in topo.edge_faces.values())
            assert m.euler_characteristic() == 2
            checked += 1
    base = build_seed("icosidodecahedron")
    pm = elevate(base, HeightRule.equilateral()).mesh()
    counts = (pm.n_vertices, pm.n_edges, pm.n_faces)
    classes = base.face_counts()
    ok = counts == (62, 180, 120) and classes == {3: 20, 5: 12} and sum(classes.values()) == 32
    say(5, ok, f"{checked} meshes manifold+coherent+chi=2; V,E,F={counts}; classes={classes}")
    assert ok


def test_criterion_6_predicate_oracle():
    disagreements, kinds = run_oracle_batch(1000)
    identity = sqrt(2) + sqrt(3) - sqrt(5 + 2 * sqrt(6))
    v = sign(identity, SignPolicy(64, 4096))
    ok = disagreements == 0 and sum(kinds.values()) >= 1000 and v.sign is Sign.UNDECIDED and v.precision == 4096
    say(6, ok, f"{sum(kinds.values())} sets {dict(kinds)}, {disagreements} disagreements; "
               f"radical identity {v.sign.name} at {v.precision} bits")
    assert ok


def test_criterion_7_infeasibility(tmp_path):
    code, _, err = cli("build", "truncated_dodecahedron", "--elevate", "equilateral",
                       "--out", str(tmp_path / "t.off"))
    ok = code == 4 and b"arity 10" in err
    say(7, ok, f"exit {code}: {err.decode().strip()}")
    assert ok


SUBCOMMANDS = {
    "catalog": ["catalog"],
    "build": ["build", "icosidodecahedron", "--elevate", "equilateral", "--out", "out.off"],
    "verify": ["verify", "pacioli-lii"],
    "solve-height": ["solve-height"],
    "contact": ["contact", "--seed", "icosidodecahedron", "--elevate", "equilateral", "--face", "pent:0"],
}


def test_criterion_8_determinism(tmp_path):
    same = {}
    for name, args in SUBCOMMANDS.items():
        outs = []
        for run in (1, 2):
            d = tmp_path / f"{name}{run}"
            d.mkdir()
            code, out, err = cli(*args, cwd=d)
            files = {p.name: p.read_bytes() for p in d.iterdir()}
            outs.append((code, out, err, files))
        same[name] = outs[0] == outs[1] and outs[0][0] == 0
    reparsed = 0
    for name in SEED_NAMES:
        p = build_seed(name)
        data = export_model(p)
        q = parse_off(data)
        header = data.split(b"\n")[1].split()
        if (q.n_vertices, q.n_faces, q.n_edges) == (p.n_vertices, p.n_faces, p.n_edges) == tuple(
                int(x) for x in (header[0], header[1], header[2])) and q.euler_characteristic() == 2:
            reparsed += 1
    ok = all(same.values()) and reparsed == len(SEED_NAMES)
    say(8, ok, f"identical reruns: {sorted(k for k, v in same.items() if v)}; "
               f"{reparsed}/{len(SEED_NAMES)} seeds re-parse with identical counts")
    assert ok
