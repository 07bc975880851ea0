"""Exact determinant oracle and random point sets for coplanarity checks."""
import random
from collections import Counter
from fractions import Fraction

from pacioli.errors import CollinearBase
from pacioli.predicates import coplanarity


def det_oracle(a, b, c, d):
    """Signed volume of (b-a, c-a, d-a) in plain Fractions."""
    u = [b[i] - a[i] for i in range(3)]
    v = [c[i] - a[i] for i in range(3)]
    w = [d[i] - a[i] for i in range(3)]
    return (u[0] * (v[1] * w[2] - v[2] * w[1])
            - u[1] * (v[0] * w[2] - v[2] * w[0])
            + u[2] * (v[0] * w[1] - v[1] * w[0]))


def random_points(rng):
    """4 to 7 rational points; about half are planted on the plane of the first three."""
    n = rng.randint(4, 7)

    def coord():
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    pts = [tuple(coord() for _ in range(3)) for _ in range(3)]
    if rng.random() < 0.5:
        for _ in range(n - 3):
            s, t = coord(), coord()
            pts.append(tuple(pts[0][i] + s * (pts[1][i] - pts[0][i]) + t * (pts[2][i] - pts[0][i])
                             for i in range(3)))
        if rng.random() < 0.5:
            # nudge the last point just off the plane
            pts[-1] = tuple(c + Fraction(rng.choice([-1, 1]), rng.randint(1, 50)) for c in pts[-1])
    else:
        pts += [tuple(coord() for _ in range(3)) for _ in range(n - 3)]
    return pts


def oracle_verdict(pts):
    """(kind, witness index, sign of the witness orientation)."""
    a, b, c = pts[:3]
    probes = [(a[0] + 1, a[1], a[2]), (a[0], a[1] + 1, a[2]), (a[0], a[1], a[2] + 1)]
    if all(det_oracle(a, b, c, q) == 0 for q in probes):
        return "collinear", None, 0
    for k in range(3, len(pts)):
        d = det_oracle(a, b, c, pts[k])
        if d:
            return "not_coplanar", k, (d > 0) - (d < 0)
    return "coplanar_exact", None, 0


def run_oracle_batch(n, seed=20240501):
    """Compare ``coplanarity`` with the oracle on ``n`` random sets.

    Returns (disagreements, Counter of oracle verdict kinds).
    """
    rng = random.Random(seed)
    disagreements = 0
    kinds = Counter()
    for _ in range(n):
        pts = random_points(rng)
        kind, witness, sgn = oracle_verdict(pts)
        kinds[kind] += 1
        try:
            v = coplanarity(pts)
        except CollinearBase:
            disagreements += kind != "collinear"
            continue
        if kind != v.kind or witness != v.witness:
            disagreements += 1
        elif kind == "not_coplanar" and v.signed_distance.sign() != sgn:
            disagreements += 1
    return disagreements, kinds
