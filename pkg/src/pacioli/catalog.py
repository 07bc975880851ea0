"""Seed polyhedra with exact Q(sqrt 5) coordinates.

Vertex sets come from the usual published coordinate tables and are rescaled by
an exact factor to the canonical edge length. Faces are not tabulated: they are
recovered by scanning every vertex triple for a supporting plane, in exact
arithmetic.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import lcm

from .mesh import Polyhedron, arity_name
from .scalar import PHI, ExactQ5

SEED_NAMES = (
    "tetrahedron",
    "cube",
    "octahedron",
    "icosahedron",
    "dodecahedron",
    "cuboctahedron",
    "icosidodecahedron",
    "truncated_dodecahedron",
)

# Unit edges need sqrt(2) for these three, which Q(sqrt 5) lacks; they keep edge sqrt(2).
EDGE_SQ = {"tetrahedron": 2, "octahedron": 2, "cuboctahedron": 2}

_HALF = Fraction(1, 2)


def _cyclic(p):
    x, y, z = p
    return [(x, y, z), (y, z, x), (z, x, y)]


def _all_perms(p):
    x, y, z = p
    return [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)]


def _signed(p):
    """Every sign combination; zero coordinates give duplicates the caller's set absorbs."""
    out = []
    for signs in product((1, -1), repeat=3):
        out.append(tuple(c * s for c, s in zip(p, signs)))
    return out


def _orbit(generators, perms=_cyclic):
    pts = set()
    for g in generators:
        g = tuple(ExactQ5.coerce(c) for c in g)
        for q in _signed(g):
            pts.update(perms(q))
    return pts


def _raw_vertices(name):
    phi = PHI
    if name == "tetrahedron":
        return {tuple(ExactQ5(c) for c in v)
                for v in [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]}
    if name == "cube":
        return _orbit([(1, 1, 1)])
    if name == "octahedron":
        return _orbit([(1, 0, 0)])
    if name == "icosahedron":
        return _orbit([(0, 1, phi)])
    if name == "dodecahedron":
        return _orbit([(1, 1, 1), (0, 1 / phi, phi)])
    if name == "cuboctahedron":
        return _orbit([(1, 1, 0)], _all_perms)
    if name == "icosidodecahedron":
        return _orbit([(0, 0, phi), (_HALF, phi / 2, phi * phi / 2)])
    if name == "truncated_dodecahedron":
        return _orbit([(0, 1 / phi, 2 + phi), (1 / phi, phi, 2 * phi), (phi, 2, phi + 1)])
    raise KeyError(f"unknown seed {name!r}; choose from {', '.join(SEED_NAMES)}")


def _dist_sq(u, v):
    return sum(((a - b) * (a - b) for a, b in zip(u, v)), ExactQ5(0))


def _canonical_vertices(name):
    pts = sorted(_raw_vertices(name))
    # every seed is vertex-transitive, so the shortest distance from one vertex is the edge
    edge_sq = min(_dist_sq(pts[0], v) for v in pts[1:])
    k = (ExactQ5(EDGE_SQ.get(name, 1)) / edge_sq).sqrt()
    if k is None:
        raise ArithmeticError(f"{name}: rescaling factor leaves Q(sqrt 5)")
    return sorted(tuple(k * c for c in p) for p in pts)


# exact face enumeration on integer pairs (a, b) meaning a + b*sqrt(5)

def _to_pairs(points):
    den = 1
    for p in points:
        for c in p:
            den = lcm(den, c.a.denominator, c.b.denominator)
    return [tuple((int(c.a * den), int(c.b * den)) for c in p) for p in points]


def _psub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _pmul(x, y):
    return (x[0] * y[0] + 5 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _psign(x):
    a, b = x
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa if a * a > 5 * b * b else sb


def _vsub(u, v):
    return tuple(_psub(a, b) for a, b in zip(u, v))


def _vcross(u, v):
    def term(i, j):
        return _psub(_pmul(u[i], v[j]), _pmul(u[j], v[i]))
    return (term(1, 2), term(2, 0), term(0, 1))


def _vdot(u, v):
    x, y, z = (_pmul(a, b) for a, b in zip(u, v))
    return (x[0] + y[0] + z[0], x[1] + y[1] + z[1])


def _order_cycle(pts, idx, normal):
    """Counterclockwise order (seen from the side ``normal`` points to) by gift wrapping."""
    start = min(idx)
    cycle = [start]
    current = start
    while True:
        nxt = None
        for cand in idx:
            if cand == current:
                continue
            ok = True
            d = _vsub(pts[cand], pts[current])
            for other in idx:
                if other in (current, cand):
                    continue
                turn = _vdot(normal, _vcross(d, _vsub(pts[other], pts[current])))
                if _psign(turn) < 0:
                    ok = False
                    break
            if ok:
                nxt = cand
                break
        if nxt == start or nxt is None:
            break
        cycle.append(nxt)
        current = nxt
    return tuple(cycle)


def enumerate_faces(points):
    """All supporting planes through at least three of ``points`` (exact ExactQ5 triples).

    Returns outward-oriented vertex cycles, each starting at its smallest index,
    sorted by (arity, cycle).
    """
    pts = _to_pairs(points)
    n = len(pts)
    covered = set()
    cycles = []
    for i, j, k in combinations(range(n), 3):
        if (i, j, k) in covered:
            continue
        normal = _vcross(_vsub(pts[j], pts[i]), _vsub(pts[k], pts[i]))
        if all(c == (0, 0) for c in normal):
            continue
        (a0, b0), (a1, b1), (a2, b2) = normal
        pos = neg = False
        on = [i, j, k]
        oa, ob = _vdot(normal, pts[i])
        for m, ((x0, y0), (x1, y1), (x2, y2)) in enumerate(pts):
            if m == i or m == j or m == k:
                continue
            da = a0 * x0 + a1 * x1 + a2 * x2 + 5 * (b0 * y0 + b1 * y1 + b2 * y2) - oa
            db = a0 * y0 + b0 * x0 + a1 * y1 + b1 * x1 + a2 * y2 + b2 * x2 - ob
            s = _psign((da, db))
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            else:
                on.append(m)
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            normal = tuple((-a, -b) for a, b in normal)
        covered.update(combinations(sorted(on), 3))
        cycles.append(_order_cycle(pts, sorted(on), normal))
    return sorted(cycles, key=lambda c: (len(c), c))


@lru_cache(maxsize=None)
def build_seed(name):
    verts = _canonical_vertices(name)
    faces = enumerate_faces(verts)
    labels = [arity_name(len(f)) for f in faces]
    return Polyhedron(verts, faces, labels, name)


def edge_length_sq(name):
    return ExactQ5(EDGE_SQ.get(name, 1))


def list_seeds():
    """``(name, V, E, F, {arity: count})`` for every seed, in catalog order."""
    out = []
    for name in SEED_NAMES:
        p = build_seed(name)
        out.append((name, p.n_vertices, p.n_edges, p.n_faces, p.face_counts()))
    return out
