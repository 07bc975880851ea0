"""Certified geometric predicates on (elevated) polyhedra.

Every yes/no answer here is either proved in exact Q(sqrt 5) arithmetic or backed
by an interval enclosure that excludes zero. Anything else comes back as
undecided or marginal; nothing is rounded into a verdict.
"""
from dataclasses import dataclass
from itertools import combinations

from . import vec
from .catalog import build_seed
from .errors import (
    CollinearBase,
    NotAPentagon,
    SymmetryUnavailable,
    ToleranceUnreachable,
    ZeroDirection,
)
from .mesh import ElevatedSolid, HeightRule, derive_topology, elevate, solid_centroid
from .scalar import DEFAULT_POLICY, ExactQ5, Real, Sign, certified_enclosure, enclose, sign


# coplanarity

@dataclass(frozen=True)
class Plane:
    normal: tuple          # Real 3-vector, certified nonzero
    offset: Real           # plane = {x : normal . x = offset}
    outward: str = "+normal"

    def residual(self, point):
        return vec.dot(self.normal, vec.real(point)) - self.offset


@dataclass(frozen=True)
class CoplanarityVerdict:
    """``kind`` is ``"coplanar_exact"``, ``"not_coplanar"`` or ``"undecided"``."""
    kind: str
    certificate: str = None        # "rational-rank" or "symmetry-orbit"
    witness: int = None
    signed_distance: object = None  # Interval excluding 0 for not_coplanar
    precision: int = 0
    final_width: object = None      # Dyadic, for undecided

    @property
    def coplanar(self):
        return self.kind == "coplanar_exact"


def _exact_point(p):
    out = []
    for c in p:
        if isinstance(c, ExactQ5):
            out.append(c)
            continue
        e = Real.of(c).exact
        if e is None:
            return None
        out.append(e)
    return tuple(out)


def _exact_rank(rows):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    while rank < len(rows) and col < 3:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                k = rows[r][col] * inv
                rows[r] = [a - k * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def coplanarity(points, policy=DEFAULT_POLICY):
    """Decide whether ``points`` (at least 4) lie in one plane.

    All-exact input is settled by an exact rank computation. Otherwise each point
    from the fourth on is tested against the plane through the first three; the
    first point with a certified nonzero orientation is the witness.
    """
    if len(points) < 4:
        raise ValueError("coplanarity needs at least 4 points")
    exact = [_exact_point(p) for p in points]
    if all(e is not None for e in exact):
        return _coplanarity_exact(exact, policy)
    pts = [vec.real(p) for p in points]
    base = vec.cross(vec.sub(pts[1], pts[0]), vec.sub(pts[2], pts[0]))
    nn = vec.norm_sq(base)
    if sign(nn, policy).sign is not Sign.POSITIVE:
        raise CollinearBase("first three points are not certifiably non-collinear")
    length = nn.sqrt()
    undecided = None
    for k in range(3, len(pts)):
        orient = vec.dot(base, vec.sub(pts[k], pts[0]))
        verdict = sign(orient, policy)
        if verdict.nonzero:
            iv, bits = certified_enclosure(orient / length, policy)
            return CoplanarityVerdict("not_coplanar", witness=k, signed_distance=iv,
                                      precision=max(verdict.precision, bits))
        if verdict.sign is Sign.UNDECIDED and undecided is None:
            undecided = verdict
    if undecided is None:
        # every orientation collapsed to an exact zero
        return CoplanarityVerdict("coplanar_exact", certificate="rational-rank")
    return CoplanarityVerdict("undecided", precision=undecided.precision,
                              final_width=undecided.final_width)


def _coplanarity_exact(pts, policy):
    diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
    base = vec.cross(diffs[0], diffs[1])
    if not any(base):
        raise CollinearBase("first three points are collinear")
    if _exact_rank(diffs) <= 2:
        return CoplanarityVerdict("coplanar_exact", certificate="rational-rank")
    for k in range(3, len(pts)):
        orient = vec.dot(base, diffs[k - 1])
        if orient:
            dist = Real.of(orient) / vec.norm_sq(vec.real(base)).sqrt()
            iv, bits = certified_enclosure(dist, policy)
            return CoplanarityVerdict("not_coplanar", witness=k, signed_distance=iv, precision=bits)
    raise AssertionError("rank 3 without a nonzero orientation")


# the five-apex ring around a pentagon

@dataclass(frozen=True)
class SymmetryCertificate:
    rotation: tuple        # 3x3 rows of ExactQ5
    orbit: tuple           # the five ring faces, each the image of the previous
    permutation: tuple     # vertex i -> image of vertex i under the rotation

    def verify(self, base):
        """Re-check every claim of the certificate in exact arithmetic."""
        if _mat_pow(self.rotation, 5) != _IDENTITY:
            return False
        if _mat_mul(_transpose(self.rotation), self.rotation) != _IDENTITY:
            return False
        for i, v in enumerate(base.vertices):
            if _apply(self.rotation, v) != tuple(base.vertices[self.permutation[i]]):
                return False
        faces = _face_lookup(base)
        for k, f in enumerate(self.orbit):
            image = faces.get(frozenset(self.permutation[i] for i in base.faces[f]))
            if image != self.orbit[(k + 1) % len(self.orbit)]:
                return False
        return True


@dataclass(frozen=True)
class RingPlane:
    plane: Plane
    certificate: SymmetryCertificate
    pentagon: int

    @property
    def ring(self):
        return self.certificate.orbit


_IDENTITY = tuple(tuple(ExactQ5(int(i == j)) for j in range(3)) for i in range(3))


def _mat_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(3)), ExactQ5(0)) for j in range(3))
                 for i in range(3))


def _mat_pow(a, n):
    out = _IDENTITY
    for _ in range(n):
        out = _mat_mul(out, a)
    return out


def _transpose(a):
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def _mat_inv(a):
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != i]
            c = [y for y in range(3) if y != j]
            minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    det = sum((a[0][j] * cof[0][j] for j in range(3)), ExactQ5(0))
    if not det:
        raise SymmetryUnavailable("pentagon vertices are linearly dependent")
    return tuple(tuple(cof[j][i] / det for j in range(3)) for i in range(3))


def _apply(m, v):
    return tuple(sum((m[i][k] * v[k] for k in range(3)), ExactQ5(0)) for i in range(3))


def _face_lookup(p):
    return {frozenset(f): i for i, f in enumerate(p.faces)}


def _exact_vertices(p):
    out = [_exact_point(v) for v in p.vertices]
    if any(v is None for v in out):
        raise SymmetryUnavailable("symmetry certificates need exact vertex coordinates")
    return out


def symmetry_certificate(base, pentagon, ring):
    """The rotation taking each pentagon vertex to the next, checked as a symmetry."""
    verts = _exact_vertices(base)
    cyc = base.faces[pentagon]
    src = tuple(tuple(verts[cyc[k]][i] for k in range(3)) for i in range(3))
    dst = tuple(tuple(verts[cyc[k + 1]][i] for k in range(3)) for i in range(3))
    rot = _mat_mul(dst, _mat_inv(src))
    index = {v: i for i, v in enumerate(verts)}
    perm = []
    for v in verts:
        image = index.get(_apply(rot, v))
        if image is None:
            raise SymmetryUnavailable("rotation does not map the vertex set onto itself")
        perm.append(image)
    faces = _face_lookup(base)
    orbit = [ring[0]]
    for _ in range(4):
        image = faces.get(frozenset(perm[i] for i in base.faces[orbit[-1]]))
        if image is None:
            raise SymmetryUnavailable("rotation does not map faces to faces")
        orbit.append(image)
    if sorted(orbit) != sorted(ring):
        raise SymmetryUnavailable("rotation does not cycle the five ring faces")
    cert = SymmetryCertificate(rot, tuple(orbit), tuple(perm))
    if not cert.verify(base):
        raise SymmetryUnavailable("symmetry certificate failed exact verification")
    return cert


def _ring_faces(base, pentagon):
    if base.arity(pentagon) != 5:
        raise NotAPentagon(f"face {pentagon} has {base.arity(pentagon)} sides, not a pentagon")
    topo = derive_topology(base)
    ring = [g for g in topo.adjacency[pentagon] if base.arity(g) == 3]
    if len(ring) != 5:
        raise NotAPentagon(f"face {pentagon} is not bordered by five triangles")
    return ring


def ring_plane(e, pentagon):
    """Plane of the five triangle apexes around ``pentagon``, with its symmetry proof.

    The rotation cycling the pentagon is an exact symmetry of the base that also
    cycles the five neighbouring triangles, so their apexes form one orbit about
    the pentagon axis and lie in a plane perpendicular to it.
    """
    ring = _ring_faces(e.base, pentagon)
    cert = symmetry_certificate(e.base, pentagon, ring)
    axis = e.frames[pentagon].normal
    offset = vec.dot(axis, e.apex_of[cert.orbit[0]])
    return RingPlane(Plane(axis, offset), cert, pentagon)


def apex_deviation(e, pentagon):
    """Signed distance of the pentagon apex from its ring plane (positive = outward)."""
    rp = ring_plane(e, pentagon)
    return rp.plane.residual(e.apex_of[pentagon])


def ring_points(e, pentagon):
    """The five ring apexes (orbit order) followed by the pentagon apex."""
    rp = ring_plane(e, pentagon)
    return [e.apex_of[f] for f in rp.ring] + [e.apex_of[pentagon]]


# contact and static stability

@dataclass(frozen=True)
class ContactReport:
    direction: tuple
    touching: tuple                 # mesh vertex indices on the support plane
    marginal: tuple                 # subset of touching whose tie could not be certified
    margins: dict                   # non-touching vertex -> Interval of support deficit (> 0)
    stable: str                     # "yes", "no" or "marginal"
    precision: int


def _as_mesh(solid):
    return solid.mesh() if isinstance(solid, ElevatedSolid) else solid


def _hull_contains(points, q, d, policy):
    """Is ``q`` strictly inside the convex hull of coplanar ``points`` (seen along ``d``)?"""
    if len(points) < 3:
        return "no"
    edges = []
    for a, b in combinations(range(len(points)), 2):
        for i, j in ((a, b), (b, a)):
            pa, pb = points[i], points[j]
            signs = [sign(vec.det3(vec.sub(pb, pa), vec.sub(pc, pa), d), policy).sign
                     for k, pc in enumerate(points) if k not in (i, j)]
            if Sign.UNDECIDED in signs:
                return "marginal"
            if Sign.NEGATIVE not in signs and Sign.POSITIVE in signs:
                edges.append((pa, pb))
    if not edges:
        return "no"
    result = "yes"
    for pa, pb in edges:
        s = sign(vec.det3(vec.sub(pb, pa), vec.sub(q, pa), d), policy).sign
        if s in (Sign.NEGATIVE, Sign.EXACT_ZERO):
            return "no"
        if s is Sign.UNDECIDED:
            result = "marginal"
    return result


def contact_and_stability(solid, direction, policy=DEFAULT_POLICY):
    """Vertices maximising ``direction . v`` and whether the body balances on them.

    Resting on the support plane with outward normal ``direction``, the body is
    stable when its centroid projects strictly inside the contact polygon.
    """
    mesh = _as_mesh(solid)
    d = vec.real(direction)
    if sign(vec.norm_sq(d), policy).sign is not Sign.POSITIVE:
        raise ZeroDirection("direction must be certifiably nonzero")
    supports = [vec.dot(d, vec.real(v)) for v in mesh.vertices]

    # cheap interval filter, then pairwise certified comparisons among the survivors
    bits = policy.start_bits
    encl = [certified_enclosure(s, type(policy)(bits, bits))[0] for s in supports]
    top_lo = max((iv.lo for iv in encl), key=lambda x: x.fraction())
    cand = [i for i, iv in enumerate(encl) if iv.hi.fraction() >= top_lo.fraction()]
    used = bits
    below = set()
    undecided_pairs = set()
    for i, j in combinations(cand, 2):
        v = sign(supports[i] - supports[j], policy)
        used = max(used, v.precision)
        if v.sign is Sign.POSITIVE:
            below.add(j)
        elif v.sign is Sign.NEGATIVE:
            below.add(i)
        elif v.sign is Sign.UNDECIDED:
            undecided_pairs.add((i, j))
    touching = [i for i in cand if i not in below]
    marginal = {i for pair in undecided_pairs for i in pair
                if pair[0] in touching and pair[1] in touching}
    certain = [i for i in touching if i not in marginal]
    ref = (certain or touching)[0]

    margins = {}
    for i in range(len(supports)):
        if i in touching:
            continue
        iv, b = certified_enclosure(supports[ref] - supports[i], policy)
        used = max(used, b)
        if iv.sign() > 0:
            margins[i] = iv
        else:
            touching.append(i)
            marginal.add(i)
    touching.sort()
    certain = [i for i in touching if i not in marginal]

    q = solid_centroid(mesh)
    pts = [vec.real(mesh.vertices[i]) for i in touching]
    if not marginal:
        stable = _hull_contains(pts, q, d, policy)
    else:
        sure = _hull_contains([vec.real(mesh.vertices[i]) for i in certain], q, d, policy)
        stable = "yes" if sure == "yes" else "marginal"
    return ContactReport(tuple(d), tuple(touching), tuple(sorted(marginal)), margins, stable, used)


# the pentagon height that would make Pacioli right

@dataclass(frozen=True)
class HeightSolution:
    interval: object        # Interval for the coplanarizing pentagon height
    lo_sign: Sign           # sign of delta at interval.lo (NEGATIVE)
    hi_sign: Sign           # sign of delta at interval.hi (POSITIVE)
    root: Real              # the height as an expression
    triangle_height: Real
    precision: int


def _first_pentagon(base):
    pentagons = base.faces_of_arity(5)
    if not pentagons:
        raise NotAPentagon(f"{base.name or 'solid'} has no pentagonal faces")
    return pentagons[0]


def _delta_at(base, tri, pent_h, pentagon, policy):
    e = elevate(base, HeightRule.explicit({3: tri, 5: pent_h}, signed=True), policy)
    return apex_deviation(e, pentagon)


def solve_coplanar_height(seed="icosidodecahedron", fixed=None, tol="1e-30",
                          policy=DEFAULT_POLICY, pentagon=None):
    """Pentagon-pyramid height putting all six apexes in one plane.

    ``fixed`` is the triangle height in edge units (default: equilateral). The
    deviation is affine with positive slope in the pentagon height, so two
    evaluations give the root exactly; the returned bracket is then re-checked by
    certifying the deviation's sign at both ends.
    """
    from fractions import Fraction

    base = build_seed(seed) if isinstance(seed, str) else seed
    tri = HeightRule.equilateral().height(3) if fixed is None else Real.of(fixed)
    if sign(tri, policy).sign is Sign.NEGATIVE:
        raise ValueError("triangle height must be nonnegative")
    tol = Fraction(str(tol)) if isinstance(tol, float) else Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    pentagon = _first_pentagon(base) if pentagon is None else pentagon

    d0 = _delta_at(base, tri, 0, pentagon, policy)
    d1 = _delta_at(base, tri, 1, pentagon, policy)
    root = -d0 / (d1 - d0)
    iv, bits = enclose(root, tol, policy)
    if iv.width().fraction() > tol:
        raise ToleranceUnreachable(f"width {float(iv.width())} > {float(tol)} at {bits} bits")
    lo_v = sign(_delta_at(base, tri, iv.lo.fraction(), pentagon, policy), policy)
    hi_v = sign(_delta_at(base, tri, iv.hi.fraction(), pentagon, policy), policy)
    if lo_v.sign is not Sign.NEGATIVE or hi_v.sign is not Sign.POSITIVE:
        raise ToleranceUnreachable("could not certify opposite deviation signs at the bracket ends")
    used = max(bits, lo_v.precision, hi_v.precision)
    return HeightSolution(iv, lo_v.sign, hi_v.sign, root, tri, used)
