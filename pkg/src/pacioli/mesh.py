"""Oriented face-vertex meshes, face frames and pyramid elevation."""
from dataclasses import dataclass, field
from fractions import Fraction

from . import vec
from .errors import (
    DegenerateFace,
    EquilateralInfeasible,
    IndexOutOfRange,
    NegativeHeight,
    NonManifoldEdge,
    OrientationMismatch,
)
from .scalar import DEFAULT_POLICY, ExactQ5, Real, Sign, sign

ARITY_NAMES = {3: "triangle", 4: "square", 5: "pentagon", 6: "hexagon", 8: "octagon", 10: "decagon"}


def arity_name(n):
    return ARITY_NAMES.get(n, f"{n}-gon")


@dataclass(frozen=True)
class Polyhedron:
    """Vertices (3-tuples of ExactQ5, Real or float) and outward-oriented face cycles."""
    vertices: tuple
    faces: tuple
    labels: tuple = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        object.__setattr__(self, "faces", tuple(tuple(int(i) for i in f) for f in self.faces))
        nv = len(self.vertices)
        for f in self.faces:
            if len(f) < 3 or len(set(f)) != len(f):
                raise ValueError(f"face {f} needs at least 3 distinct vertices")
            for i in f:
                if not 0 <= i < nv:
                    raise IndexOutOfRange(f"face {f} references vertex {i} of {nv}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.faces):
                raise ValueError("one label per face required")

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_faces(self):
        return len(self.faces)

    @property
    def n_edges(self):
        return len({frozenset((f[i], f[(i + 1) % len(f)])) for f in self.faces for i in range(len(f))})

    def euler_characteristic(self):
        return self.n_vertices - self.n_edges + self.n_faces

    def arity(self, f):
        return len(self.faces[f])

    def face_counts(self):
        """Map arity -> number of faces."""
        counts = {}
        for f in self.faces:
            counts[len(f)] = counts.get(len(f), 0) + 1
        return dict(sorted(counts.items()))

    def faces_of_arity(self, n):
        return [i for i, f in enumerate(self.faces) if len(f) == n]


@dataclass(frozen=True)
class Topology:
    edges: tuple            # sorted (i, j) with i < j
    edge_faces: dict        # (i, j) -> (face traversing i->j, face traversing j->i)
    adjacency: tuple        # face -> sorted edge-adjacent faces
    vertex_faces: tuple     # vertex -> sorted incident faces


def derive_topology(p):
    """Edges, face adjacency and vertex-face incidence, checking manifoldness."""
    directed = {}
    undirected = {}
    for fi, f in enumerate(p.faces):
        n = len(f)
        for k in range(n):
            a, b = f[k], f[(k + 1) % n]
            undirected.setdefault((min(a, b), max(a, b)), []).append(fi)
            directed.setdefault((a, b), []).append(fi)
    for e, fs in undirected.items():
        if len(fs) != 2:
            raise NonManifoldEdge(f"edge {e} borders {len(fs)} faces")
    for (a, b), fs in directed.items():
        if len(fs) > 1:
            raise OrientationMismatch(f"faces {fs} traverse edge ({a}, {b}) in the same direction")
    edge_faces = {}
    adjacency = [set() for _ in p.faces]
    for (i, j) in sorted(undirected):
        fwd, bwd = directed[(i, j)][0], directed[(j, i)][0]
        edge_faces[(i, j)] = (fwd, bwd)
        adjacency[fwd].add(bwd)
        adjacency[bwd].add(fwd)
    vertex_faces = [set() for _ in p.vertices]
    for fi, f in enumerate(p.faces):
        for i in f:
            vertex_faces[i].add(fi)
    return Topology(
        edges=tuple(sorted(undirected)),
        edge_faces=edge_faces,
        adjacency=tuple(tuple(sorted(s)) for s in adjacency),
        vertex_faces=tuple(tuple(sorted(s)) for s in vertex_faces),
    )


@dataclass(frozen=True)
class FaceFrame:
    centroid: tuple        # Real 3-vector
    normal: tuple          # outward unit normal, Real 3-vector
    area_normal: tuple     # Newell normal (length = twice the face area)


def face_frame(p, f, policy=DEFAULT_POLICY):
    pts = [vec.real(p.vertices[i]) for i in p.faces[f]]
    centroid = vec.mean(pts)
    n = len(pts)
    total = (Real.of(0),) * 3
    for k in range(n):
        total = vec.add(total, vec.cross(pts[k], pts[(k + 1) % n]))
    nn = vec.norm_sq(total)
    if sign(nn, policy).sign is not Sign.POSITIVE:
        raise DegenerateFace(f"face {f} has no certified nonzero normal")
    length = nn.sqrt()
    normal = tuple(c / length for c in total)
    return FaceFrame(centroid, normal, total)


def solid_centroid(p):
    """Vertex centroid (coincides with the body centroid for every solid in scope)."""
    return vec.mean([vec.real(v) for v in p.vertices])


# elevation

# squared circumradius over squared edge for regular n-gons, n <= 5
_CIRCUMRADIUS_SQ = {
    3: ExactQ5(Fraction(1, 3)),
    4: ExactQ5(Fraction(1, 2)),
    5: ExactQ5(Fraction(1, 2), Fraction(1, 10)),
}


@dataclass(frozen=True)
class HeightRule:
    """How tall each face's pyramid is, in edge-length units.

    ``mode`` is ``"equilateral"``, ``"explicit"`` or ``"zero"``; explicit rules
    carry ``heights`` mapping face arity to height. ``signed`` lets explicit
    heights go negative (the apex sinks into the body), which the height solver
    needs when the coplanarizing height lies below the face.
    """
    mode: str
    heights: dict = field(default=None, hash=False)
    signed: bool = False

    @classmethod
    def equilateral(cls):
        return cls("equilateral")

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def explicit(cls, heights, signed=False):
        return cls("explicit", {int(k): Real.of(v) for k, v in heights.items()}, signed)

    def __post_init__(self):
        if self.mode not in ("equilateral", "explicit", "zero"):
            raise ValueError(f"unknown height rule {self.mode!r}")
        if self.mode == "explicit":
            if not self.heights:
                raise ValueError("explicit rule needs heights")
            for n, h in self.heights.items():
                if not self.signed and sign(h).sign is Sign.NEGATIVE:
                    raise NegativeHeight(f"height for {n}-gon faces is negative")

    def height(self, n):
        """Height for ``n``-gon faces in edge units (a Real)."""
        if self.mode == "zero":
            return Real.of(0)
        if self.mode == "explicit":
            try:
                return self.heights[n]
            except KeyError:
                raise ValueError(f"explicit rule has no height for {n}-gon faces") from None
        if n not in _CIRCUMRADIUS_SQ:
            raise EquilateralInfeasible(n)
        return Real.of(1 - _CIRCUMRADIUS_SQ[n]).sqrt()


@dataclass(frozen=True)
class ElevatedSolid:
    base: Polyhedron
    rule: HeightRule
    heights: dict          # arity -> Real height in edge units
    frames: tuple          # FaceFrame per base face
    apex_of: tuple         # Real 3-vector per base face
    edge_lengths: tuple    # Real edge length per base face

    def apex_index(self, f):
        """Index of face ``f``'s apex in :meth:`mesh` vertices."""
        return self.base.n_vertices + f

    def mesh(self):
        base = self.base
        vertices = list(base.vertices) + list(self.apex_of)
        faces, labels = [], []
        for fi, f in enumerate(base.faces):
            apex = self.apex_index(fi)
            n = len(f)
            for k in range(n):
                faces.append((f[k], f[(k + 1) % n], apex))
                labels.append(f"pyramid {fi} ({arity_name(n)}) side {k}")
        name = f"elevated {base.name}".strip()
        return Polyhedron(vertices, faces, labels, name)


def elevate(p, rule, policy=DEFAULT_POLICY):
    """Erect a pyramid on every face: apex = centroid + height * edge * outward normal."""
    arities = sorted(p.face_counts())
    if rule.mode == "equilateral":
        bad = [n for n in arities if n not in _CIRCUMRADIUS_SQ]
        if bad:
            raise EquilateralInfeasible(bad[0])
    heights = {n: rule.height(n) for n in arities}
    frames, apexes, edges = [], [], []
    for fi, f in enumerate(p.faces):
        frame = face_frame(p, fi, policy)
        a, b = vec.real(p.vertices[f[0]]), vec.real(p.vertices[f[1]])
        s = vec.norm_sq(vec.sub(b, a)).sqrt()
        lift = heights[len(f)] * s
        apexes.append(vec.add(frame.centroid, vec.scale(lift, frame.normal)))
        frames.append(frame)
        edges.append(s)
    return ElevatedSolid(p, rule, heights, tuple(frames), tuple(apexes), tuple(edges))
