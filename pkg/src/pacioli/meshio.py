"""OFF/OBJ export and OFF import."""
from decimal import ROUND_HALF_EVEN, localcontext

from .errors import CountMismatch, IndexOutOfRange, MalformedHeader
from .mesh import Polyhedron, derive_topology
from .scalar import Real, evaluate
from .scalar.interval import format_decimal

EXPORT_BITS = 128


def coordinate_text(c, digits):
    """Shortest decimal, at most ``digits`` significant digits, of the 128-bit midpoint."""
    if isinstance(c, float):
        c = Real.of(c)
    mid = evaluate(Real.of(c), EXPORT_BITS).midpoint().to_decimal()
    if mid == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        mid = +mid
    return format_decimal(mid)


def export_model(mesh, fmt="off", digits=17):
    if not 6 <= digits <= 40:
        raise ValueError("digits must be in [6, 40]")
    fmt = fmt.lower()
    coords = [" ".join(coordinate_text(c, digits) for c in v) for v in mesh.vertices]
    lines = []
    if fmt == "off":
        n_edges = len(derive_topology(mesh).edges)
        lines.append("OFF")
        lines.append(f"{mesh.n_vertices} {mesh.n_faces} {n_edges}")
        lines.extend(coords)
        lines.extend(" ".join(str(x) for x in (len(f),) + f) for f in mesh.faces)
    elif fmt == "obj":
        lines.extend(f"v {c}" for c in coords)
        lines.extend("f " + " ".join(str(i + 1) for i in f) for f in mesh.faces)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return ("\n".join(lines) + "\n").encode("ascii")


def _content_lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_off(data):
    """Parse OFF bytes (or text) into a :class:`Polyhedron` with float coordinates."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = list(_content_lines(data))
    if not lines or lines[0].split()[0] != "OFF":
        raise MalformedHeader("first line must be 'OFF'")
    head = lines[0].split()[1:]
    rest = lines[1:]
    if not head:
        if not rest:
            raise MalformedHeader("missing count line")
        head, rest = rest[0].split(), rest[1:]
    try:
        nv, nf = int(head[0]), int(head[1])
    except (IndexError, ValueError):
        raise MalformedHeader(f"bad count line {' '.join(head)!r}") from None
    if len(rest) != nv + nf:
        raise CountMismatch(f"expected {nv} vertex and {nf} face lines, found {len(rest)} lines")
    vertices = []
    for line in rest[:nv]:
        parts = line.split()
        if len(parts) < 3:
            raise CountMismatch(f"vertex line {line!r} has fewer than 3 coordinates")
        vertices.append(tuple(float(x) for x in parts[:3]))
    faces = []
    for line in rest[nv:]:
        parts = [int(x) for x in line.split()]
        n, idx = parts[0], parts[1:]
        if len(idx) < n:
            raise CountMismatch(f"face line {line!r} lists fewer than {n} indices")
        idx = idx[:n]  # anything after the indices is colour data
        for i in idx:
            if not 0 <= i < nv:
                raise IndexOutOfRange(f"face references vertex {i} of {nv}")
        faces.append(tuple(idx))
    return Polyhedron(vertices, faces)
