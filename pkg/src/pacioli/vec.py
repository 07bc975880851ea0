"""3-vector helpers over any exact or Real scalar type (tuples, no numpy)."""
from .scalar import Real


def add(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def scale(k, v):
    return (k * v[0], k * v[1], k * v[2])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def norm_sq(v):
    """Squared length built from syntactic squares, so it evaluates as nonnegative."""
    if all(isinstance(c, Real) for c in v):
        return v[0].square() + v[1].square() + v[2].square()
    return dot(v, v)


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def det3(u, v, w):
    return dot(u, cross(v, w))


def mean(points):
    n = len(points)
    sx = sy = sz = 0
    for p in points:
        sx, sy, sz = sx + p[0], sy + p[1], sz + p[2]
    return (sx / n, sy / n, sz / n)


def real(v):
    return tuple(Real.of(c) for c in v)
