import random
from fractions import Fraction

from coplanar_oracle import oracle_verdict, random_points, run_oracle_batch

import pytest

from pacioli import vec
from pacioli.catalog import build_seed
from pacioli.errors import CollinearBase, NotAPentagon, SymmetryUnavailable, ToleranceUnreachable, ZeroDirection
from pacioli.mesh import HeightRule, Polyhedron, elevate
from pacioli.predicates import (
    apex_deviation,
    contact_and_stability,
    coplanarity,
    ring_plane,
    ring_points,
    solve_coplanar_height,
)
from pacioli.scalar import ExactQ5, Real, Sign, SignPolicy, evaluate, sign, sqrt

TINY = Fraction(1, 2**100)
P128 = SignPolicy(128, 128)


@pytest.fixture(scope="module")
def ico():
    return build_seed("icosidodecahedron")


@pytest.fixture(scope="module")
def pacioli(ico):
    return elevate(ico, HeightRule.equilateral())


# coplanarity

def test_unit_square_coplanar():
    v = coplanarity([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)])
    assert v.kind == "coplanar_exact" and v.certificate == "rational-rank"


def test_tetrahedron_not_coplanar():
    v = coplanarity(build_seed("tetrahedron").vertices)
    assert v.kind == "not_coplanar" and v.witness == 3
    assert v.signed_distance.excludes_zero()


def test_pacioli_six_not_coplanar(pacioli, ico):
    f = ico.faces_of_arity(5)[0]
    v = coplanarity(ring_points(pacioli, f))
    assert v.kind == "not_coplanar"
    assert v.witness == 5
    assert v.signed_distance.excludes_zero()


def test_collinear_base():
    with pytest.raises(CollinearBase):
        coplanarity([(0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 1, 0)])
    with pytest.raises(CollinearBase):
        coplanarity([(0, 0, 0), (sqrt(2), 0, 0), (sqrt(8), 0, 0), (0, 1, 0)])
    with pytest.raises(ValueError):
        coplanarity([(0, 0, 0), (1, 0, 0), (0, 1, 0)])


def test_oracle_equivalence_exact_path():
    disagreements, kinds = run_oracle_batch(300, seed=11)
    assert disagreements == 0
    assert kinds["coplanar_exact"] > 30 and kinds["not_coplanar"] > 30


def test_interval_path_agrees_with_oracle():
    rng = random.Random(7)
    r = sqrt(2)
    for _ in range(60):
        pts = random_points(rng)
        kind, witness, sgn = oracle_verdict(pts)
        if kind == "collinear":
            continue
        # hide exactness so the certified-sign path runs
        disguised = [tuple((Real.of(c) + r) - r for c in p) for p in pts]
        v = coplanarity(disguised, SignPolicy(64, 256))
        if kind == "not_coplanar":
            assert v.kind == "not_coplanar" and v.witness == witness
            assert v.signed_distance.sign() == sgn
        else:
            assert v.kind == "undecided"


# ring plane and symmetry certificate

def test_ring_plane_all_pentagons(pacioli, ico):
    normals = []
    for f in ico.faces_of_arity(5):
        rp = ring_plane(pacioli, f)
        cert = rp.certificate
        assert cert.verify(ico)
        assert len(set(cert.orbit)) == 5
        assert sorted(cert.permutation) == list(range(ico.n_vertices))
        for g in cert.orbit:
            v = sign(rp.plane.residual(pacioli.apex_of[g]), P128)
            assert v.sign is Sign.UNDECIDED
            assert v.interval.magnitude().fraction() < TINY
        normals.append(rp.plane.normal)
    assert len(normals) == 12
    for i in range(12):
        for j in range(i + 1, 12):
            # unit normals differ iff their dot product is certifiably below 1
            assert sign(1 - vec.dot(normals[i], normals[j]), P128).sign is Sign.POSITIVE


def test_rotation_order_five(pacioli, ico):
    from pacioli.predicates import _IDENTITY, _mat_pow
    cert = ring_plane(pacioli, ico.faces_of_arity(5)[3]).certificate
    assert _mat_pow(cert.rotation, 5) == _IDENTITY
    assert all(_mat_pow(cert.rotation, k) != _IDENTITY for k in range(1, 5))
    assert all(isinstance(x, ExactQ5) for row in cert.rotation for x in row)


def test_ring_plane_errors(pacioli, ico):
    with pytest.raises(NotAPentagon):
        ring_plane(pacioli, ico.faces_of_arity(3)[0])
    dodeca = elevate(build_seed("dodecahedron"), HeightRule.equilateral())
    with pytest.raises(NotAPentagon):
        ring_plane(dodeca, 0)
    floats = Polyhedron([tuple(float(c) for c in v) for v in ico.vertices], ico.faces)
    with pytest.raises(SymmetryUnavailable):
        ring_plane(elevate(floats, HeightRule.equilateral()), ico.faces_of_arity(5)[0])


# apex deviation

def test_delta_positive_and_matches_oracle(pacioli, ico, oracle):
    f = ico.faces_of_arity(5)[0]
    delta = apex_deviation(pacioli, f)
    v = sign(delta)
    assert v.sign is Sign.POSITIVE
    golden = Fraction(oracle["delta_equilateral"])
    iv = evaluate(delta, 128)
    assert iv.contains(golden)
    mid = iv.midpoint().fraction()
    assert abs(mid - golden) / golden < Fraction(1, 10**12)


def test_delta_zero_rule(ico, oracle):
    e = elevate(ico, HeightRule.zero())
    delta = apex_deviation(e, ico.faces_of_arity(5)[0])
    assert sign(delta).sign is Sign.POSITIVE
    golden = Fraction(oracle["delta_zero_rule"])
    iv = evaluate(delta, 128)
    assert abs(iv.midpoint().fraction() - golden) < Fraction(1, 10**30)


def test_delta_same_for_all_pentagons(pacioli, ico):
    pents = ico.faces_of_arity(5)
    first = apex_deviation(pacioli, pents[0])
    for f in pents[1:]:
        v = sign(apex_deviation(pacioli, f) - first, P128)
        assert v.sign is Sign.UNDECIDED
        assert v.interval.width().fraction() < TINY


def _transform(p, fn):
    return Polyhedron([fn(v) for v in p.vertices], p.faces, p.labels, p.name)


@pytest.mark.parametrize("rotation", [
    lambda v: (-v[1], v[0], v[2]),                                       # quarter turn, not a symmetry
    lambda v: (Fraction(3, 5) * v[0] - Fraction(4, 5) * v[1],
               Fraction(4, 5) * v[0] + Fraction(3, 5) * v[1], v[2]),   # rational rotation
])
def test_delta_rotation_invariant(pacioli, ico, rotation):
    f = ico.faces_of_arity(5)[0]
    base = apex_deviation(pacioli, f)
    rotated = elevate(_transform(ico, rotation), HeightRule.equilateral())
    v = sign(apex_deviation(rotated, f) - base, P128)
    assert v.sign is Sign.UNDECIDED
    assert v.interval.width().fraction() < TINY


@pytest.mark.parametrize("k", [Fraction(3), Fraction(1, 2), Fraction(7, 5)])
def test_delta_scale_covariant(pacioli, ico, k):
    f = ico.faces_of_arity(5)[0]
    base = evaluate(apex_deviation(pacioli, f), 128)
    scaled = elevate(_transform(ico, lambda v: tuple(k * c for c in v)), HeightRule.equilateral())
    iv = evaluate(apex_deviation(scaled, f), 128)
    lo, hi = base.lo.fraction() * k, base.hi.fraction() * k
    assert iv.lo.fraction() <= hi and lo <= iv.hi.fraction()


# contact and stability

def test_pacioli_wobbles(pacioli, ico):
    f = ico.faces_of_arity(5)[0]
    rp = ring_plane(pacioli, f)
    rep = contact_and_stability(pacioli, rp.plane.normal)
    assert rep.touching == (pacioli.apex_index(f),)
    assert rep.stable == "no"
    assert rep.marginal == ()
    assert all(iv.lo.man > 0 for iv in rep.margins.values())
    assert len(rep.margins) == 61


def test_cube_rests_on_face():
    cube = build_seed("cube")
    rep = contact_and_stability(cube, (0, 0, -1))
    assert len(rep.touching) == 4
    assert all(cube.vertices[i][2] == Fraction(-1, 2) for i in rep.touching)
    assert rep.stable == "yes"


def test_tetrahedron_rests_on_face():
    from pacioli.mesh import face_frame
    tet = build_seed("tetrahedron")
    # the exact area normal; the unit normal would need sqrt(3)
    n = face_frame(tet, 0).area_normal
    rep = contact_and_stability(tet, n)
    assert set(rep.touching) == set(tet.faces[0])
    assert rep.stable == "yes"
    opposite = contact_and_stability(tet, vec.scale(-1, n))
    assert len(opposite.touching) == 1 and opposite.stable == "no"


def test_cube_edge_balance_is_unstable():
    rep = contact_and_stability(build_seed("cube"), (1, 1, 0))
    assert len(rep.touching) == 2
    assert rep.stable == "no"


@pytest.mark.parametrize("k", [Fraction(1, 3), 2, Fraction(17, 4)])
def test_contact_invariant_under_rescaling(pacioli, ico, k):
    f = ico.faces_of_arity(5)[2]
    axis = ring_plane(pacioli, f).plane.normal
    base = contact_and_stability(pacioli, axis).touching
    assert contact_and_stability(pacioli, vec.scale(k, axis)).touching == base
    cube = build_seed("cube")
    assert contact_and_stability(cube, (0, 0, -k)).touching == contact_and_stability(cube, (0, 0, -1)).touching


def test_zero_direction():
    with pytest.raises(ZeroDirection):
        contact_and_stability(build_seed("cube"), (0, 0, 0))


def test_marginal_contacts_are_kept(ico):
    # ring and pentagon apexes tie up to a true zero that intervals can never separate
    sol = solve_coplanar_height(ico, tol="1e-20")
    e = elevate(ico, HeightRule.explicit({3: sol.triangle_height, 5: sol.root}))
    f = ico.faces_of_arity(5)[0]
    rep = contact_and_stability(e, e.frames[f].normal, SignPolicy(64, 256))
    assert len(rep.touching) == 6
    assert set(rep.marginal) == set(rep.touching)
    # no contact is certain, so stability cannot be claimed either way
    assert rep.stable == "marginal"


# coplanarizing height

def test_solver_interval(ico, oracle):
    sol = solve_coplanar_height(ico, tol="1e-30")
    assert sol.interval.width().fraction() <= Fraction(1, 10**30)
    assert sol.interval.contains(Fraction(oracle["coplanar_pentagon_height"]))
    assert sol.lo_sign is Sign.NEGATIVE and sol.hi_sign is Sign.POSITIVE
    h5 = HeightRule.equilateral().height(5)
    assert sign(sol.root - h5).sign is Sign.NEGATIVE


def test_solver_endpoints_recheck(ico):
    sol = solve_coplanar_height(ico, tol="1e-30")
    f = ico.faces_of_arity(5)[0]
    for end, expected in ((sol.interval.lo, Sign.NEGATIVE), (sol.interval.hi, Sign.POSITIVE)):
        e = elevate(ico, HeightRule.explicit({3: sol.triangle_height, 5: end.fraction()}))
        assert sign(apex_deviation(e, f)).sign is expected


def test_solver_tolerance_monotone(ico):
    prev = None
    for tol in ("1e-6", "5e-7", "1e-20", "5e-21", "1e-40"):
        w = solve_coplanar_height(ico, tol=tol).interval.width().fraction()
        assert w <= Fraction(tol)
        if prev is not None:
            assert w <= prev
        prev = w


def test_solver_fixed_triangle_height(ico):
    sol = solve_coplanar_height(ico, fixed=Fraction(1, 2), tol="1e-25")
    e = elevate(ico, HeightRule.explicit({3: Fraction(1, 2), 5: sol.interval.midpoint().fraction()}))
    iv = evaluate(apex_deviation(e, ico.faces_of_arity(5)[0]), 256)
    assert iv.magnitude().fraction() < Fraction(1, 10**25)


def test_solver_tolerance_unreachable(ico):
    with pytest.raises(ToleranceUnreachable):
        solve_coplanar_height(ico, tol="1e-60", policy=SignPolicy(64, 64))
