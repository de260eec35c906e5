import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from helpers import rational
from ratbif.faces import newton_data
from ratbif.lattice import add, dot
from ratbif.parse import parse_polynomial
from ratbif.polytope import convex_hull, decompose_face, minkowski_sum, newton_polytope


def _unique_affine_coeffs(S, p):
    """Exact barycentric coordinates of p w.r.t. affinely independent S, or None."""
    rows = [[Fraction(s[i]) for s in S] + [Fraction(p[i])] for i in range(len(p))]
    rows.append([Fraction(1)] * len(S) + [Fraction(1)])
    m, k = len(rows), len(S)
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            return None  # dependent subset; a smaller one covers it
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                t = rows[i][c] / rows[r][c]
                rows[i] = [a - t * b for a, b in zip(rows[i], rows[r])]
        r += 1
    if any(rows[i][k] != 0 for i in range(r, m)):
        return None
    return [rows[i][k] / rows[i][i] for i in range(k)]


def brute_extreme_points(points):
    pts = sorted(set(map(tuple, points)))
    n = len(pts[0])
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        inside = False
        for k in range(1, n + 2):
            for S in itertools.combinations(others, k):
                lam = _unique_affine_coeffs(S, p)
                if lam is not None and all(x >= 0 for x in lam):
                    inside = True
                    break
            if inside:
                break
        if not inside:
            out.append(p)
    return out


def point_sets(n, max_pts=12, bound=10):
    return st.lists(st.tuples(*[st.integers(0, bound)] * n), min_size=1, max_size=max_pts)


def nonzero_vec(n, bound=6):
    return st.tuples(*[st.integers(-bound, bound)] * n).filter(any)


def T(pts):
    return convex_hull(pts)


def test_triangles_sum_to_pentagon():
    A = newton_polytope(parse_polynomial("1+x^2*y^3+x^5*y^3", ["x", "y"]))
    B = newton_polytope(parse_polynomial("1+x^2*y^3+x^4*y", ["x", "y"]))
    assert set(A.vertices) == {(0, 0), (2, 3), (5, 3)}
    S = minkowski_sum(A, B)
    assert set(S.vertices) == {(0, 0), (4, 6), (7, 6), (9, 4), (4, 1)}
    assert S.dim == 2


def test_monomial_and_segment():
    pt = newton_polytope(parse_polynomial("x^2*y", ["x", "y"]))
    assert pt.vertices == ((2, 1),) and pt.dim == 0
    seg = newton_polytope(parse_polynomial("x^2+y", ["x", "y"]))
    assert set(seg.vertices) == {(2, 0), (0, 1)} and seg.dim == 1


def test_example_quadrilateral():
    S = minkowski_sum(T([(2, 0), (0, 1)]), T([(1, 0), (0, 1)]))
    assert set(S.vertices) == {(3, 0), (2, 1), (0, 2), (1, 1)}


def test_translation_by_a_point():
    A = T([(0, 0), (3, 1), (1, 4)])
    S = minkowski_sum(A, T([(2, 5)]))
    assert set(S.vertices) == {add(v, (2, 5)) for v in A.vertices}


def test_support_data_examples():
    tri = T([(0, 0), (2, 3), (5, 3)])
    d, face = tri.support_data((-1, 0))
    assert d == -5 and face.vertices == ((5, 3),)
    seg = newton_polytope(parse_polynomial("x+2*y", ["x", "y"]))
    d, face = seg.support_data((-1, -1))
    assert d == -1 and set(face.vertices) == {(1, 0), (0, 1)}
    with pytest.raises(ValueError):
        tri.support_data((0, 0))


def test_decomposition_examples():
    data = newton_data(rational("x^2+y", "x+y"))
    v = data.Nf.face_with_vertices([data.Nf.vertices.index((0, 2))])
    dec = decompose_face(v, data.Nf, data.NP, data.NQ)
    assert dec.gammaP.vertices == ((0, 1),) and dec.gammaQ.vertices == ((0, 1),)
    e = data.Nf.face_with_vertices([data.Nf.vertices.index((0, 2)), data.Nf.vertices.index((2, 1))])
    dec = decompose_face(e, data.Nf, data.NP, data.NQ)
    assert set(dec.gammaP.vertices) == {(2, 0), (0, 1)} and dec.gammaQ.vertices == ((0, 1),)


def test_q_one_decomposition_is_origin():
    data = newton_data(rational("x+x^2*y+3*y^2", "1"))
    for face in data.Nf.faces:
        if face.witness_u is not None:
            assert decompose_face(face, data.Nf, data.NP, data.NQ).gammaQ.vertices == ((0, 0),)


def test_segment_in_r3_has_perpendicular_generators():
    S = T([(0, 0, 0), (1, 2, 3)])
    assert S.dim == 1
    whole = S.whole
    assert whole.witness_u is not None and whole.is_polytope
    d, face = S.support_data(whole.witness_u)
    assert face == whole


def test_cube_face_count():
    S = T(list(itertools.product([0, 1], repeat=3)))
    assert len(S.vertices) == 8
    counts = [sum(1 for f in S.faces if f.dim == k) for k in range(4)]
    assert counts == [8, 12, 6, 1]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(point_sets))
def test_hull_vertices_match_brute_force(points):
    assert sorted(T(points).vertices) == brute_extreme_points(points)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(point_sets(n, 8, 6), point_sets(n, 8, 6), nonzero_vec(n))))
def test_minkowski_linearity(args):
    a, b, u = args
    A, B = T(a), T(b)
    S = minkowski_sum(A, B)
    dA, fA = A.support_data(u)
    dB, fB = B.support_data(u)
    dS, fS = S.support_data(u)
    assert dS == dA + dB
    assert set(fS.vertices) == set(T([add(p, q) for p in fA.vertices for q in fB.vertices]).vertices)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: point_sets(n, 10, 8)))
def test_normal_cone_generators_and_witness(points):
    S = T(points)
    for face in S.faces:
        for g in face.normal_generators:
            _, sup = S.support_data(g)
            assert set(face.vertices) <= set(sup.vertices)
            assert min(dot(g, v) for v in S.vertices) == min(dot(g, v) for v in face.vertices)
        if face.witness_u is not None:
            assert S.support_data(face.witness_u)[1] == face
        elif face.is_polytope:
            assert S.dim == S.n


@settings(max_examples=100, deadline=None)
@given(point_sets(2, 12, 10))
def test_polygon_vertex_edge_count(points):
    S = T(points)
    assume(S.dim == 2)
    V = sum(1 for f in S.faces if f.dim == 0)
    E = sum(1 for f in S.faces if f.dim == 1)
    assert V == E == len(S.vertices)
    assert sum(1 for f in S.faces if f.dim == 2) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: point_sets(n, 10, 8)))
def test_face_lattice_closed_under_intersection(points):
    S = T(points)
    keys = {frozenset(f.vertex_indices) for f in S.faces}
    for a, b in itertools.combinations(keys, 2):
        c = a & b
        assert not c or c in keys
