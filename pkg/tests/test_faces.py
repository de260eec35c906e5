import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import QUAD, SEGMENT, PENTAGON, GOLDEN, bad_faces_q_one, random_pair, random_q_one, rational
from ratbif import lattice as la
from ratbif.faces import (INTERIOR, TYPE_I, TYPE_II, aff_contains_zero, cf_values, classify_faces,
                          face_critical_values, face_function, newton_data, reduce_face_function)
from ratbif.nondegen import check_nondegenerate
from ratbif.poly import RationalFunction, SparseLaurentPoly


def labels(f):
    return {g.face.label(): g.label for g in classify_faces(f)}


def face(f, label):
    return next(g for g in classify_faces(f) if g.face.label() == label)


def test_pentagon_type_one_faces():
    lab = labels(rational(*PENTAGON))
    type_one = {k for k, v in lab.items() if v == TYPE_I}
    assert type_one == {"(0,0)", "(4,6)", "(0,0)-(4,6)", "(0,0)-(4,1)", "(4,6)-(7,6)"}
    assert {k for k, v in lab.items() if v == TYPE_II} == {"(7,6)", "(9,4)", "(4,1)", "(7,6)-(9,4)", "(4,1)-(9,4)"}


def test_quadrilateral_classification():
    lab = labels(rational(*QUAD))
    assert lab["(0,2)"] == lab["(0,2)-(2,1)"] == TYPE_I
    assert lab["(3,0)"] == lab["(2,1)-(3,0)"] == lab["(2,1)"] == TYPE_II
    assert lab["(1,1)"] == INTERIOR


def test_polynomial_has_no_type_one_faces():
    assert TYPE_I not in labels(rational("x+x^2*y", "1")).values()


def test_face_functions_quadrilateral():
    f = rational(*QUAD)
    ff = face_function(f, face(f, "(0,2)"))
    assert str(ff.numerator) == "y" and str(ff.denominator) == "y"
    ff = face_function(f, face(f, "(0,2)-(2,1)"))
    assert ff.numerator == f.P and str(ff.denominator) == "y"


def test_face_function_segment_vertex():
    f = rational(*SEGMENT)
    ff = face_function(f, face(f, "(0,2)"))
    assert str(ff.numerator) == "y" and str(ff.denominator) == "2*y"


def test_interior_face_has_no_face_function():
    f = rational(*QUAD)
    with pytest.raises(ValueError):
        face_function(f, face(f, "(1,1)"))


def test_reduced_forms():
    f = rational(*QUAD)
    red = reduce_face_function(face_function(f, face(f, "(0,2)")))
    assert red.k == 0 and red.num == red.den
    red = reduce_face_function(face_function(f, face(f, "(0,2)-(2,1)")))
    assert red.k == 1 and not any(red.prefactor)
    # r(s) = s + 1 in s = x^2/y, or 1 + 1/s with the opposite orientation of the edge
    r = lambda s: red.num.evaluate([s]) / red.den.evaluate([s])
    assert red.directions[0] in ((2, -1), (-2, 1))
    expected = 3 if red.directions[0] == (2, -1) else 1.5
    assert r(2) == expected
    g = rational(*SEGMENT)
    red = reduce_face_function(face_function(g, face(g, "(2,0)")))
    assert red.k == 0 and red.num == red.den


def test_face_critical_values_examples():
    f = rational(*QUAD)
    vals = lambda lab: [v.exact for v in face_critical_values(face_function(f, face(f, lab)))]
    assert vals("(0,2)") == [1]
    assert vals("(0,2)-(2,1)") == []
    assert vals("(3,0)") == []


def test_cf_values_examples():
    assert [v.exact for v in cf_values(rational(*SEGMENT))] == [Fraction(1, 2), 1]
    assert [v.exact for v in cf_values(rational(*QUAD))] == [1]
    assert len(cf_values(rational("x+x^2*y", "1"))) == 0


def test_whole_segment_is_classified():
    f = rational(*SEGMENT)
    whole = [g for g in classify_faces(f) if g.face.is_polytope]
    assert len(whole) == 1 and whole[0].label == TYPE_I


def _euler_holds(f: RationalFunction) -> bool:
    data = newton_data(f)
    for g in classify_faces(f, data):
        for u in {g.decomposition.u, *g.face.normal_generators}:
            for poly, S in ((f.P, data.NP), (f.Q, data.NQ)):
                d = min(la.dot(u, v) for v in S.vertices)
                trunc = poly.truncate(lambda e: la.dot(u, e) == d)
                lhs = sum((SparseLaurentPoly.variable(poly.n, j) * trunc.partial_derivative(j)).scale(u[j])
                          for j in range(poly.n))
                if lhs != trunc.scale(d):
                    return False
    return True


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_euler_identity_golden(name):
    assert _euler_holds(rational(*GOLDEN[name]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_euler_identity_random(seed, n):
    assert _euler_holds(random_pair(random.Random(seed), n=n, max_deg=4))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_classifier_criteria_agree(seed, n):
    f = random_pair(random.Random(seed), n=n, max_deg=5)
    data = newton_data(f)
    for g in classify_faces(f, data):
        by_gens = all(df == 0 for *_, df in g.d_values)
        assert by_gens == aff_contains_zero(g.decomposition.gammaP, g.decomposition.gammaQ) \
            or g.label == INTERIOR
        assert (g.label == TYPE_I) == (g.label != INTERIOR and by_gens)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_reduction_reexpands_exactly(seed, n):
    f = random_pair(random.Random(seed), n=n, max_deg=4)
    for g in classify_faces(f):
        if g.label == INTERIOR:
            continue
        ff = face_function(f, g)
        red = reduce_face_function(ff)
        assert red.expand() == (ff.numerator, ff.denominator)
        if g.label == TYPE_I:
            assert not any(red.monomial_prefactor)


def _alternative_basis(U, k, rng):
    """Another unimodular basis whose first k columns span the same lattice."""
    n = len(U)
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        M[i][i] = rng.choice([-1, 1])
    for i in range(n):
        for j in range(i + 1, n):
            if i < k or j >= k:
                M[i][j] = rng.randint(-2, 2)
    return la.matmul(U, M)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_critical_values_basis_invariant(seed):
    rng = random.Random(seed)
    f = random_pair(rng, n=2, max_deg=4)
    for g in classify_faces(f):
        if g.label != TYPE_I:
            continue
        ff = face_function(f, g)
        red = reduce_face_function(ff)
        alt = reduce_face_function(ff, basis=_alternative_basis(red.basis, red.k, rng))
        a = list(face_critical_values(red).complex_values())
        b = list(face_critical_values(alt).complex_values())
        assert len(a) == len(b)
        # match by distance; sorting is unstable for conjugate pairs with equal real parts
        for x in a:
            y = min(b, key=lambda w: abs(w - x))
            assert abs(x - y) <= 1e-7 * max(1, abs(x))
            b.remove(y)


def test_bad_basis_rejected():
    f = rational(*QUAD)
    ff = face_function(f, face(f, "(0,2)-(2,1)"))
    with pytest.raises(ValueError):
        reduce_face_function(ff, basis=[[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        reduce_face_function(ff, basis=[[2, 0], [-1, 1]])


@pytest.mark.parametrize("convenient", [True, False])
def test_q_one_type_one_is_bad_face_set(convenient):
    rng = random.Random(7 if convenient else 8)
    checked = 0
    while checked < 10:
        P = random_q_one(rng, convenient)
        if P.is_constant():
            continue
        f = RationalFunction(P, P.constant(2, 1))
        faces = classify_faces(f)
        if check_nondegenerate(f, faces)[0].status != "verified":
            continue
        ours = {frozenset(g.vertices) for g in faces if g.label == TYPE_I}
        assert ours == bad_faces_q_one(P)
        checked += 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_type_two_faces_have_no_critical_values_when_nondegenerate(seed):
    f = random_pair(random.Random(seed), n=2, max_deg=4)
    faces = classify_faces(f)
    if check_nondegenerate(f, faces)[0].status != "verified":
        return
    for g in faces:
        if g.label == TYPE_II:
            assert len(face_critical_values(face_function(f, g))) == 0
