"""End-to-end acceptance checks: worked examples plus the randomized property suites."""

import random
import subprocess
import sys
from fractions import Fraction

from helpers import QUAD, SEGMENT, PENTAGON, bad_faces_q_one, random_pair, random_poly, random_q_one, rational
from ratbif import lattice as la
from ratbif.critvals import discriminant_sheet, global_critical_values, probe_milnor_set
from ratbif.faces import (INTERIOR, TYPE_I, TYPE_II, aff_contains_zero, cf_values, classify_faces,
                          face_critical_values, face_function, newton_data)
from ratbif.nondegen import check_hypotheses, check_nondegenerate
from ratbif.parse import parse_polynomial
from ratbif.poly import RationalFunction, SparseLaurentPoly
from ratbif.polytope import convex_hull, minkowski_sum
from ratbif.report import bifurcation_superset


def superset_exact(rep):
    return sorted(e.exact for e in rep.superset)


def test_pentagon_polytope_and_type_one_faces(criterion):
    with criterion(1, "pentagon N(f): type I faces are (0,0), (4,6) and their three edges", 1.0):
        f = rational(*PENTAGON)
        data = newton_data(f)
        assert set(data.Nf.vertices) == {(0, 0), (4, 6), (7, 6), (9, 4), (4, 1)}
        type_one = {g.face.label() for g in classify_faces(f, data) if g.label == TYPE_I}
        assert type_one == {"(0,0)", "(4,6)", "(0,0)-(4,6)", "(0,0)-(4,1)", "(4,6)-(7,6)"}


def test_quadrilateral(criterion):
    with criterion(2, "f=(x^2+y)/(x+y): superset {0,1}, CF {1}, discriminant sheet", 1.0):
        f = rational(*QUAD)
        rep = bifurcation_superset(f)
        h = rep.hypotheses
        assert (h.coprimality.status, h.nondegenerate.status, h.normal_crossing.status) == ("verified",) * 3
        assert len(rep.global_cv) == 0
        contributing = [cv for cv in rep.face_cv if len(cv)]
        assert [[v.exact for v in cv] for cv in contributing] == [[1]]
        g = next(g for g in rep.faces if g.source_tag() == contributing[0].provenance)
        ff = face_function(f, g)
        assert (str(ff.numerator), str(ff.denominator)) == ("y", "y")
        assert superset_exact(rep) == [0, 1]
        assert [v.exact for v in rep.cf] == [1]
        sheet = discriminant_sheet(f.P, f.Q, 0)
        expected = SparseLaurentPoly(2, {(1, 0): 4, (1, 1): -4, (0, 2): -1})
        assert sheet in (expected, -expected)


def test_segment(criterion):
    with criterion(3, "f=(x+y)/(x+2y): CF {1/2,1}, superset {0}, f(Sing f) empty", 1.0):
        f = rational(*SEGMENT)
        rep = bifurcation_superset(f)
        assert [v.exact for v in rep.cf] == [Fraction(1, 2), 1]
        assert len(rep.global_cv) == 0
        assert superset_exact(rep) == [0], f"superset is {[str(v) for v in superset_exact(rep)]}"


def test_polynomial_specialization(criterion):
    with criterion(4, "Q=1: x+x^2*y superset {0}; type I = bad faces on random convenient samples", 30.0):
        rep = bifurcation_superset(rational("x+x^2*y", "1"))
        assert not any(g.label == TYPE_I for g in rep.faces)
        assert superset_exact(rep) == [0]
        for convenient in (True, False):
            rng = random.Random(2024 + convenient)
            done = 0
            while done < 20:
                P = random_q_one(rng, convenient)
                if P.is_constant():
                    continue
                f = RationalFunction(P, P.constant(2, 1))
                faces = classify_faces(f)
                if check_nondegenerate(f, faces)[0].status != "verified":
                    continue
                assert {frozenset(g.vertices) for g in faces if g.label == TYPE_I} == bad_faces_q_one(P), P
                done += 1


def test_type_two_faces_have_no_critical_values(criterion):
    with criterion(5, "200 random non-degenerate instances: type II faces have no critical values", 300.0):
        rng = random.Random(8)
        done = type_two = 0
        while done < 200:
            f = random_pair(rng, n=2, max_deg=rng.randint(2, 5), nterms=5)
            faces = classify_faces(f)
            if check_nondegenerate(f, faces)[0].status != "verified":
                continue
            for g in faces:
                if g.label == TYPE_II:
                    cv = face_critical_values(face_function(f, g))
                    assert len(cv) == 0, (f, g.face.label(), cv.complex_values())
                    type_two += 1
            done += 1
        assert type_two > 200


def test_classifier_criteria_agree(criterion):
    with criterion(6, "generator test and affine-span test agree (500 pairs n=2, 100 pairs n=3)", 300.0):
        rng = random.Random(6)
        for n, count in ((2, 500), (3, 100)):
            for _ in range(count):
                f = random_pair(rng, n=n, max_deg=6 if n == 2 else 4, nterms=5)
                data = newton_data(f)
                for g in classify_faces(f, data):
                    if g.label == INTERIOR:
                        continue
                    by_generators = all(df == 0 for *_, df in g.d_values)
                    assert by_generators == aff_contains_zero(g.decomposition.gammaP, g.decomposition.gammaQ)
                    assert (g.label == TYPE_I) == by_generators


def _euler_identities(f: RationalFunction) -> int:
    data = newton_data(f)
    checked = 0
    for g in classify_faces(f, data):
        for u in {g.decomposition.u, *g.face.normal_generators}:
            for poly, S in ((f.P, data.NP), (f.Q, data.NQ)):
                d = min(la.dot(u, v) for v in S.vertices)
                trunc = poly.truncate(lambda e: la.dot(u, e) == d)
                lhs = SparseLaurentPoly.zero(poly.n)
                for j in range(poly.n):
                    lhs = lhs + (SparseLaurentPoly.variable(poly.n, j) * trunc.partial_derivative(j)).scale(u[j])
                assert lhs == trunc.scale(d), (f, g.face.label(), u)
                checked += 1
    return checked


def test_euler_identity(criterion):
    with criterion(7, "Euler identity on every face of the golden and 200 random instances", 60.0):
        for P, Q in (PENTAGON, QUAD, SEGMENT, ("x+x^2*y", "1")):
            assert _euler_identities(rational(P, Q))
        rng = random.Random(7)
        for k in range(200):
            assert _euler_identities(random_pair(rng, n=2 + k % 2, max_deg=5))


def test_probe_containment(criterion):
    with criterion(8, "Milnor probe on (x^2+y)/(x+y): limits near {0,1}, one near 1", 30.0):
        res = probe_milnor_set(rational(*QUAD), radii=(10, 30, 100, 300), starts_per_radius=64, seed=0)
        assert res.cluster_limits
        assert all(min(abs(c), abs(c - 1)) < 1e-2 for c in res.cluster_limits), res.cluster_limits
        assert any(abs(c - 1) < 1e-2 for c in res.cluster_limits)


def test_minkowski_linearity(criterion):
    with criterion(9, "Minkowski linearity of d^u and supporting faces on 200 random triples", 60.0):
        rng = random.Random(9)
        for k in range(200):
            n = 2 + k % 2
            pts = lambda: [tuple(rng.randint(0, 8) for _ in range(n)) for _ in range(rng.randint(1, 8))]
            A, B = convex_hull(pts()), convex_hull(pts())
            u = tuple(rng.randint(-6, 6) for _ in range(n))
            if not any(u):
                u = (1,) + u[1:]
            S = minkowski_sum(A, B)
            dA, fA = A.support_data(u)
            dB, fB = B.support_data(u)
            dS, fS = S.support_data(u)
            assert dS == dA + dB
            sums = convex_hull([la.add(a, b) for a in fA.vertices for b in fB.vertices])
            assert set(fS.vertices) == set(sums.vertices)


def test_cli_determinism(criterion, tmp_path):
    with criterion(10, "two CLI runs on (x^2+y)/(x+y) give byte-identical JSON and SVG", 60.0):
        outs = []
        for k in range(2):
            j, s = tmp_path / f"{k}.json", tmp_path / f"{k}.svg"
            r = subprocess.run([sys.executable, "-m", "ratbif", "analyze", "--f", "(x^2+y)/(x+y)", "--probe",
                                "--seed", "0", "--json", str(j), "--svg", str(s)], capture_output=True, text=True)
            assert r.returncode == 0, r.stderr
            outs.append((j.read_bytes(), s.read_bytes()))
        assert outs[0] == outs[1]
