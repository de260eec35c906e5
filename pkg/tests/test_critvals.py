import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import QUAD, SEGMENT, random_poly, rational
from ratbif.critvals import discriminant_sheet, global_critical_values, probe_milnor_set, verify_sample
from ratbif.elim import gcd2
from ratbif.numsolve import multistart
from ratbif.parse import parse_polynomial
from ratbif.poly import RationalFunction, SparseLaurentPoly


def P(text, names=("x", "y")):
    return parse_polynomial(text, list(names))


def exact_values(f):
    return sorted(v.exact for v in global_critical_values(f))


def test_global_critical_value_examples():
    assert len(global_critical_values(rational(*QUAD))) == 0
    assert len(global_critical_values(rational(*SEGMENT))) == 0
    cv = global_critical_values(rational("x^2+y^2", "1"))
    assert [v.exact for v in cv] == [0] and cv.complete


def test_critical_curve_and_isolated_point():
    # Sing f is the curve xy = 1 (value 0) plus the origin (value 1)
    assert exact_values(rational("(x*y-1)^2", "1")) == [0, 1]
    assert exact_values(rational("x^3-3*x+y^2", "1")) == [-2, 2]


def test_points_on_the_pole_divisor_are_dropped():
    # A = Q dP - P dQ vanishes at the common zero (0,0) of P and Q, which is not in the domain
    cv = global_critical_values(rational("x", "y"))
    assert len(cv) == 0


def _brute_force_values(Pp: SparseLaurentPoly, seed: int, starts: int = 600) -> list[complex]:
    """Plain Newton on grad P = 0 from log-uniform random starts up to radius 1e3."""
    g = [Pp.partial_derivative(j) for j in range(2)]
    H = [[gi.partial_derivative(j) for j in range(2)] for gi in g]
    rng = np.random.default_rng(seed)
    vals = []
    for _ in range(starts):
        z = 10 ** rng.uniform(-1, 3, 2) * np.exp(2j * np.pi * rng.uniform(size=2))
        for _ in range(100):
            F = np.array([gi.evaluate(z) for gi in g])
            J = np.array([[h.evaluate(z) for h in row] for row in H])
            try:
                dz = np.linalg.solve(J, -F)
            except np.linalg.LinAlgError:
                break
            z = z + dz
            if np.linalg.norm(dz) <= 1e-13 * max(1, np.linalg.norm(z)):
                break
        if not np.all(np.isfinite(z)):
            continue
        size = lambda h: sum(abs(float(c)) * np.prod(np.abs(z) ** np.array(e)) for e, c in h.items())
        if any(abs(gi.evaluate(z)) > 1e-10 * max(1.0, size(gi)) for gi in g if not gi.is_zero()):
            continue
        v = Pp.evaluate(z)
        if not any(abs(v - w) <= 1e-6 * max(1, abs(v)) for w in vals):
            vals.append(v)
    return vals


def test_polynomial_critical_values_match_brute_force():
    rng = random.Random(11)
    done = 0
    while done < 50:
        Pp = random_poly(rng, 2, 4, rng.randint(2, 5))
        px, py = Pp.partial_derivative(0), Pp.partial_derivative(1)
        if px.is_zero() or py.is_zero() or not gcd2(px, py).is_constant():
            continue
        ours = global_critical_values(RationalFunction(Pp, Pp.constant(2, 1))).complex_values()
        theirs = _brute_force_values(Pp, done)
        close = lambda a, b: abs(a - b) <= 1e-6 * max(1, abs(a))
        assert all(any(close(a, b) for b in theirs) for a in ours), (Pp, ours, theirs)
        assert all(any(close(b, a) for a in ours) for b in theirs), (Pp, ours, theirs)
        done += 1


def test_three_variables_are_heuristic():
    f = rational("x^2+y^2+z^2", "1", names=("x", "y", "z"))
    cv = global_critical_values(f)
    assert not cv.complete and [v.exact for v in cv] == [0]


def test_discriminant_sheet_quadrilateral():
    sheet = discriminant_sheet(P("x^2+y"), P("x+y"), 0)
    # 4(1 - t)y - t^2 up to sign; variables (y, t)
    expected = SparseLaurentPoly(2, {(1, 0): 4, (1, 1): -4, (0, 2): -1})
    assert sheet == expected or sheet == -expected


def test_discriminant_sheet_small_cases():
    sheet = discriminant_sheet(P("x^2"), P("1"), 0)
    assert sheet == SparseLaurentPoly(2, {(0, 1): 1})
    assert discriminant_sheet(P("x"), P("1"), 0).is_constant()
    with pytest.raises(ValueError):
        discriminant_sheet(P("y^2"), P("1+y"), 0)


def _sympy_sheet(Pp, Qp):
    x, y, t = sympy.symbols("x y t")
    F = sympy.sympify(Pp.to_string(["x", "y"]).replace("^", "**")) - t * sympy.sympify(
        Qp.to_string(["x", "y"]).replace("^", "**"))
    return sympy.Poly(sympy.resultant(F, sympy.diff(F, x), x), y, t)


def _as_dict(poly: SparseLaurentPoly) -> dict:
    return {e: c for e, c in poly.items()}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_discriminant_sheet_matches_sympy_resultant(seed):
    rng = random.Random(seed)
    Pp = random_poly(rng, 2, 4, rng.randint(2, 4), must=((rng.randint(1, 4), 0),))
    Qp = random_poly(rng, 2, 3, rng.randint(1, 3))
    ours = discriminant_sheet(Pp, Qp, 0)
    ref = _sympy_sheet(Pp, Qp)
    if ref.is_zero:
        assert ours.is_zero()
        return
    ref_terms = {m: Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for m, c in ref.terms()}
    k = next(iter(ref_terms))
    ratio = ref_terms[k] / ours.coefficient(k)
    assert _as_dict(ours.scale(ratio)) == ref_terms


def _root_difference_discriminant(coeffs: list[Fraction]) -> complex:
    """a^(2d-2) * prod_{i<j} (r_i - r_j)^2 from numeric roots."""
    c = [complex(float(a)) for a in reversed(coeffs)]
    roots = np.roots(c)
    d = len(roots)
    acc = c[0] ** (2 * d - 2)
    for i in range(d):
        for j in range(i + 1, d):
            acc *= (roots[i] - roots[j]) ** 2
    return acc


def test_discriminant_sheet_matches_root_differences():
    rng = random.Random(5)
    cases = 0
    while cases < 200:
        d = rng.randint(2, 5)
        Pp = random_poly(rng, 2, 5, rng.randint(1, 4), must=((d, 0), (0, 0)))
        Qp = random_poly(rng, 2, 2, rng.randint(1, 2), must=((0, 0),))
        if Pp.degree(0) != d or Qp.degree(0) >= d:
            continue
        sheet = discriminant_sheet(Pp, Qp, 0)
        ratios = []
        for _ in range(3):
            y0, t0 = Fraction(rng.randint(-5, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            F = Pp.specialize(1, y0) - Qp.specialize(1, y0).scale(t0)
            coeffs = F.to_univariate(0)
            if len(coeffs) - 1 != d:
                continue
            lead = coeffs[-1]
            brute = _root_difference_discriminant(coeffs)
            exact = complex(float(sheet.evaluate_exact([y0, t0])))
            if abs(brute) < 1e-6:
                assert abs(exact) < 1e-6 * max(1.0, float(sum(abs(c) for _, c in sheet.items())))
                continue
            # Res(F, F') = +-lead * disc(F); the sheet is that resultant divided by a constant
            ratios.append(exact / (float(lead) * brute))
        if len(ratios) >= 2:
            assert all(abs(r - ratios[0]) <= 1e-6 * abs(ratios[0]) for r in ratios)
        cases += 1


def test_probe_convention_on_a_coordinate_function():
    # grad x = (1, 0) is a multiple of z only where z2 = 0
    f = rational("x", "1")
    res = probe_milnor_set(f, radii=(2, 5), starts_per_radius=8, seed=1)
    assert len(res.samples) > 0
    for s in res.samples:
        assert abs(s.z[1]) < 1e-8 * s.radius
        assert abs(abs(s.z[0]) - s.radius) < 1e-8 * s.radius
        assert abs(s.lam * s.z[0] - 1) < 1e-8
        assert verify_sample(f, s)


def test_probe_samples_verify_independently():
    f = rational(*QUAD)
    res = probe_milnor_set(f, radii=(10, 30), starts_per_radius=16, seed=2)
    assert res.samples
    for R, group in res.by_radius().items():
        for s in group:
            assert abs(np.linalg.norm(s.z) - R) <= 1e-10 * R
            assert verify_sample(f, s)


def test_probe_polynomial_limits_stay_at_zero():
    res = probe_milnor_set(rational("x+x^2*y", "1"), seed=0)
    assert all(abs(c) < 1e-2 for c in res.cluster_limits)


def test_probe_is_deterministic():
    f = rational(*QUAD)
    a = probe_milnor_set(f, radii=(10, 30), starts_per_radius=8, seed=4)
    b = probe_milnor_set(f, radii=(10, 30), starts_per_radius=8, seed=4)
    assert a == b


def test_probe_rejects_bad_radii():
    with pytest.raises(ValueError):
        probe_milnor_set(rational(*QUAD), radii=(30, 10))
