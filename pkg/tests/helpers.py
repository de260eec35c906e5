"""Shared instance generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from ratbif.elim import coprimality_check
from ratbif.poly import RationalFunction, SparseLaurentPoly

QUAD = ("x^2+y", "x+y")
SEGMENT = ("x+y", "x+2*y")
PENTAGON = ("1+x^2*y^3+x^5*y^3", "1+x^2*y^3+x^4*y")
POLY_XY = ("x+x^2*y", "1")
GOLDEN = {"pentagon": PENTAGON, "quadrilateral": QUAD, "segment": SEGMENT, "x+x2y": POLY_XY}


def rational(P: str, Q: str, names=("x", "y")) -> RationalFunction:
    from ratbif.parse import parse_rational_function
    return parse_rational_function(None, list(names), num=P, den=Q)


def random_poly(rng: random.Random, n: int, max_deg: int, nterms: int, *, coeff: int = 5,
                must: tuple = ()) -> SparseLaurentPoly:
    terms = {}
    for e in must:
        terms[tuple(e)] = Fraction(rng.choice([c for c in range(-coeff, coeff + 1) if c]))
    while len(terms) < nterms + len(must):
        e = tuple(rng.randint(0, max_deg) for _ in range(n))
        if sum(e) <= max_deg:
            terms.setdefault(e, Fraction(rng.choice([c for c in range(-coeff, coeff + 1) if c])))
    return SparseLaurentPoly(n, terms)


def random_pair(rng: random.Random, n: int = 2, max_deg: int = 4, nterms: int = 4) -> RationalFunction:
    """Random P/Q whose coprimality is not refuted."""
    while True:
        P = random_poly(rng, n, max_deg, rng.randint(1, nterms))
        Q = random_poly(rng, n, max_deg, rng.randint(1, nterms))
        if P.is_zero() or P.is_constant() and Q.is_constant():
            continue
        if coprimality_check(P, Q, seed=rng.randint(0, 10 ** 6)).status != "refuted":
            return RationalFunction(P, Q)


def polys(n: int, max_deg: int = 4, max_terms: int = 5, coeffs=st.integers(-9, 9)):
    """Hypothesis strategy for polynomials with integer or small rational coefficients."""
    expo = st.tuples(*[st.integers(0, max_deg)] * n)
    coeff = st.one_of(coeffs.filter(bool).map(Fraction),
                      st.fractions(-19, 19, max_denominator=7).filter(bool))
    return st.dictionaries(expo, coeff, max_size=max_terms).map(lambda d: SparseLaurentPoly(n, d))


def complex_points(n: int):
    part = st.floats(-2, 2, allow_nan=False)
    return st.lists(st.builds(complex, part, part).filter(lambda z: abs(z) > 0.2), min_size=n, max_size=n)


def bad_faces_q_one(P: SparseLaurentPoly, bound: int = 16) -> set[frozenset]:
    """Faces of N(P) in two variables that are supported by some u with a negative
    coordinate and whose affine span passes through the origin.

    Written without the polytope engine: supporting sets are found by scanning
    every integer u in a box, and faces are keyed by their extreme points.
    """
    supp = P.support()
    out = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if not (a < 0 or b < 0):
                continue
            vals = [a * e[0] + b * e[1] for e in supp]
            d = min(vals)
            argmin = sorted(e for e, v in zip(supp, vals) if v == d)
            ends = {argmin[0], argmin[-1]}
            if len(ends) == 1:
                (v,) = ends
                through_zero = v == (0, 0)
            else:
                (x1, y1), (x2, y2) = argmin[0], argmin[-1]
                through_zero = x1 * y2 - x2 * y1 == 0
            if through_zero:
                out.add(frozenset(ends))
    return out


def random_q_one(rng: random.Random, convenient: bool) -> SparseLaurentPoly:
    """Random polynomial of degree <= 4 in x, y; convenient ones contain pure powers of x and y."""
    must = ()
    if convenient:
        must = ((rng.randint(1, 4), 0), (0, rng.randint(1, 4)))
        if rng.random() < 0.5:
            must += ((0, 0),)
    return random_poly(rng, 2, 4, rng.randint(1, 4), must=must)
