"""Subresultant elimination over Q[z_1..z_n] and the coprimality verdict.

A polynomial is viewed as univariate in one variable with coefficients in
the polynomial ring of the others (kept as n-variate polynomials whose
exponent in that variable is 0). All divisions are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import upoly
from .poly import SparseLaurentPoly


def coefficients_in(F: SparseLaurentPoly, i: int) -> list[SparseLaurentPoly]:
    """Coefficient list of F viewed in Q[others][z_i] (index = degree in z_i)."""
    if F.is_zero():
        return []
    buckets: dict[int, dict] = {}
    for e, c in F.items():
        f = list(e)
        f[i] = 0
        buckets.setdefault(e[i], {})[tuple(f)] = c
    return [SparseLaurentPoly(F.n, buckets.get(k, {})) for k in range(F.degree(i) + 1)]


def from_coefficients(coeffs: list[SparseLaurentPoly], i: int, n: int) -> SparseLaurentPoly:
    acc = SparseLaurentPoly.zero(n)
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            e = [0] * n
            e[i] = k
            acc = acc + c.shift(e)
    return acc


def _trim(c: list[SparseLaurentPoly]) -> list[SparseLaurentPoly]:
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return c


def pseudo_remainder(A: list, B: list) -> list:
    """prem(A, B) = lc(B)^(deg A - deg B + 1) * A mod B."""
    A, B = _trim(A), _trim(B)
    if len(A) < len(B):
        return A
    lc = B[-1]
    r = list(A)
    e = len(A) - len(B) + 1
    while r and len(r) >= len(B):
        k = len(r) - len(B)
        top = r[-1]
        r = [c * lc for c in r]
        for j, b in enumerate(B):
            r[j + k] = r[j + k] - top * b
        r = _trim(r)
        e -= 1
    if e > 0 and r:
        lc_e = lc ** e
        r = [c * lc_e for c in r]
    return r


def _exquo_all(A: list, d: SparseLaurentPoly) -> list:
    if d == 1:
        return A
    return [c.divide_exact(d) for c in A]


def resultant(F: SparseLaurentPoly, G: SparseLaurentPoly, i: int) -> SparseLaurentPoly:
    """Res_{z_i}(F, G) by the subresultant algorithm; z_i does not occur in the result."""
    if F.n != G.n:
        raise ValueError("dimension mismatch")
    n = F.n
    if F.is_zero() or G.is_zero():
        return SparseLaurentPoly.zero(n)
    A, B = coefficients_in(F, i), coefficients_in(G, i)
    da, db = len(A) - 1, len(B) - 1
    if da == 0:
        return A[0] ** db
    if db == 0:
        return B[0] ** da
    s = 1
    if da < db:
        A, B = B, A
        if da % 2 == 1 and db % 2 == 1:
            s = -s
    one = SparseLaurentPoly.constant(n, 1)
    g = h = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = pseudo_remainder(A, B)
        A = B
        if not R:
            return SparseLaurentPoly.zero(n)
        B = _exquo_all(R, g * h ** delta)
        g = A[-1]
        if delta >= 1:
            h = (g ** delta).divide_exact(h ** (delta - 1))
        if len(B) == 1:
            dA = len(A) - 1
            h = (B[0] ** dA).divide_exact(h ** (dA - 1)) if dA >= 1 else one
            return h * s


def last_nonzero_subresultant(F: SparseLaurentPoly, G: SparseLaurentPoly, i: int) -> SparseLaurentPoly:
    """Last nonzero element of the subresultant PRS of F and G in z_i.

    Its primitive part (over the other variables) is the z_i-dependent part
    of gcd(F, G); it is a nonzero constant in z_i when that part is trivial.
    """
    n = F.n
    A, B = coefficients_in(F, i), coefficients_in(G, i)
    if len(A) < len(B):
        A, B = B, A
    if not B:
        return from_coefficients(A, i, n)
    one = SparseLaurentPoly.constant(n, 1)
    g = h = one
    while len(B) > 1:
        delta = len(A) - len(B)
        R = pseudo_remainder(A, B)
        A = B
        if not R:
            return from_coefficients(A, i, n)
        B = _exquo_all(R, g * h ** delta)
        g = A[-1]
        if delta >= 1:
            h = (g ** delta).divide_exact(h ** (delta - 1))
    return from_coefficients(B, i, n)


# -- bivariate gcd ---------------------------------------------------------------------------


def _univariate_in(c: SparseLaurentPoly, j: int) -> list[Fraction]:
    return c.to_univariate(j)


def content_in(F: SparseLaurentPoly, i: int) -> list[Fraction]:
    """For n = 2: gcd (monic, univariate in the other variable) of F's z_i-coefficients."""
    if F.n != 2:
        raise ValueError("content_in is implemented for two variables")
    j = 1 - i
    g: list[Fraction] = []
    for c in coefficients_in(F, i):
        if not c.is_zero():
            g = upoly.gcd(g, _univariate_in(c, j))
    return g


def gcd2(F: SparseLaurentPoly, G: SparseLaurentPoly) -> SparseLaurentPoly:
    """gcd of two bivariate polynomials, primitive with positive leading coefficient."""
    if F.n != 2 or G.n != 2:
        raise ValueError("gcd2 needs two variables")
    if F.is_zero():
        return G.primitive()
    if G.is_zero():
        return F.primitive()
    i, j = 0, 1
    cF, cG = content_in(F, i), content_in(G, i)
    c = SparseLaurentPoly.from_univariate(upoly.gcd(cF, cG), n=2, i=j)
    ppF = F.divide_exact(SparseLaurentPoly.from_univariate(cF, n=2, i=j))
    ppG = G.divide_exact(SparseLaurentPoly.from_univariate(cG, n=2, i=j))
    if ppF.degree(i) == 0 or ppG.degree(i) == 0:
        return c.primitive()
    S = last_nonzero_subresultant(ppF, ppG, i)
    if S.degree(i) <= 0:
        return c.primitive()
    cS = SparseLaurentPoly.from_univariate(content_in(S, i), n=2, i=j)
    return (c * S.divide_exact(cS)).primitive()


# -- coprimality -----------------------------------------------------------------------------


@dataclass(frozen=True)
class CoprimalityVerdict:
    status: str  # "verified" | "refuted" | "assumed"
    witness: SparseLaurentPoly | None = None
    reason: str = ""


def coprimality_check(P: SparseLaurentPoly, Q: SparseLaurentPoly, *, lines: int = 8,
                      seed: int = 0) -> CoprimalityVerdict:
    """Exact for n = 2; for n >= 3 a random-line heuristic that can only yield 'assumed'."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("P and Q must be nonzero")
    if P.n == 2:
        g = gcd2(P, Q)
        # both variable orders must agree on the gcd
        swap = [[0, 1], [1, 0]]
        g_swapped = gcd2(P.map_exponents(swap), Q.map_exponents(swap)).map_exponents(swap).primitive()
        if g != g_swapped:
            raise ArithmeticError(f"gcd depends on the variable order: {g} vs {g_swapped}")
        if g.is_constant():
            return CoprimalityVerdict("verified", reason="exact subresultant gcd is constant")
        return CoprimalityVerdict("refuted", witness=g, reason=f"common factor {g}")
    rng = random.Random(seed)
    suspicious = 0
    for _ in range(lines):
        line = random_line(P.n, rng)
        p, q = restrict_to_line(P, line), restrict_to_line(Q, line)
        if upoly.deg(upoly.gcd(p, q)) > 0:
            suspicious += 1
    if suspicious == lines:
        return CoprimalityVerdict(
            "assumed", reason=f"WARNING: nonconstant gcd on all {lines} random lines; a common factor is likely")
    return CoprimalityVerdict("assumed", reason=f"probabilistic pass on {lines} random rational lines")


def random_line(n: int, rng: random.Random) -> list[list[Fraction]]:
    """Random rational line s -> a + s*b, as per-coordinate [a_k, b_k]."""
    a = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(n)]
    b = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) or Fraction(1) for _ in range(n)]
    return [[a[k], b[k]] for k in range(n)]


def restrict_to_line(F: SparseLaurentPoly, line: list[list[Fraction]]) -> list[Fraction]:
    """F(a + s*b) as a dense polynomial in s."""
    out: list[Fraction] = []
    for e, c in F.items():
        term = [c]
        for k, p in enumerate(e):
            for _ in range(p):
                term = upoly.mul(term, line[k])
        out = upoly.add(out, term)
    return out


# -- discriminant sheet ----------------------------------------------------------------------


def discriminant_sheet(P: SparseLaurentPoly, Q: SparseLaurentPoly, var: int) -> SparseLaurentPoly:
    """Res_var(P - tQ, d/dvar (P - tQ)) as a polynomial in (other variable, t).

    Content removed and sign fixed so that the graded-lex leading coefficient
    is positive.
    """
    if P.n != 2:
        raise ValueError("discriminant_sheet needs two variables")
    t = SparseLaurentPoly.variable(3, 2)
    F = P.insert_variable(2) - t * Q.insert_variable(2)
    if F.degree(var) <= 0:
        raise ValueError(f"P - tQ does not involve variable {var}; eliminate the other variable")
    D = resultant(F, F.partial_derivative(var), var)
    return D.drop_variable(var).primitive()
