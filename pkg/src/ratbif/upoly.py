"""Dense univariate polynomials over Q (coefficient lists, lowest degree first).

Exact Euclidean algorithms plus the numeric root finder used for one-variable
critical-value problems: rational roots are sieved out exactly, the rest come
from companion-matrix eigenvalues polished by Newton's method.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

UPoly = list  # list[Fraction], lowest degree first, no trailing zeros


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    m = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(m)])


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, [-c for c in q])


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p: UPoly, c) -> UPoly:
    return trim([a * c for a in p])


def derivative(p: UPoly) -> UPoly:
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(p)
    if len(r) < len(q):
        return [], r
    quot = [Fraction(0)] * (len(r) - len(q) + 1)
    lc = q[-1]
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = r[-1] / lc
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = trim(r)
    return trim(quot), r


def monic(p: UPoly) -> UPoly:
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd (the zero polynomial only when both inputs vanish)."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def exquo(p: UPoly, q: UPoly) -> UPoly:
    quot, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("division is not exact")
    return quot


def squarefree_part(p: UPoly) -> UPoly:
    p = trim(p)
    if deg(p) <= 0:
        return monic(p)
    return monic(exquo(p, gcd(p, derivative(p))))


def is_squarefree(p: UPoly) -> bool:
    return deg(gcd(p, derivative(p))) <= 0


def strip_zero_roots(p: UPoly) -> tuple[UPoly, int]:
    """Remove the factor s^k; return (p / s^k, k)."""
    p = trim(p)
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return p[k:], k


def remove_common_factors(p: UPoly, q: UPoly) -> UPoly:
    """Divide out of p every irreducible factor it shares with q."""
    p = trim(p)
    if not trim(q):
        raise ValueError("q must be nonzero")
    while True:
        g = gcd(p, q)
        if deg(g) <= 0:
            return p
        p = exquo(p, g)


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def evaluate_complex(p: Sequence, x: complex) -> complex:
    acc = 0j
    for c in reversed(p):
        acc = acc * x + complex(float(c))
    return acc


def integer_primitive(p: UPoly) -> list[int]:
    """Integer multiple of p with coprime coefficients and positive leading coefficient."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    sign = 1 if ints[-1] > 0 else -1
    return [sign * c // g for c in ints]


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


_SIEVE_LIMIT = 10 ** 10


def rational_roots(p: UPoly) -> list[Fraction]:
    """All rational roots of p (without multiplicity), by the rational root test.

    Gives up (returns the roots found so far) when the constant or leading
    coefficient is too large to factor by trial division.
    """
    p, k = strip_zero_roots(p)
    roots = [Fraction(0)] if k else []
    if deg(p) <= 0:
        return roots
    ints = integer_primitive(p)
    a0, an = ints[0], ints[-1]
    if abs(a0) > _SIEVE_LIMIT or abs(an) > _SIEVE_LIMIT:
        return roots
    found = set()
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if r not in found and evaluate(p, r) == 0:
                    found.add(r)
    return roots + sorted(found)


def _newton_polish(p_c: np.ndarray, dp_c: np.ndarray, z: complex, steps: int = 8) -> complex:
    for _ in range(steps):
        fz = np.polyval(p_c, z)
        dfz = np.polyval(dp_c, z)
        if dfz == 0:
            break
        step = fz / dfz
        z = z - step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return complex(z)


def numeric_roots(p: UPoly) -> list[complex]:
    """Roots of a squarefree polynomial via companion-matrix eigenvalues + Newton polish."""
    p = monic(trim(p))
    n = deg(p)
    if n <= 0:
        return []
    if n == 1:
        return [complex(-float(p[0]))]
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = [-complex(float(c)) for c in p[:-1]]
    eig = np.linalg.eigvals(comp)
    p_c = np.array([complex(float(c)) for c in reversed(p)])
    dp_c = np.polyder(p_c)
    return [_newton_polish(p_c, dp_c, complex(z)) for z in eig]


def all_roots(p: UPoly) -> list[tuple[complex, Fraction | None]]:
    """Distinct roots of p as (value, exact rational or None), deterministic order."""
    p = squarefree_part(p)
    if deg(p) <= 0:
        return []
    out: list[tuple[complex, Fraction | None]] = []
    rest = p
    for r in rational_roots(p):
        out.append((complex(float(r)), r))
        rest = exquo(rest, [-r, Fraction(1)])
    out.extend((z, None) for z in numeric_roots(rest))
    out.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
    return out


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime a_i with p ~ prod a_i^i."""
    p = trim(p)
    if deg(p) <= 0:
        return []
    out = []
    a = gcd(p, derivative(p))
    b = exquo(p, a)
    c = exquo(derivative(p), a)
    d = sub(c, derivative(b))
    i = 1
    while deg(b) > 0:
        a = gcd(b, d)
        b = exquo(b, a)
        c = exquo(d, a)
        d = sub(c, derivative(b))
        if deg(a) > 0:
            out.append((monic(a), i))
        i += 1
    return out
