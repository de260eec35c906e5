"""Exact sparse Laurent polynomials over Q and the rational functions built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating coefficients are not allowed in exact polynomials")
    return Fraction(c)


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


class SparseLaurentPoly:
    """Map exponent vector -> nonzero rational coefficient.

    Terms are stored in decreasing graded-lex order, so equal polynomials
    print and hash identically. Instances are treated as immutable.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if n < 0:
            raise ValueError("dimension must be nonnegative")
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(a) for a in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
            c = _as_fraction(c)
            if c:
                acc[e] = acc.get(e, Fraction(0)) + c
        self._terms = {e: acc[e] for e in sorted(acc, key=grlex_key, reverse=True) if acc[e]}
        self._hash = None

    # -- constructors -------------------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SparseLaurentPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "SparseLaurentPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "SparseLaurentPoly":
        return cls(len(e), {tuple(e): c})

    @classmethod
    def variable(cls, n: int, i: int) -> "SparseLaurentPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    # -- basic queries ------------------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.n, Fraction(0))

    def is_polynomial(self) -> bool:
        """True if no exponent is negative."""
        return all(a >= 0 for e in self._terms for a in e)

    def degree(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def min_degree(self, i: int) -> int:
        if not self._terms:
            return 0
        return min(e[i] for e in self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = next(iter(self._terms))
        return e, self._terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "SparseLaurentPoly":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> "SparseLaurentPoly":
        return self.scale(1 / self.leading_coefficient())

    # -- arithmetic ---------------------------------------------------------------------

    def _check(self, other: "SparseLaurentPoly") -> None:
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def _coerce(self, other) -> "SparseLaurentPoly":
        if isinstance(other, SparseLaurentPoly):
            self._check(other)
            return other
        return SparseLaurentPoly.constant(self.n, other)

    def __add__(self, other) -> "SparseLaurentPoly":
        other = self._coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return SparseLaurentPoly(self.n, acc)

    __radd__ = __add__

    def __neg__(self) -> "SparseLaurentPoly":
        return SparseLaurentPoly(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "SparseLaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SparseLaurentPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "SparseLaurentPoly":
        c = _as_fraction(c)
        return SparseLaurentPoly(self.n, {e: a * c for e, a in self._terms.items()})

    def __mul__(self, other) -> "SparseLaurentPoly":
        if not isinstance(other, SparseLaurentPoly):
            return self.scale(other)
        self._check(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return SparseLaurentPoly(self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparseLaurentPoly":
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            return SparseLaurentPoly(self.n, {tuple(a * k for a in e): c ** k})
        result = SparseLaurentPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: Sequence[int]) -> "SparseLaurentPoly":
        """Multiply by the monomial z^e."""
        return SparseLaurentPoly(
            self.n, {tuple(a + b for a, b in zip(x, e)): c for x, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseLaurentPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparseLaurentPoly.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparseLaurentPoly({self.n}, {self.to_string()!r})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Render in the input grammar, so that parse(to_string(g)) == g."""
        names = list(names) if names is not None else default_names(self.n)
        if not self._terms:
            return "0"
        out = []
        for k, (e, c) in enumerate(self._terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            factors = []
            for name, p in zip(names, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            if a != 1 or not factors:
                coef = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
                factors.insert(0, coef)
            body = "*".join(factors)
            if k == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    # -- calculus and substitution ------------------------------------------------------

    def partial_derivative(self, i: int) -> "SparseLaurentPoly":
        """Holomorphic partial derivative in the 0-based coordinate i."""
        if not 0 <= i < self.n:
            raise IndexError(f"coordinate {i} out of range for n={self.n}")
        acc = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                acc[tuple(f)] = c * e[i]
        return SparseLaurentPoly(self.n, acc)

    def gradient(self) -> list["SparseLaurentPoly"]:
        return [self.partial_derivative(i) for i in range(self.n)]

    def evaluate(self, z: Sequence[complex]) -> complex:
        """Evaluate at a complex point; deterministic, compensated summation."""
        if len(z) != self.n:
            raise ValueError("point has wrong dimension")
        re, im = [], []
        for e, c in self._terms.items():
            v = complex(float(c))
            for zi, a in zip(z, e):
                if a < 0 and zi == 0:
                    raise ZeroDivisionError("negative exponent at a zero coordinate")
                if a:
                    v *= complex(zi) ** a
            re.append(v.real)
            im.append(v.imag)
        return complex(math.fsum(re), math.fsum(im))

    def evaluate_exact(self, z: Sequence) -> Fraction:
        acc = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for zi, a in zip(z, e):
                v *= Fraction(zi) ** a
            acc += v
        return acc

    def truncate(self, keep) -> "SparseLaurentPoly":
        """Keep the terms whose exponent satisfies ``keep(e)``."""
        return SparseLaurentPoly(self.n, {e: c for e, c in self._terms.items() if keep(e)})

    def specialize(self, i: int, value) -> "SparseLaurentPoly":
        """Substitute a rational constant for z_i; z_i's exponent becomes 0."""
        value = _as_fraction(value)
        acc: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            f = list(e)
            f[i] = 0
            f = tuple(f)
            acc[f] = acc.get(f, 0) + c * value ** e[i]
        return SparseLaurentPoly(self.n, acc)

    def map_exponents(self, matrix: Sequence[Sequence[int]], m: int | None = None) -> "SparseLaurentPoly":
        """Monomial substitution: exponent e becomes ``matrix @ e`` (an m-vector)."""
        m = len(matrix) if m is None else m
        acc: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            f = tuple(sum(row[j] * e[j] for j in range(self.n)) for row in matrix)
            acc[f] = acc.get(f, 0) + c
        return SparseLaurentPoly(m, acc)

    def drop_variable(self, i: int) -> "SparseLaurentPoly":
        if self.degree(i) > 0 or self.min_degree(i) < 0:
            raise ValueError(f"variable {i} still occurs")
        return SparseLaurentPoly(self.n - 1, {e[:i] + e[i + 1:]: c for e, c in self._terms.items()})

    def insert_variable(self, i: int) -> "SparseLaurentPoly":
        return SparseLaurentPoly(self.n + 1, {e[:i] + (0,) + e[i:]: c for e, c in self._terms.items()})

    def to_univariate(self, i: int) -> list[Fraction]:
        """Dense coefficient list (low to high) when only z_i occurs."""
        if self.is_zero():
            return []
        coeffs = [Fraction(0)] * (self.degree(i) + 1)
        for e, c in self._terms.items():
            if any(a for j, a in enumerate(e) if j != i) or e[i] < 0:
                raise ValueError("not a univariate polynomial in the requested variable")
            coeffs[e[i]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, coeffs: Sequence, n: int = 1, i: int = 0) -> "SparseLaurentPoly":
        acc = {}
        for k, c in enumerate(coeffs):
            e = [0] * n
            e[i] = k
            acc[tuple(e)] = c
        return cls(n, acc)

    def clear_negative_exponents(self) -> tuple["SparseLaurentPoly", Exponent]:
        """Return (g * z^s, s) with s the smallest shift making every exponent >= 0."""
        s = tuple(max(0, -self.min_degree(i)) for i in range(self.n))
        return self.shift(s), s

    def strip_monomial(self) -> tuple["SparseLaurentPoly", Exponent]:
        """Divide by the largest monomial z^m dividing self; return (quotient, m)."""
        m = tuple(self.min_degree(i) for i in range(self.n))
        return self.shift(tuple(-a for a in m)), m

    def divide_exact(self, other: "SparseLaurentPoly") -> "SparseLaurentPoly":
        """Exact quotient self / other of polynomials; raises if not divisible."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise ValueError("exact division is defined for polynomials only")
        # if other | self then lt(self) = lt(other) * lt(quotient), so the
        # leading-term reduction either clears rem or hits a non-divisible term
        lt_e, lt_c = other.leading_term()
        rem = self
        quot: dict[Exponent, Fraction] = {}
        while not rem.is_zero():
            e, c = rem.leading_term()
            d = tuple(a - b for a, b in zip(e, lt_e))
            if any(a < 0 for a in d):
                raise ArithmeticError("polynomial division is not exact")
            q = c / lt_c
            quot[d] = q
            rem = rem - other.shift(d).scale(q)
        return SparseLaurentPoly(self.n, quot)


def as_laurent(x, n: int) -> SparseLaurentPoly:
    return x if isinstance(x, SparseLaurentPoly) else SparseLaurentPoly.constant(n, x)


@dataclass(frozen=True)
class RationalFunction:
    """f = P/Q with P, Q polynomials in the same n variables.

    ``coprimality`` is one of ``"verified"``, ``"assumed"``, ``"refuted"`` or
    ``"unchecked"``; ``coprimality_note`` carries the reason or witness.
    """

    P: SparseLaurentPoly
    Q: SparseLaurentPoly
    names: tuple[str, ...] = ()
    coprimality: str = "unchecked"
    coprimality_note: str = ""

    def __post_init__(self):
        if self.P.n != self.Q.n:
            raise ValueError("P and Q must share the dimension")
        if self.Q.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        if not (self.P.is_polynomial() and self.Q.is_polynomial()):
            raise ValueError("P and Q must have nonnegative exponents")
        if not self.names:
            object.__setattr__(self, "names", tuple(default_names(self.P.n)))
        if len(self.names) != self.P.n:
            raise ValueError("one name per variable is required")

    @property
    def n(self) -> int:
        return self.P.n

    def evaluate(self, z: Sequence[complex]) -> complex:
        return self.P.evaluate(z) / self.Q.evaluate(z)

    def to_string(self) -> str:
        p = self.P.to_string(self.names)
        if self.Q == 1:
            return p
        return f"({p})/({self.Q.to_string(self.names)})"

    def __str__(self) -> str:
        return self.to_string()
