"""Face classification, face functions and their critical values.

A face of N(f) = N(P) + N(Q) is *interior* when its whole normal cone lies in
the closed nonnegative orthant. Otherwise it is supported by some u with a
negative coordinate, and it is of type I when d^u_P - d^u_Q vanishes for all
such u, of type II when it does not.

On the normal cone C of a face, u -> d^u_P - d^u_Q equals <u, p - q> for any
p in gamma(P), q in gamma(Q), so it is linear on C. The supporting vectors
outside the orthant form relint(C) minus the orthant, which is open in
span(C) and nonempty as soon as C leaves the orthant. A linear map vanishing
on a nonempty open subset of span(C) vanishes on every generator of C and
conversely, so "zero on all generators" is exactly the type I condition.
Since span(C) is the orthogonal complement of the face's direction space,
the same condition reads q0 - p0 in dir gamma(P) + dir gamma(Q); both tests
are run and compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import lattice as la
from . import upoly
from .config import Tolerances
from .errors import InconsistencyError
from .numsolve import NumPoly, multistart
from .poly import RationalFunction, SparseLaurentPoly
from .polytope import (FaceDecomposition, FaceRecord, LatticePolytope, decompose_face, minkowski_sum,
                       newton_polytope)

INTERIOR, TYPE_I, TYPE_II = "Interior", "TypeI", "TypeII"


@dataclass(frozen=True, eq=False)
class NewtonData:
    f: RationalFunction
    NP: LatticePolytope
    NQ: LatticePolytope
    Nf: LatticePolytope


def newton_data(f: RationalFunction) -> NewtonData:
    NP, NQ = newton_polytope(f.P), newton_polytope(f.Q)
    return NewtonData(f, NP, NQ, minkowski_sum(NP, NQ))


@dataclass(frozen=True)
class ClassifiedFace:
    decomposition: FaceDecomposition
    label: str
    # (generator g, d^g_P, d^g_Q, d^g_f)
    d_values: tuple[tuple[tuple[int, ...], Fraction, Fraction, Fraction], ...]
    aff_contains_zero: bool

    @property
    def face(self) -> FaceRecord:
        return self.decomposition.gamma

    @property
    def dim(self) -> int:
        return self.face.dim

    @property
    def vertices(self):
        return self.face.vertices

    def source_tag(self) -> str:
        return "face:" + self.face.label()


def _dmin(S: LatticePolytope, g) -> Fraction:
    return Fraction(min(la.dot(g, v) for v in S.vertices))


def aff_contains_zero(gP: FaceRecord, gQ: FaceRecord) -> bool:
    """0 in Aff(gamma(P) - gamma(Q)), by exact linear algebra on vertex differences."""
    p0, q0 = gP.vertices[0], gQ.vertices[0]
    dirs = [la.sub(v, p0) for v in gP.vertices[1:]] + [la.sub(v, q0) for v in gQ.vertices[1:]]
    return la.in_span(la.sub(q0, p0), dirs)


def classify_face(gamma: FaceRecord, data: NewtonData) -> ClassifiedFace:
    dec = decompose_face(gamma, data.Nf, data.NP, data.NQ)
    dvals = []
    for g in gamma.normal_generators:
        dP, dQ = _dmin(data.NP, g), _dmin(data.NQ, g)
        dvals.append((g, dP, dQ, dP - dQ))
    interior = all(a >= 0 for g in gamma.normal_generators for a in g)
    aff = aff_contains_zero(dec.gammaP, dec.gammaQ)
    if interior:
        label = INTERIOR
    else:
        by_generators = all(df == 0 for *_, df in dvals)
        if by_generators != aff:
            raise InconsistencyError(
                f"type tests disagree on face {gamma.label()}: generators say {by_generators}, affine span says {aff}")
        label = TYPE_I if by_generators else TYPE_II
    return ClassifiedFace(dec, label, tuple(dvals), aff)


def classify_faces(f: RationalFunction, data: NewtonData | None = None) -> list[ClassifiedFace]:
    """Every face of N(f) that has a supporting vector, labelled Interior / TypeI / TypeII.

    The polytope itself is included when it is not full-dimensional.
    """
    if f.coprimality == "refuted":
        raise ValueError("P and Q share a common factor; cancel it first")
    data = data or newton_data(f)
    return [classify_face(g, data) for g in data.Nf.faces if g.witness_u is not None]


# -- face functions ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceFunction:
    gamma: ClassifiedFace
    numerator: SparseLaurentPoly
    denominator: SparseLaurentPoly

    def evaluate(self, z: Sequence[complex]) -> complex:
        return self.numerator.evaluate(z) / self.denominator.evaluate(z)


def truncate_to_face(g: SparseLaurentPoly, u: Sequence[int]) -> SparseLaurentPoly:
    """g restricted to the terms where <u, e> is minimal."""
    d = min(la.dot(u, e) for e in g.support())
    return g.truncate(lambda e: la.dot(u, e) == d)


def face_function(f: RationalFunction, gamma: ClassifiedFace) -> FaceFunction:
    if gamma.label == INTERIOR:
        raise ValueError("face functions are defined for faces supported outside the orthant")
    u = gamma.decomposition.u
    return FaceFunction(gamma, truncate_to_face(f.P, u), truncate_to_face(f.Q, u))


@dataclass(frozen=True)
class ReducedFaceFunction:
    """f_gamma in torus coordinates w adapted to the face.

    ``basis`` is a unimodular U; exponents transform as beta = U^-1 alpha and
    points as w_i = z^(U[:, i]). num and den are Laurent polynomials in the
    first k coordinates; the remaining coordinates enter only through the
    monomial w_tail^prefactor.
    """

    face_function: FaceFunction
    k: int
    basis: tuple[tuple[int, ...], ...]
    num: SparseLaurentPoly
    den: SparseLaurentPoly
    prefactor: tuple[int, ...]
    tail_num: tuple[int, ...]
    tail_den: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def directions(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.basis) for j in range(self.k)]

    @property
    def monomial_prefactor(self) -> tuple[int, ...]:
        """The prefactor as an exponent vector in the original coordinates."""
        n, k = self.n, self.k
        return tuple(sum(self.basis[i][k + j] * self.prefactor[j] for j in range(n - k)) for i in range(n))

    def expand(self) -> tuple[SparseLaurentPoly, SparseLaurentPoly]:
        """Substitute back: (numerator, denominator) in the original coordinates."""
        return (_lift(self.num, self.tail_num, self.basis), _lift(self.den, self.tail_den, self.basis))

    def to_original(self, head: Sequence[complex], tail: Sequence[complex] | None = None) -> np.ndarray:
        """The point z with reduced coordinates w = (head, tail); tail defaults to all ones."""
        n, k = self.n, self.k
        w = np.array(list(head) + list(tail if tail is not None else [1.0] * (n - k)), dtype=complex)
        Uinv = la.integer_inverse(self.basis)
        return np.array([np.prod([w[i] ** Uinv[i][j] for i in range(n)]) for j in range(n)])


def _lift(g: SparseLaurentPoly, tail: Sequence[int], U) -> SparseLaurentPoly:
    n = len(U)
    padded = SparseLaurentPoly(n, {tuple(e) + tuple(tail): c for e, c in g.items()})
    return padded.map_exponents(U, n)


def _split(g: SparseLaurentPoly, Uinv, k: int) -> tuple[SparseLaurentPoly, tuple[int, ...]]:
    n = g.n
    head: dict = {}
    tail = None
    for e, c in g.items():
        beta = tuple(la.dot(row, e) for row in Uinv)
        if tail is None:
            tail = beta[k:]
        elif beta[k:] != tail:
            raise InconsistencyError("face truncation does not lie on a translate of the face lattice")
        head[beta[:k]] = c
    return SparseLaurentPoly(k, head), tail if tail is not None else (0,) * (n - k)


def reduce_face_function(ff: FaceFunction, basis: Sequence[Sequence[int]] | None = None) -> ReducedFaceFunction:
    """Rewrite f_gamma in k = dim(gamma) intrinsic torus coordinates.

    An alternative unimodular ``basis`` may be supplied; its first k columns
    must span the lattice of directions of gamma.
    """
    face = ff.gamma.face
    n = len(face.vertices[0])
    dirs = [la.sub(v, face.vertices[0]) for v in face.vertices[1:]]
    if basis is None:
        U, k = la.lattice_basis_with_complement(dirs, n)
    else:
        U = [list(map(int, row)) for row in basis]
        k = face.dim
        if abs(la.det(U)) != 1:
            raise ValueError("basis is not unimodular")
    Uinv = la.integer_inverse(U)
    for d in dirs:
        if any(la.dot(row, d) for row in Uinv[k:]):
            raise ValueError("the first k basis columns do not span the face directions")
    num, tP = _split(ff.numerator, Uinv, k)
    den, tQ = _split(ff.denominator, Uinv, k)
    pre = la.sub(tP, tQ)
    if ff.gamma.label == TYPE_I and any(pre):
        raise InconsistencyError(f"type I face {face.label()} left a nonzero monomial prefactor {pre}")
    U_t = tuple(tuple(r) for r in U)
    red = ReducedFaceFunction(ff, k, U_t, num, den, tuple(pre), tuple(tP), tuple(tQ))
    if red.expand() != (ff.numerator, ff.denominator):
        raise InconsistencyError(f"change of torus coordinates is not invertible on face {face.label()}")
    return red


# -- critical values --------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalValue:
    value: complex
    exact: Fraction | None = None
    certification: str = "numeric-certified"  # exact-rational | numeric-certified | numeric-heuristic
    multiplicity: int = 1

    def close_to(self, other: "CriticalValue", tol: float) -> bool:
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        return abs(self.value - other.value) <= tol


@dataclass(frozen=True)
class CriticalValueSet:
    values: tuple[CriticalValue, ...]
    provenance: str
    complete: bool
    warnings: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def complex_values(self) -> list[complex]:
        return [v.value for v in self.values]


def exact_value(x: Fraction) -> CriticalValue:
    return CriticalValue(complex(float(x)), Fraction(x), "exact-rational")


def dedupe_values(values: Sequence[CriticalValue], tol: float) -> tuple[CriticalValue, ...]:
    """Merge values within tol, preferring exact representatives; sorted by (re, im)."""
    out: list[CriticalValue] = []
    for v in sorted(values, key=lambda c: (c.exact is None,)):
        if not any(v.close_to(w, tol) or abs(v.value - w.value) <= tol for w in out):
            out.append(v)
    out.sort(key=lambda c: (round(c.value.real, 9), round(c.value.imag, 9)))
    return tuple(out)


def _tidy(v: CriticalValue) -> CriticalValue:
    # rounding noise from real roots shows up as imaginary parts like 1e-60
    if v.exact is None and v.value.imag != 0 and abs(v.value.imag) <= 1e-13 * max(1.0, abs(v.value.real)):
        return CriticalValue(complex(v.value.real, 0.0), None, v.certification, v.multiplicity)
    return v


def value_set(values, provenance: str, complete: bool, tol: float, warnings=()) -> CriticalValueSet:
    return CriticalValueSet(dedupe_values([_tidy(v) for v in values], tol), provenance, complete, tuple(warnings))


def _as_univariate(g: SparseLaurentPoly) -> tuple[list[Fraction], int]:
    """(p, a) with g = s^a * p(s), p(0) != 0."""
    stripped, m = g.strip_monomial()
    return stripped.to_univariate(0), m[0]


def univariate_critical_points(num: SparseLaurentPoly, den: SparseLaurentPoly):
    """Critical points of r = num/den on C* minus {den = 0}, for one-variable Laurent num, den.

    Returns (constant, points): constant is the value of r when r is constant,
    otherwise None; points is a list of (root, exact root or None, multiplicity).
    """
    p, a = _as_univariate(num)
    q, b = _as_univariate(den)
    m = a - b
    g = upoly.gcd(p, q)
    pt, qt = upoly.exquo(p, g), upoly.exquo(q, g)
    Ph = upoly.mul([Fraction(0)] * max(m, 0) + [Fraction(1)], pt)
    Qh = upoly.mul([Fraction(0)] * max(-m, 0) + [Fraction(1)], qt)
    N = upoly.sub(upoly.mul(upoly.derivative(Ph), Qh), upoly.mul(Ph, upoly.derivative(Qh)))
    if not N:
        return Ph[-1] / Qh[-1], []
    N, _ = upoly.strip_zero_roots(N)
    points = []
    for factor, mult in upoly.squarefree_decomposition(N):
        factor = upoly.remove_common_factors(factor, q)
        for z, exact in upoly.all_roots(factor):
            points.append((z, exact, mult))
    points.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
    return None, points


def _rational_eval(num: SparseLaurentPoly, den: SparseLaurentPoly, s) -> CriticalValue:
    if isinstance(s, Fraction):
        return exact_value(num.evaluate_exact([s]) / den.evaluate_exact([s]))
    return CriticalValue(num.evaluate([s]) / den.evaluate([s]))


def _constant_ratio(num: SparseLaurentPoly, den: SparseLaurentPoly) -> Fraction | None:
    """c when num = c * den, else None."""
    c = num.leading_coefficient() / den.leading_coefficient()
    return c if num == den.scale(c) else None


def face_critical_values(ff: FaceFunction | ReducedFaceFunction, *, tol: Tolerances = Tolerances(),
                         seed: int = 0, starts: int = 48) -> CriticalValueSet:
    """f_gamma(Sing f_gamma), the critical values of the face function on the torus.

    For a type II face only the value 0 can occur; anything else raises
    InconsistencyError.
    """
    red = ff if isinstance(ff, ReducedFaceFunction) else reduce_face_function(ff)
    tag = red.face_function.gamma.source_tag()
    if red.face_function.gamma.label == TYPE_II:
        return _type_two_values(red, tol, seed, starts)
    if red.k == 0:
        c = red.num.constant_value() / red.den.constant_value()
        return value_set([exact_value(c)], tag, True, tol.dedupe)
    c = _constant_ratio(red.num, red.den)
    if c is not None:
        return value_set([exact_value(c)], tag, True, tol.dedupe)
    if red.k == 1:
        const, points = univariate_critical_points(red.num, red.den)
        if const is not None:
            return value_set([exact_value(const)], tag, True, tol.dedupe)
        vals = []
        for z, exact, mult in points:
            v = _rational_eval(red.num, red.den, exact if exact is not None else z)
            vals.append(CriticalValue(v.value, v.exact, v.certification, mult))
        return value_set(vals, tag, True, tol.dedupe)
    vals = _multivariate_values(red.num, red.den, tol, seed, starts)
    return value_set(vals, tag, False, tol.dedupe,
                     [f"{tag}: {red.k}-dimensional face solved by multistart Newton; values may be incomplete"])


def _cleared(g: SparseLaurentPoly) -> SparseLaurentPoly:
    return g.clear_negative_exponents()[0]


def _multivariate_values(num, den, tol: Tolerances, seed: int, starts: int) -> list[CriticalValue]:
    k = num.n
    eqs = [_cleared(den * num.partial_derivative(j) - num * den.partial_derivative(j)) for j in range(k)]
    eqs = [e for e in eqs if not e.is_zero()]
    out = []
    nden, nnum = NumPoly(den), NumPoly(num)
    for w in multistart(eqs, starts=starts, seed=seed):
        dv = nden(w)
        if abs(dv) <= tol.margin * max(1.0, nden.scale(w)):
            continue
        out.append(CriticalValue(nnum(w) / dv, None, "numeric-heuristic"))
    return out


def _gradient_vanishes(P: SparseLaurentPoly, Q: SparseLaurentPoly, z: np.ndarray, tol: Tolerances) -> bool:
    """Numerically: Q(z) != 0 and Q dP - P dQ = 0 in every coordinate direction."""
    nQ = NumPoly(Q)
    if abs(nQ(z)) <= tol.margin * max(1.0, nQ.scale(z)):
        return False
    for j in range(P.n):
        G = Q * P.partial_derivative(j) - P * Q.partial_derivative(j)
        if G.is_zero():
            continue
        nG = NumPoly(G)
        if abs(nG(z)) > tol.vanish * max(1.0, nG.scale(z)):
            return False
    return True


def _type_two_values(red: ReducedFaceFunction, tol: Tolerances, seed: int, starts: int) -> CriticalValueSet:
    ff = red.face_function
    tag = ff.gamma.source_tag()
    P, Q = ff.numerator, ff.denominator
    if red.k == 0:
        return value_set([], tag, True, tol.dedupe)
    candidates: list[np.ndarray] = []
    complete = True
    warnings = []
    if red.k == 1:
        p, _ = _as_univariate(red.num)
        heads = [z for z, _ in upoly.all_roots(p)]
        _, points = univariate_critical_points(red.num, red.den)
        heads += [z for z, _, _ in points]
        candidates = [red.to_original([s]) for s in heads]
    else:
        complete = False
        eqs = [_cleared(red.num)] + [_cleared(red.num.partial_derivative(j)) for j in range(red.k)]
        eqs = [e for e in eqs if not e.is_zero()]
        candidates = [red.to_original(list(w)) for w in multistart(eqs, starts=starts, seed=seed, accept=1e-8)]
        warnings.append(f"{tag}: type II face of dimension {red.k} searched by multistart Newton")
    vals = []
    for z in candidates:
        if _gradient_vanishes(P, Q, z, tol):
            v = P.evaluate(z) / Q.evaluate(z)
            vals.append(CriticalValue(v, None, "numeric-certified" if complete else "numeric-heuristic"))
    bad = [v for v in vals if abs(v.value) > max(tol.dedupe, 1e-7)]
    if bad:
        raise InconsistencyError(
            f"type II face {ff.gamma.face.label()} has a nonzero critical value {bad[0].value}; "
            "expected only 0 there")
    vals = [CriticalValue(0j, Fraction(0), "exact-rational" if complete else "numeric-heuristic")
            for _ in vals[:1]]
    return value_set(vals, tag, complete, tol.dedupe, warnings)


def cf_values(f: RationalFunction, faces: Sequence[ClassifiedFace] | None = None, *,
              tol: Tolerances = Tolerances()) -> CriticalValueSet:
    """The constants c(gamma) of the 0-dimensional type I faces."""
    faces = classify_faces(f) if faces is None else faces
    vals = []
    for g in faces:
        if g.label == TYPE_I and g.dim == 0:
            ff = face_function(f, g)
            vals.append(exact_value(ff.numerator.leading_coefficient() / ff.denominator.leading_coefficient()))
    warnings = [] if f.n == 2 else ["CF_f is defined for two variables; the constants are listed for reference"]
    return value_set(vals, "cf", True, tol.dedupe, warnings)
