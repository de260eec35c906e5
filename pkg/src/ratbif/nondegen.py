"""Hypothesis checks: non-degeneracy of the face functions, normal crossing of
P = 0 and Q = 0 along their intersection, and the inequality d^u_Q >= d^u_P
outside the nonnegative orthant.

Non-degeneracy on faces of dimension <= 1 is decided exactly in any number of
variables. In adapted torus coordinates w = (s, w_tail) an edge truncation is
w_tail^a * s^e * p(s). At a zero of p its gradient is a multiple of ds, so

* it is singular exactly at the multiple roots of p, and
* two such truncations never have independent gradients at a common zero,
  so they must have no common zero on the torus: gcd(p, q) = 1.

Higher-dimensional faces only occur for n >= 3 and are searched numerically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import elim, upoly
from . import lattice as la
from .config import Tolerances
from .errors import InconsistencyError
from .faces import (INTERIOR, TYPE_II, ClassifiedFace, NewtonData, ReducedFaceFunction, face_function,
                    newton_data, reduce_face_function)
from .numsolve import NumPoly, NumSystem, multistart, newton
from .poly import RationalFunction, SparseLaurentPoly
from .polytope import LatticePolytope, minkowski_sum


@dataclass(frozen=True)
class Verdict:
    status: str  # verified | refuted | heuristic-pass | unchecked | holds | fails | not-requested
    witness: tuple | None = None
    face: str | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("verified", "holds")


@dataclass(frozen=True)
class HypothesisReport:
    coprimality: Verdict
    nondegenerate: Verdict
    normal_crossing: Verdict
    condition_star: Verdict
    face_verdicts: tuple[Verdict, ...] = field(default=())

    @property
    def all_verified(self) -> bool:
        return self.coprimality.ok and self.nondegenerate.ok and self.normal_crossing.ok

    @property
    def refuted(self) -> bool:
        return any(v.status in ("refuted",) for v in (self.coprimality, self.nondegenerate, self.normal_crossing))


def _rel(g: SparseLaurentPoly, z) -> float:
    n = NumPoly(g)
    return abs(n(z)) / max(1.0, n.scale(z))


# -- non-degeneracy ---------------------------------------------------------------------------


def _edge_verdict(red: ReducedFaceFunction, type_two: bool) -> Verdict:
    tag = red.face_function.gamma.face.label()
    p = red.num.strip_monomial()[0].to_univariate(0)
    q = red.den.strip_monomial()[0].to_univariate(0)
    if type_two:
        for a, b, name in ((p, q, "P"), (q, p, "Q")):
            rep = upoly.gcd(a, upoly.derivative(a))
            rep = upoly.remove_common_factors(rep, b)
            if upoly.deg(rep) > 0:
                s0 = upoly.all_roots(rep)[0][0]
                z = tuple(complex(c) for c in red.to_original([s0]))
                return Verdict("refuted", z, tag, f"{name}_gamma is singular on its zero set off the other's zeros")
    g = upoly.gcd(p, q)
    if upoly.deg(g) > 0:
        s0 = upoly.all_roots(g)[0][0]
        z = tuple(complex(c) for c in red.to_original([s0]))
        return Verdict("refuted", z, tag, "P_gamma and Q_gamma share a torus zero (dependent gradients)")
    return Verdict("verified", face=tag)


def _numeric_face_verdict(red: ReducedFaceFunction, type_two: bool, tol: Tolerances, seed: int,
                          starts: int) -> Verdict:
    tag = red.face_function.gamma.face.label()
    num = red.num.clear_negative_exponents()[0]
    den = red.den.clear_negative_exponents()[0]
    k = red.k
    systems = []
    if type_two:
        systems.append(([num] + [num.partial_derivative(j) for j in range(k)], den, "P_gamma singular"))
        systems.append(([den] + [den.partial_derivative(j) for j in range(k)], num, "Q_gamma singular"))
    gn = [num.partial_derivative(j) for j in range(k)]
    gd = [den.partial_derivative(j) for j in range(k)]
    minors = [gn[i] * gd[j] - gn[j] * gd[i] for i, j in itertools.combinations(range(k), 2)]
    systems.append(([num, den] + minors, None, "dependent gradients at a common zero"))
    for eqs, other, why in systems:
        eqs = [e for e in eqs if not e.is_zero()]
        for w in multistart(eqs, starts=starts, seed=seed, accept=tol.vanish):
            if other is not None and _rel(other, w) <= tol.margin:
                continue
            z = tuple(complex(c) for c in red.to_original(list(w)))
            return Verdict("refuted", z, tag, why)
    return Verdict("heuristic-pass", face=tag, detail=f"multistart search over {starts} starts found no defect")


def check_nondegenerate(f: RationalFunction, faces: Sequence[ClassifiedFace], *, tol: Tolerances = Tolerances(),
                        seed: int = 0, starts: int = 32) -> tuple[Verdict, tuple[Verdict, ...]]:
    """(aggregate verdict, per-face verdicts) over the type I and type II faces."""
    per_face = []
    for g in faces:
        if g.label == INTERIOR:
            continue
        if g.dim == 0:
            per_face.append(Verdict("verified", face=g.face.label(), detail="monomials do not vanish on the torus"))
            continue
        red = reduce_face_function(face_function(f, g))
        if red.k == 1:
            per_face.append(_edge_verdict(red, g.label == TYPE_II))
        else:
            per_face.append(_numeric_face_verdict(red, g.label == TYPE_II, tol, seed, starts))
    refuted = [v for v in per_face if v.status == "refuted"]
    if refuted:
        v = refuted[0]
        return Verdict("refuted", v.witness, v.face, v.detail), tuple(per_face)
    if f.n == 2 and all(v.status == "verified" for v in per_face):
        return Verdict("verified", detail="exact on every face"), tuple(per_face)
    return Verdict("heuristic-pass", detail="no defect found; faces of dimension >= 2 or n >= 3 are searched "
                                            "numerically"), tuple(per_face)


def witness_violates_nondegeneracy(f: RationalFunction, face: ClassifiedFace, z, tol: Tolerances = Tolerances()) -> bool:
    """Independent re-check of a non-degeneracy witness in the original coordinates."""
    ff = face_function(f, face)
    P, Q = ff.numerator, ff.denominator
    z = np.asarray(z, dtype=complex)
    n = P.n
    gP = np.array([NumPoly(P.partial_derivative(j))(z) for j in range(n)])
    gQ = np.array([NumPoly(Q.partial_derivative(j))(z) for j in range(n)])
    zeroP, zeroQ = _rel(P, z) < tol.vanish, _rel(Q, z) < tol.vanish
    if face.label == TYPE_II:
        singP = all(_rel(P.partial_derivative(j), z) < tol.vanish for j in range(n))
        singQ = all(_rel(Q.partial_derivative(j), z) < tol.vanish for j in range(n))
        if zeroP and not zeroQ and singP or zeroQ and not zeroP and singQ:
            return True
    if zeroP and zeroQ:
        M = np.vstack([gP, gQ])
        return np.linalg.matrix_rank(M, tol=tol.vanish * max(1.0, np.abs(M).max())) < 2
    return False


# -- normal crossing --------------------------------------------------------------------------


def _squarefree_exact(P: SparseLaurentPoly) -> bool:
    if P.is_constant():
        return True
    g = elim.gcd2(P, P.partial_derivative(0))
    g = elim.gcd2(g, P.partial_derivative(1))
    return g.is_constant()


def intersection_points(P: SparseLaurentPoly, Q: SparseLaurentPoly, tol: Tolerances = Tolerances()) -> list[np.ndarray]:
    """V(P, Q) in C^2 for coprime P, Q: resultant roots in each variable, paired and polished."""
    if P.is_constant() or Q.is_constant():
        return []
    Rx = elim.resultant(P, Q, 0)
    Ry = elim.resultant(P, Q, 1)
    if Rx.is_zero() or Ry.is_zero():
        raise InconsistencyError("resultant vanishes identically although P and Q are coprime")
    ys = [z for z, _ in upoly.all_roots(Rx.to_univariate(1))]
    xs = [z for z, _ in upoly.all_roots(Ry.to_univariate(0))]
    nP, nQ = NumPoly(P), NumPoly(Q)
    system = NumSystem([P, Q])
    pts: list[np.ndarray] = []
    for x in xs:
        for y in ys:
            z = np.array([x, y])
            if max(abs(nP(z)) / max(1.0, nP.scale(z)), abs(nQ(z)) / max(1.0, nQ.scale(z))) > 1e-6:
                continue
            z = newton(system, z, iters=20)
            if system.relative_residual(z) > tol.vanish:
                continue
            if not any(np.linalg.norm(z - w) < 1e-7 * max(1.0, np.linalg.norm(w)) for w in pts):
                pts.append(z)
    pts.sort(key=lambda w: tuple(np.round(np.concatenate([w.real, w.imag]), 9)))
    return pts


def check_normal_crossing(P: SparseLaurentPoly, Q: SparseLaurentPoly, *, tol: Tolerances = Tolerances()) -> Verdict:
    """P = 0 and Q = 0 smooth and transverse at every common point (n = 2 only)."""
    if P.n != 2:
        return Verdict("unchecked", detail="normal crossing is only decided for two variables")
    for g, name in ((P, "P"), (Q, "Q")):
        if not _squarefree_exact(g):
            return Verdict("refuted", detail=f"{name} has a repeated factor")
    pts = intersection_points(P, Q, tol)
    for z in pts:
        gP = np.array([NumPoly(P.partial_derivative(j))(z) for j in range(2)])
        gQ = np.array([NumPoly(Q.partial_derivative(j))(z) for j in range(2)])
        det = gP[0] * gQ[1] - gP[1] * gQ[0]
        point = tuple(complex(c) for c in z)
        if np.linalg.norm(gP) <= tol.margin:
            return Verdict("refuted", point, detail="P = 0 is singular at an intersection point")
        if np.linalg.norm(gQ) <= tol.margin:
            return Verdict("refuted", point, detail="Q = 0 is singular at an intersection point")
        if abs(det) <= tol.margin:
            return Verdict("refuted", point, detail="P = 0 and Q = 0 are tangent at an intersection point")
    return Verdict("verified", detail=f"{len(pts)} transverse intersection point(s)")


# -- condition d^u_Q >= d^u_P off the orthant --------------------------------------------------


def _intersect_halfspace(gens: Sequence[tuple[int, ...]], i: int) -> list[tuple[int, ...]]:
    """Generators of cone(gens) intersected with {u_i <= 0} (one double-description step)."""
    keep = [g for g in gens if g[i] <= 0]
    neg = [g for g in gens if g[i] < 0]
    pos = [h for h in gens if h[i] > 0]
    for g in neg:
        for h in pos:
            keep.append(la.primitive([h[i] * a - g[i] * b for a, b in zip(g, h)]))
    out = sorted({g for g in keep if any(g)})
    return out


def _star_gap(NP: LatticePolytope, NQ: LatticePolytope, u) -> Fraction:
    return NQ.support_data(u)[0] - NP.support_data(u)[0]


def check_condition_star(NP: LatticePolytope, NQ: LatticePolytope, *, order: Sequence[int] | None = None) -> Verdict:
    """Decide d^u_Q >= d^u_P for all u outside the nonnegative orthant.

    On the normal cone of a vertex v = vP + vQ of N(P) + N(Q) (these cones
    refine both normal fans) the gap equals <u, vQ - vP>, a linear form.
    The closure of the complement of the orthant is the union of the
    half-spaces {u_i <= 0}, so it suffices to test the form on generators
    of every (vertex cone) ∩ {u_i <= 0}; continuity carries the inequality
    back to the open complement.
    """
    n = NP.n
    Nf = minkowski_sum(NP, NQ)
    order = list(range(n)) if order is None else list(order)
    for face in Nf.faces:
        if face.dim != 0 or face.witness_u is None:
            continue
        u0 = face.witness_u
        vP = NP.support_data(u0)[1].vertices
        vQ = NQ.support_data(u0)[1].vertices
        if len(vP) != 1 or len(vQ) != 1:
            raise InconsistencyError(f"vertex {face.label()} does not split into vertices")
        diff = la.sub(vQ[0], vP[0])
        for i in order:
            for g in _intersect_halfspace(face.normal_generators, i):
                if la.dot(g, diff) < 0:
                    w = _push_off_orthant(NP, NQ, g, i)
                    return Verdict("fails", w, face.label(), f"d^u_Q - d^u_P = {_star_gap(NP, NQ, w)} < 0")
    return Verdict("holds", detail="checked on every vertex cone of the normal fan")


def _push_off_orthant(NP, NQ, g: tuple[int, ...], i: int) -> tuple[int, ...]:
    """A violating u with a negative coordinate, close to the violating generator g."""
    if any(a < 0 for a in g):
        return g
    for scale in itertools.count(1):
        w = tuple(scale * a - (1 if j == i else 0) for j, a in enumerate(g))
        if _star_gap(NP, NQ, w) < 0:
            return la.primitive(w)


def check_hypotheses(f: RationalFunction, faces: Sequence[ClassifiedFace], data: NewtonData | None = None, *,
                     tol: Tolerances = Tolerances(), seed: int = 0, lines: int = 8) -> HypothesisReport:
    data = data or newton_data(f)
    cop = elim.coprimality_check(f.P, f.Q, lines=lines, seed=seed)
    cop_v = Verdict(cop.status, (cop.witness.to_string(f.names or None),) if cop.witness is not None else None,
                    detail=cop.reason)
    nd, per_face = check_nondegenerate(f, faces, tol=tol, seed=seed)
    nc = check_normal_crossing(f.P, f.Q, tol=tol)
    cs = check_condition_star(data.NP, data.NQ)
    return HypothesisReport(cop_v, nd, nc, cs, per_face)
