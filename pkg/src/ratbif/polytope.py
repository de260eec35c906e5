"""Exact lattice polytopes: convex hull, face lattice, normal cones, Minkowski sums.

The hull is computed in reduced coordinates: points are projected onto the
pivot coordinates of their affine hull (an injective integer projection), the
facets of the resulting full-dimensional polytope are found, and normal cones
are lifted back to R^n. When the polytope is lower dimensional its normal
cones contain the orthogonal complement of the affine hull, stored as a
+/- pair of primitive generators for each basis vector of that complement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice as la
from .poly import SparseLaurentPoly

Point = tuple[int, ...]


@dataclass(frozen=True)
class FaceRecord:
    vertex_indices: tuple[int, ...]
    vertices: tuple[Point, ...]
    dim: int
    normal_generators: tuple[tuple[int, ...], ...]
    witness_u: tuple[int, ...] | None
    is_polytope: bool = False

    def label(self) -> str:
        return "-".join("(" + ",".join(map(str, v)) + ")" for v in self.vertices)


@dataclass(frozen=True, eq=False)
class LatticePolytope:
    n: int
    vertices: tuple[Point, ...]
    faces: tuple[FaceRecord, ...]
    dim: int
    _by_vertices: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._by_vertices.update({frozenset(f.vertex_indices): f for f in self.faces})

    def face_with_vertices(self, idx: Iterable[int]) -> FaceRecord:
        return self._by_vertices[frozenset(idx)]

    @property
    def whole(self) -> FaceRecord:
        return self.face_with_vertices(range(len(self.vertices)))

    def proper_faces(self) -> list[FaceRecord]:
        return [f for f in self.faces if not f.is_polytope]

    def support_data(self, u: Sequence) -> tuple[Fraction, FaceRecord]:
        """(d^u, supporting face) for a nonzero rational vector u."""
        if len(u) != self.n:
            raise ValueError("u has the wrong dimension")
        if not any(u):
            raise ValueError("the supporting vector must be nonzero")
        vals = [la.dot(u, v) for v in self.vertices]
        d = min(vals)
        idx = [i for i, a in enumerate(vals) if a == d]
        return Fraction(d), self.face_with_vertices(idx)

    def contains(self, p: Sequence[int]) -> bool:
        # p is in the polytope iff it satisfies every facet inequality and lies on the affine hull
        return all(la.dot(u, p) >= d for u, d in self._halfspaces())

    def _halfspaces(self):
        out = []
        for f in self.faces:
            for g in f.normal_generators:
                out.append((g, min(la.dot(g, v) for v in self.vertices)))
        return out

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"


def _affine_frame(points: Sequence[Point]) -> tuple[list[list[Fraction]], list[int], list[tuple[int, ...]]]:
    base = points[0]
    diffs = [la.sub(p, base) for p in points[1:]]
    basis, pivots = la.rref(diffs) if diffs else ([], [])
    n = len(base)
    perp = la.nullspace(basis, n) if basis else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return basis, pivots, perp


def _facets_1d(pts: list[tuple]) -> list[tuple[tuple, int]]:
    lo = min(p[0] for p in pts)
    hi = max(p[0] for p in pts)
    return [((1,), lo), ((-1,), -hi)]


def _facets_2d(pts: list[tuple]) -> list[tuple[tuple, int]]:
    """Facet inequalities a.x >= b of a full-dimensional polygon (monotone chain)."""
    P = sorted(set(pts))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in P:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(P):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]  # counter-clockwise
    out = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        # inward normal of a ccw edge a->b is (-(b_y - a_y), b_x - a_x)
        nrm = la.primitive((a[1] - b[1], b[0] - a[0]))
        out.append((nrm, la.dot(nrm, a)))
    return out


def _facets_general(pts: list[tuple], r: int) -> list[tuple[tuple, int]]:
    """Exhaustive facet search over r-subsets (exact; fine at desk scale)."""
    seen = {}
    tried = set()
    for combo in itertools.combinations(range(len(pts)), r):
        base = pts[combo[0]]
        rows = [la.sub(pts[j], base) for j in combo[1:]]
        if r == 3:
            (a1, a2, a3), (b1, b2, b3) = rows
            nrm = la.primitive((a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1))
            if not any(nrm):
                continue
        else:
            ns = la.nullspace(rows, r)
            if len(ns) != 1:
                continue
            nrm = ns[0]
        b = la.dot(nrm, base)
        if (nrm, b) in tried:
            continue
        tried.add((nrm, b))
        lo = hi = False
        for p in pts:
            v = la.dot(nrm, p) - b
            lo, hi = lo or v < 0, hi or v > 0
            if lo and hi:
                break
        if not lo:
            seen[(nrm, b)] = True
        elif not hi:
            seen[(tuple(-a for a in nrm), -b)] = True
    return list(seen)


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Lattice polytope hull(points) with its full face lattice."""
    pts = sorted({tuple(int(a) for a in p) for p in points})
    if not pts:
        raise ValueError("the hull of the empty set is not a polytope")
    n = len(pts[0])
    basis, pivots, perp = _affine_frame(pts)
    r = len(pivots)
    lineality = []
    for v in perp:
        lineality.append(tuple(v))
        lineality.append(tuple(-a for a in v))

    if r == 0:
        whole = FaceRecord((0,), (pts[0],), 0, tuple(lineality), _whole_witness(perp), True)
        return LatticePolytope(n, (pts[0],), (whole,), 0)

    red = [tuple(p[c] for c in pivots) for p in pts]
    if r == 1:
        facets = _facets_1d(red)
    elif r == 2:
        facets = _facets_2d(red)
    else:
        facets = _facets_general(red, r)

    on = [frozenset(i for i, p in enumerate(red) if la.dot(a, p) == b) for a, b in facets]
    vertex_ids = []
    for i in range(len(pts)):
        containing = [s for s in on if i in s]
        if containing and frozenset.intersection(*containing) == {i}:
            vertex_ids.append(i)
    vertices = tuple(pts[i] for i in vertex_ids)
    remap = {old: new for new, old in enumerate(vertex_ids)}
    facet_sets = [frozenset(remap[i] for i in s if i in remap) for s in on]

    lifted = [_lift_normal(a, pivots, basis, n) for a, _ in facets]

    face_sets = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in face_sets:
                    new.add(c)
        face_sets |= new
        frontier = new

    faces = []
    for s in face_sets:
        idx = tuple(sorted(s))
        gens = tuple(sorted({lifted[k] for k, fs in enumerate(facet_sets) if s <= fs})) + tuple(lineality)
        pointed = [lifted[k] for k, fs in enumerate(facet_sets) if s <= fs]
        witness = la.primitive([sum(col) for col in zip(*pointed)])
        vs = tuple(vertices[i] for i in idx)
        faces.append(FaceRecord(idx, vs, _dim(vs), gens, witness))
    all_idx = tuple(range(len(vertices)))
    faces.append(FaceRecord(all_idx, vertices, r, tuple(lineality),
                            _whole_witness(perp) if r < n else None, True))
    faces.sort(key=lambda f: (f.dim, f.vertices))
    return LatticePolytope(n, vertices, tuple(faces), r)


def _whole_witness(perp: Sequence[tuple[int, ...]]) -> tuple[int, ...] | None:
    if not perp:
        return None
    v = perp[0]
    # prefer a direction outside the nonnegative orthant
    if all(a >= 0 for a in v):
        v = tuple(-a for a in v)
    return tuple(v)


def _lift_normal(a: Sequence[int], pivots: Sequence[int], basis: Sequence[Sequence[Fraction]], n: int) -> tuple:
    """Lift a reduced-coordinate normal to R^n, orthogonally projected onto the affine directions."""
    u = [Fraction(0)] * n
    for coef, c in zip(a, pivots):
        u[c] = Fraction(coef)
    if len(basis) < n:
        # project onto span(basis): solve Gram system
        gram = [[la.dot(b1, b2) for b2 in basis] for b1 in basis]
        rhs = [la.dot(b, u) for b in basis]
        coeffs = la.solve(gram, rhs)
        u = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(n)]
    return la.primitive(u)


def _dim(vs: Sequence[Point]) -> int:
    if len(vs) <= 1:
        return 0
    return la.rank([la.sub(v, vs[0]) for v in vs[1:]])


def newton_polytope(g: SparseLaurentPoly) -> LatticePolytope:
    if g.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(g.support())


def minkowski_sum(A: LatticePolytope, B: LatticePolytope) -> LatticePolytope:
    if A.n != B.n:
        raise ValueError("ambient dimensions differ")
    return convex_hull(la.add(a, b) for a in A.vertices for b in B.vertices)


def support_data(S: LatticePolytope, u: Sequence) -> tuple[Fraction, FaceRecord]:
    return S.support_data(u)


@dataclass(frozen=True)
class FaceDecomposition:
    """gamma = gammaP + gammaQ, read off from a supporting vector u of gamma."""

    gamma: FaceRecord
    gammaP: FaceRecord
    gammaQ: FaceRecord
    u: tuple[int, ...]


class DecompositionError(RuntimeError):
    pass


def relative_interior_point(face: FaceRecord) -> tuple[int, ...]:
    """A second relint vector of the normal cone, different weights from the witness."""
    gens = face.normal_generators
    acc = [0] * len(gens[0])
    for k, g in enumerate(gens):
        acc = [a + (k + 2) * b for a, b in zip(acc, g)]
    if not any(acc):
        acc = list(gens[0])
    return la.primitive(acc)


def decompose_face(gamma: FaceRecord, Nf: LatticePolytope, NP: LatticePolytope,
                   NQ: LatticePolytope) -> FaceDecomposition:
    """Faces of N(P) and N(Q) summing to the face gamma of N(f) = N(P) + N(Q)."""
    u = gamma.witness_u
    if u is None:
        raise ValueError("gamma has no supporting vector (full-dimensional polytope)")
    _, gP = NP.support_data(u)
    _, gQ = NQ.support_data(u)
    if not gamma.is_polytope:
        _, check = Nf.support_data(u)
        if check != gamma:
            raise DecompositionError(f"witness {u} does not support face {gamma.label()}")
    u2 = relative_interior_point(gamma)
    if any(u2):
        _, gP2 = NP.support_data(u2)
        _, gQ2 = NQ.support_data(u2)
        if gP2 != gP or gQ2 != gQ:
            raise DecompositionError(f"decomposition of {gamma.label()} depends on the supporting vector")
    sums = convex_hull(la.add(a, b) for a in gP.vertices for b in gQ.vertices)
    if set(sums.vertices) != set(gamma.vertices):
        raise DecompositionError(f"{gamma.label()} is not gammaP + gammaQ")
    return FaceDecomposition(gamma, gP, gQ, u)
