"""Global critical values f(Sing f) and a numerical probe of the Milnor set at infinity."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import elim, upoly
from .config import Tolerances
from .elim import discriminant_sheet  # noqa: F401  (re-exported)
from .errors import InconsistencyError
from .faces import CriticalValue, CriticalValueSet, exact_value, value_set
from .numsolve import NumPoly, NumSystem, multistart, newton
from .poly import RationalFunction, SparseLaurentPoly


def critical_system(f: RationalFunction) -> list[SparseLaurentPoly]:
    """A_j = Q dP/dz_j - P dQ/dz_j; Sing f is V(A_1..A_n) minus {Q = 0}."""
    P, Q = f.P, f.Q
    return [Q * P.partial_derivative(j) - P * Q.partial_derivative(j) for j in range(f.n)]


def _finite_points(A: SparseLaurentPoly, B: SparseLaurentPoly, tol: Tolerances) -> list[np.ndarray]:
    """Points of V(A, B) in C^2 for A, B without common factor."""
    if A.is_constant() or B.is_constant():
        return []
    Ry = elim.resultant(A, B, 0)  # polynomial in y
    Rx = elim.resultant(A, B, 1)  # polynomial in x
    if Rx.is_zero() or Ry.is_zero():
        raise InconsistencyError("resultant vanished although the critical equations are coprime")
    xs = [z for z, _ in upoly.all_roots(Rx.to_univariate(0))]
    ys = [z for z, _ in upoly.all_roots(Ry.to_univariate(1))]
    system = NumSystem([A, B])
    pts: list[np.ndarray] = []
    for x in xs:
        for y in ys:
            z = np.array([x, y], dtype=complex)
            if system.relative_residual(z) > 1e-6:
                continue
            z = newton(system, z, iters=20)
            if system.relative_residual(z) > tol.vanish:
                continue
            if not any(np.linalg.norm(z - w) < 1e-7 * max(1.0, np.linalg.norm(w)) for w in pts):
                pts.append(z)
    return pts


def _value_at(f: RationalFunction, z: np.ndarray, tol: Tolerances) -> CriticalValue | None:
    nQ = NumPoly(f.Q)
    q = nQ(z)
    if abs(q) <= tol.margin * max(1.0, nQ.scale(z)):
        return None
    v = NumPoly(f.P)(z) / q
    # snap to an exact rational when the point itself is rational
    exact = _rational_snap(z)
    if exact is not None and f.Q.evaluate_exact(exact) != 0:
        fv = f.P.evaluate_exact(exact) / f.Q.evaluate_exact(exact)
        if all(A.evaluate_exact(exact) == 0 for A in critical_system(f)):
            return exact_value(fv)
    return CriticalValue(v, None, "numeric-certified")


def _rational_snap(z: np.ndarray, max_den: int = 1000) -> list[Fraction] | None:
    if np.max(np.abs(z.imag)) > 1e-9:
        return None
    return [Fraction(float(c.real)).limit_denominator(max_den) for c in z]


def _curve_values(f: RationalFunction, G: SparseLaurentPoly, tol: Tolerances, seed: int):
    """Values of f on the curve components of Sing f (G = gcd of the critical equations).

    f is constant on each such component. Horizontal lines y = y0 come from
    the x-content of G; the rest are caught by Res_x(G, P - tQ), which vanishes
    identically in y exactly at the t whose fibre contains a component.
    """
    certified, uncertified = [], []
    rng = np.random.default_rng(seed)
    cont = elim.content_in(G, 0)          # factors of G free of x
    for y0, exact in upoly.all_roots(cont):
        xs = rng.normal(size=3) + 1j * rng.normal(size=3)
        vals = []
        for x in xs:
            z = np.array([x, y0])
            cv = _value_at(f, z, tol)
            if cv is not None:
                vals.append(cv.value)
        if vals and max(abs(v - vals[0]) for v in vals) < 1e-7 * max(1.0, abs(vals[0])):
            if exact is not None:
                Pl, Ql = f.P.specialize(1, exact), f.Q.specialize(1, exact)
                if Ql.is_zero():
                    continue
                c = Pl.leading_coefficient() / Ql.leading_coefficient() if not Pl.is_zero() else Fraction(0)
                if Pl != Ql.scale(c):
                    raise InconsistencyError(f"f is not constant on the critical line y = {exact}")
                certified.append(exact_value(c))
            else:
                certified.append(CriticalValue(vals[0]))
    rest = G.divide_exact(SparseLaurentPoly.from_univariate(cont, n=2, i=1)) if upoly.deg(cont) > 0 else G
    if rest.degree(0) <= 0:
        return certified, uncertified
    t = SparseLaurentPoly.variable(3, 2)
    F = f.P.insert_variable(2) - t * f.Q.insert_variable(2)
    R = elim.resultant(rest.insert_variable(2), F, 0)   # in (y, t)
    g: list[Fraction] = []
    for c in elim.coefficients_in(R, 1):
        if not c.is_zero():
            g = upoly.gcd(g, c.to_univariate(2))
    for t0, exact in upoly.all_roots(g):
        cv = exact_value(exact) if exact is not None else CriticalValue(t0)
        if _certify_curve_value(f, rest, t0, tol, rng):
            certified.append(cv)
        else:
            uncertified.append(CriticalValue(cv.value, cv.exact, "numeric-heuristic"))
    return certified, uncertified


def _certify_curve_value(f, G, t0: complex, tol: Tolerances, rng) -> bool:
    """Find a point of V(G) off Q = 0 where f = t0 and the critical equations vanish."""
    A = [NumPoly(a) for a in critical_system(f)]
    for _ in range(4):
        y0 = complex(rng.normal(), rng.normal())
        Gy = [complex(NumPoly(c)(np.array([0, y0]))) for c in elim.coefficients_in(G, 0)]
        if not any(Gy):
            continue
        for x0 in np.roots(Gy[::-1]):
            z = np.array([x0, y0])
            cv = _value_at(f, z, tol)
            if cv is None:
                continue
            crit = all(abs(a(z)) <= 1e-6 * max(1.0, a.scale(z)) for a in A)
            if crit and abs(cv.value - t0) <= 1e-6 * max(1.0, abs(t0)):
                return True
    return False


def global_critical_values(f: RationalFunction, *, tol: Tolerances = Tolerances(), seed: int = 0,
                           starts: int = 64) -> CriticalValueSet:
    """f(Sing f) with Sing f taken in C^n minus {Q = 0}."""
    A = critical_system(f)
    if all(a.is_zero() for a in A):
        c = f.P.leading_coefficient() / f.Q.leading_coefficient()
        return value_set([exact_value(c)], "global", True, tol.dedupe, ["f is constant"])
    if f.n != 2:
        eqs = [a for a in A if not a.is_zero()]
        vals = []
        for z in multistart(eqs, starts=starts, seed=seed, torus=False, accept=tol.vanish):
            cv = _value_at(f, z, tol)
            if cv is not None:
                vals.append(CriticalValue(cv.value, cv.exact, "numeric-heuristic" if cv.exact is None
                                          else cv.certification))
        return value_set(vals, "global", False, tol.dedupe,
                         [f"n = {f.n}: critical points found by multistart Newton; the list may be incomplete"])
    G = elim.gcd2(A[0], A[1])
    notes = []
    vals: list[CriticalValue] = []
    complete = True
    if not G.is_constant():
        Ar, Br = (a.divide_exact(G) if not a.is_zero() else a for a in A)
        certified, uncertified = _curve_values(f, G, tol, seed)
        vals += certified
        if uncertified:
            complete = False
            notes.append("uncertified curve values: " + ", ".join(f"{v.value:.6g}" for v in uncertified))
        notes.append("Sing f contains a curve; its values come from Res_x(G, P - tQ)")
    else:
        Ar, Br = A
    if not Ar.is_zero() and not Br.is_zero():
        for z in _finite_points(Ar, Br, tol):
            cv = _value_at(f, z, tol)
            if cv is not None:
                vals.append(cv)
    return value_set(vals, "global", complete, tol.dedupe, notes)


# -- Milnor set probe -------------------------------------------------------------------------


@dataclass(frozen=True)
class MilnorSample:
    z: tuple[complex, ...]
    lam: complex
    radius: float
    f_value: complex
    residual: float


@dataclass(frozen=True)
class ProbeResult:
    samples: tuple[MilnorSample, ...]
    cluster_limits: tuple[complex, ...]
    seed: int
    warnings: tuple[str, ...] = ()

    def by_radius(self) -> dict[float, list[MilnorSample]]:
        out: dict[float, list[MilnorSample]] = {}
        for s in self.samples:
            out.setdefault(s.radius, []).append(s)
        return out


class _MilnorSystem:
    """grad f = lambda z with grad the conjugated gradient, on |z| = R.

    conj(d_j f) = lambda z_j is equivalent to A_j(z) = mu conj(z_j) with
    A_j = Q^2 d_j f and mu = conj(lambda) Q^2. Unknowns: Re z, Im z, Re mu, Im mu.
    """

    def __init__(self, f: RationalFunction):
        self.f = f
        self.n = f.n
        A = critical_system(f)
        self.A = [NumPoly(a) for a in A]
        self.H = [[NumPoly(a.partial_derivative(k)) for k in range(f.n)] for a in A]
        self.P, self.Q = NumPoly(f.P), NumPoly(f.Q)

    def unpack(self, X):
        n = self.n
        return X[:n] + 1j * X[n:2 * n], X[2 * n] + 1j * X[2 * n + 1]

    def residual(self, X, R):
        z, mu = self.unpack(X)
        d = np.array([a(z) for a in self.A]) - mu * np.conj(z)
        return np.concatenate([d.real, d.imag, [(np.vdot(z, z).real - R * R) / R]])

    def jacobian(self, X, R):
        n = self.n
        z, mu = self.unpack(X)
        H = np.array([[h(z) for h in row] for row in self.H])
        J = np.zeros((2 * n + 1, 2 * n + 2))
        Cx = H - mu * np.eye(n)          # d/d(Re z): holomorphic part + derivative of -mu conj(z)
        Cy = 1j * H + 1j * mu * np.eye(n)
        Cm = -np.conj(z)
        for blk, C in ((slice(0, n), Cx), (slice(n, 2 * n), Cy)):
            J[:n, blk], J[n:2 * n, blk] = C.real, C.imag
        J[:n, 2 * n], J[n:2 * n, 2 * n] = Cm.real, Cm.imag
        J[:n, 2 * n + 1], J[n:2 * n, 2 * n + 1] = (1j * Cm).real, (1j * Cm).imag
        J[2 * n, :n], J[2 * n, n:2 * n] = 2 * z.real / R, 2 * z.imag / R
        return J

    def relative_residual(self, z, mu) -> float:
        a = np.array([g(z) for g in self.A])
        top = np.max(np.abs(a))
        if top == 0:
            return 0.0
        return float(np.max(np.abs(a - mu * np.conj(z))) / top)

    def solve(self, z0: np.ndarray, R: float, iters: int = 50):
        a = np.array([g(z0) for g in self.A])
        mu = np.vdot(np.conj(z0), a) / np.vdot(z0, z0)
        X = np.concatenate([z0.real, z0.imag, [mu.real, mu.imag]])
        r = self.residual(X, R)
        for _ in range(iters):
            nr = np.linalg.norm(r)
            if not np.isfinite(nr):
                break
            step = -np.linalg.pinv(self.jacobian(X, R)) @ r
            damp = 1.0
            while damp > 1e-6:
                Xn = X + damp * step
                rn = self.residual(Xn, R)
                if np.linalg.norm(rn) < nr:
                    break
                damp /= 2
            else:
                break
            X, r = Xn, rn
            if np.linalg.norm(damp * step) <= 1e-14 * max(1.0, np.linalg.norm(X)):
                break
        return self.unpack(X)


def _single_linkage(values: Sequence[complex], tol: float) -> list[list[complex]]:
    clusters: list[list[complex]] = []
    for v in sorted(values, key=lambda c: (c.real, c.imag)):
        hit = [c for c in clusters if any(abs(v - w) <= tol for w in c)]
        merged = [v]
        for c in hit:
            merged += c
            clusters.remove(c)
        clusters.append(merged)
    return clusters


def probe_milnor_set(f: RationalFunction, radii: Sequence[float] = (10, 30, 100, 300), starts_per_radius: int = 64,
                     seed: int = 0, *, accept: float = 1e-8, cluster_tol: float = 1e-3,
                     stability: float = 0.05) -> ProbeResult:
    """Sample M_f on spheres of growing radius and read off where f seems to converge.

    Limits are the single-linkage clusters of the f-values on the largest
    sphere that have a sample on the next smaller sphere within ``stability``;
    branches along which |f| runs off to infinity fail that test.
    """
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0 for r in radii) or sorted(radii) != radii or starts_per_radius < 1:
        raise ValueError("radii must be positive and increasing, starts_per_radius >= 1")
    system = _MilnorSystem(f)
    rng = np.random.default_rng(seed)
    samples = []
    for R in radii:
        for _ in range(starts_per_radius):
            z0 = rng.normal(size=f.n) + 1j * rng.normal(size=f.n)
            z0 *= R / np.linalg.norm(z0)
            with np.errstate(all="ignore"):
                z, mu = system.solve(z0, R)
                if not np.all(np.isfinite(z)) or abs(np.linalg.norm(z) - R) > 1e-10 * R:
                    continue
                res = system.relative_residual(z, mu)
                q = system.Q(z)
            if res >= accept or abs(q) <= 1e-12 * max(1.0, system.Q.scale(z)):
                continue
            fv = system.P(z) / q
            lam = np.conj(mu / q ** 2)
            samples.append(MilnorSample(tuple(complex(c) for c in z), complex(lam), R, complex(fv), float(res)))
    samples.sort(key=lambda s: (s.radius, s.f_value.real, s.f_value.imag))
    notes = []
    if not samples:
        notes.append("no convergent samples at any radius")
        warnings.warn(notes[0])
        return ProbeResult((), (), seed, tuple(notes))
    present = sorted({s.radius for s in samples})
    top = [s.f_value for s in samples if s.radius == present[-1]]
    prev = [s.f_value for s in samples if s.radius == present[-2]] if len(present) > 1 else None
    limits = []
    for c in _single_linkage(top, cluster_tol):
        centre = complex(np.mean(c))
        if prev is not None and min(abs(centre - w) for w in prev) > stability * max(1.0, abs(centre)):
            continue
        limits.append(centre)
    limits.sort(key=lambda c: (round(c.real, 9), round(c.imag, 9)))
    return ProbeResult(tuple(samples), tuple(limits), seed, tuple(notes))


def verify_sample(f: RationalFunction, s: MilnorSample, accept: float = 1e-8) -> bool:
    """Independent re-check from the holomorphic gradient of f itself."""
    z = np.array(s.z)
    Q = f.Q.evaluate(z)
    grad = np.array([(f.Q.evaluate(z) * f.P.partial_derivative(j).evaluate(z)
                      - f.P.evaluate(z) * f.Q.partial_derivative(j).evaluate(z)) / Q ** 2 for j in range(f.n)])
    # conj(grad_j) should equal lambda z_j
    lhs = np.conj(grad)
    rhs = s.lam * z
    ok = np.max(np.abs(lhs - rhs)) <= accept * max(np.max(np.abs(lhs)), 1e-300)
    return bool(ok and abs(np.linalg.norm(z) - s.radius) <= 1e-10 * s.radius)
