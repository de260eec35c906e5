"""Floating-point helpers: compiled polynomial evaluation and a multistart Newton solver.

Only the heuristic paths use these (face critical points with k >= 2 and the
global critical values for n >= 3); everything decidable in the plane stays exact.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .poly import SparseLaurentPoly


class NumPoly:
    """A Laurent polynomial frozen into numpy arrays for fast complex evaluation."""

    def __init__(self, g: SparseLaurentPoly):
        self.n = g.n
        items = g.items()
        self.exps = np.array([e for e, _ in items], dtype=float).reshape(len(items), g.n)
        self.coefs = np.array([complex(float(c)) for _, c in items], dtype=complex)

    def __call__(self, z: np.ndarray) -> complex:
        if not len(self.coefs):
            return 0j
        return complex(np.sum(self.coefs * np.prod(np.power(z, self.exps), axis=1)))

    def scale(self, z: np.ndarray) -> float:
        """Sum of term magnitudes: the natural yardstick for a residual at z."""
        if not len(self.coefs):
            return 0.0
        return float(np.sum(np.abs(self.coefs * np.prod(np.power(z, self.exps), axis=1))))


class NumSystem:
    def __init__(self, eqs: Sequence[SparseLaurentPoly]):
        self.eqs = [NumPoly(g) for g in eqs]
        self.jac = [[NumPoly(g.partial_derivative(j)) for j in range(g.n)] for g in eqs]
        self.n = eqs[0].n

    def residual(self, z: np.ndarray) -> np.ndarray:
        return np.array([e(z) for e in self.eqs])

    def relative_residual(self, z: np.ndarray) -> float:
        r = 0.0
        for e in self.eqs:
            r = max(r, abs(e(z)) / max(1.0, e.scale(z)))
        return r

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        return np.array([[d(z) for d in row] for row in self.jac])


def newton(system: NumSystem, z0: np.ndarray, *, iters: int = 80, tol: float = 1e-12) -> np.ndarray:
    """Damped Gauss-Newton in C^n (least-squares steps for non-square systems)."""
    z = z0.astype(complex)
    F = system.residual(z)
    norm = np.linalg.norm(F)
    for _ in range(iters):
        if not np.all(np.isfinite(F)) or norm < tol:
            break
        J = system.jacobian(z)
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        damp = 1.0
        while damp > 1e-4:
            trial = z + damp * step
            with np.errstate(all="ignore"):
                Ft = system.residual(trial)
            nt = np.linalg.norm(Ft)
            if np.isfinite(nt) and nt < norm:
                break
            damp /= 2
        else:
            break
        z, F, norm = trial, Ft, nt
        if np.linalg.norm(damp * step) <= 1e-15 * max(1.0, np.linalg.norm(z)):
            break
    return z


def multistart(eqs: Sequence[SparseLaurentPoly], *, starts: int, seed: int, accept: float = 1e-9,
               torus: bool = True, dedupe: float = 1e-6) -> list[np.ndarray]:
    """Distinct numeric solutions of eqs = 0 from random complex starts.

    With ``torus`` set, solutions with a coordinate near 0 are discarded.
    """
    system = NumSystem(eqs)
    rng = np.random.default_rng(seed)
    found: list[np.ndarray] = []
    for _ in range(starts):
        mag = np.exp(rng.uniform(-1.0, 1.0, system.n))
        z0 = mag * np.exp(2j * np.pi * rng.uniform(size=system.n))
        with np.errstate(all="ignore"):
            z = newton(system, z0)
            ok = np.all(np.isfinite(z)) and system.relative_residual(z) < accept
        if not ok:
            continue
        if torus and np.min(np.abs(z)) < 1e-8:
            continue
        if any(np.linalg.norm(z - w) < dedupe * max(1.0, np.linalg.norm(w)) for w in found):
            continue
        found.append(z)
    found.sort(key=lambda w: tuple(np.round(np.concatenate([w.real, w.imag]), 9)))
    return found
