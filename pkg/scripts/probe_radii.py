"""Watch f along the Milnor set as the sphere radius grows.

For each radius prints the distinct f-values of the converged samples, so one
can see which branches settle (e.g. near 1 for (x^2+y)/(x+y)) and which run
off to infinity.

    python scripts/probe_radii.py --f "(x^2+y)/(x+y)" --radii 10,30,100,300,1000
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from ratbif import parse_rational_function, probe_milnor_set
from ratbif.critvals import _single_linkage


@dataclass(frozen=True)
class ProbeRun:
    expr: str
    radii: tuple[float, ...]
    starts: int
    seed: int
    show: int = 6


def fmt(z: complex) -> str:
    if abs(z) > 1e4:
        return f"|f|~{abs(z):.2e}"
    return f"{z.real:+.6f}{z.imag:+.6f}j"


def main() -> None:
    ap = argparse.ArgumentParser(description="Milnor-set probe across radii")
    ap.add_argument("--f", default="(x^2+y)/(x+y)")
    ap.add_argument("--vars", default="x,y")
    ap.add_argument("--radii", default="10,30,100,300,1000")
    ap.add_argument("--starts", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    run = ProbeRun(a.f, tuple(float(r) for r in a.radii.split(",")), a.starts, a.seed)

    f = parse_rational_function(run.expr, a.vars.split(","))
    t0 = time.perf_counter()
    res = probe_milnor_set(f, run.radii, run.starts, run.seed)
    print(f"f = {f}   ({len(res.samples)} samples in {time.perf_counter() - t0:.2f}s)")
    for R, group in sorted(res.by_radius().items()):
        clusters = _single_linkage([s.f_value for s in group], 1e-3)
        clusters.sort(key=len, reverse=True)
        shown = ", ".join(f"{fmt(c[0])} x{len(c)}" for c in clusters[:run.show])
        more = f" (+{len(clusters) - run.show} more)" if len(clusters) > run.show else ""
        print(f"R={R:>8g}: {len(group):3d} samples  {shown}{more}")
    print("limits:", ", ".join(fmt(c) for c in res.cluster_limits) or "none")


if __name__ == "__main__":
    main()
