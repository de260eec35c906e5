"""Run the worked examples end to end and write their JSON and SVG reports.

    python scripts/golden_examples.py --out out/golden
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from ratbif import AnalysisOptions, ProbeConfig, bifurcation_superset, emit_json, parse_rational_function, render_svg
from ratbif.report import summary_text


@dataclass(frozen=True)
class Example:
    name: str
    text: str
    note: str


EXAMPLES = (
    Example("pentagon", "(1+x^2*y^3+x^5*y^3)/(1+x^2*y^3+x^4*y)",
            "pentagon N(f); type I faces (0,0), (4,6) and the three edges through them"),
    Example("quadrilateral", "(x^2+y)/(x+y)", "true bifurcation set {1}; sharpened superset gives exactly that"),
    Example("segment", "(x+y)/(x+2*y)", "CF = {1/2, 1}, neither is a bifurcation value"),
    Example("polynomial", "x+x^2*y", "no type I faces, superset {0}"),
)


@dataclass(frozen=True)
class RunConfig:
    out: Path
    probe: bool
    seed: int


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("out/golden"))
    ap.add_argument("--probe", action="store_true", help="also sample the Milnor set")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = RunConfig(a.out, a.probe, a.seed)
    cfg.out.mkdir(parents=True, exist_ok=True)

    opts = AnalysisOptions(seed=cfg.seed, probe=ProbeConfig(seed=cfg.seed) if cfg.probe else None)
    for ex in EXAMPLES:
        f = parse_rational_function(ex.text, ["x", "y"])
        rep = bifurcation_superset(f, opts, input_text=ex.text)
        (cfg.out / f"{ex.name}.json").write_text(emit_json(rep))
        (cfg.out / f"{ex.name}.svg").write_text(render_svg(rep))
        print(f"== {ex.name}: {ex.note}")
        print(summary_text(rep))


if __name__ == "__main__":
    main()
