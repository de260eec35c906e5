"""Three-panel SVG of N(P), N(Q) and N(f) on a lattice grid, faces coloured by type."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .faces import INTERIOR, TYPE_I, TYPE_II
from .polytope import LatticePolytope

CELL = 28
PAD = 36
STYLE = """
.grid { stroke: #e4e4e4; stroke-width: 1; }
.axis { stroke: #9a9a9a; stroke-width: 1.2; }
.body { fill: #f3f1ea; stroke: none; }
.plain { stroke: #333333; stroke-width: 2; fill: none; }
.typeI { stroke: #c0392b; stroke-width: 3.5; fill: none; }
.typeII { stroke: #2e6fb7; stroke-width: 3.5; fill: none; }
.interior { stroke: #8c8c8c; stroke-width: 2; fill: none; stroke-dasharray: 5 3; }
.vtx { fill: #222222; }
.vtx.typeI { fill: #c0392b; stroke: none; }
.vtx.typeII { fill: #2e6fb7; stroke: none; }
.vtx.interior { fill: #8c8c8c; stroke: none; }
text { font-family: monospace; font-size: 11px; fill: #222222; }
.title { font-size: 14px; font-weight: bold; }
"""

_CLASS = {TYPE_I: "typeI", TYPE_II: "typeII", INTERIOR: "interior"}


def _ccw(vertices):
    """Vertices of a convex polygon in counter-clockwise order around their centroid."""
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: (math.atan2(v[1] - cy, v[0] - cx), v))


def _panel(title: str, S: LatticePolytope, ox: int, size: tuple[int, int, int, int], labels: dict | None) -> list[str]:
    xmin, ymin, xmax, ymax = size

    def px(p):
        return ox + PAD + (p[0] - xmin) * CELL, PAD + 20 + (ymax - p[1]) * CELL

    out = [f'<g id="{escape(title)}">', f'<text class="title" x="{ox + PAD}" y="{PAD}">{escape(title)}</text>']
    for gx in range(xmin, xmax + 1):
        (x0, y0), (_, y1) = px((gx, ymin)), px((gx, ymax))
        out.append(f'<line class="{"axis" if gx == 0 else "grid"}" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>')
    for gy in range(ymin, ymax + 1):
        (x0, y0), (x1, _) = px((xmin, gy)), px((xmax, gy))
        out.append(f'<line class="{"axis" if gy == 0 else "grid"}" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>')
    if S.dim == 2:
        pts = " ".join("%d,%d" % px(v) for v in _ccw(S.vertices))
        out.append(f'<polygon class="body" points="{pts}"/>')
    edges = [fc for fc in S.faces if fc.dim == 1]
    for fc in edges:
        cls = labels.get(fc.vertices, "interior") if labels is not None else "plain"
        (x0, y0), (x1, y1) = px(fc.vertices[0]), px(fc.vertices[1])
        out.append(f'<line class="{cls}" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>')
    for v in S.vertices:
        cls = "vtx " + labels.get((v,), "interior") if labels is not None else "vtx"
        x, y = px(v)
        out.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="4"/>')
        out.append(f'<text x="{x + 6}" y="{y - 6}">({v[0]},{v[1]})</text>')
    out.append("</g>")
    return out


def render_svg(report) -> str:
    """Deterministic SVG document for a two-variable report."""
    if report.f.n != 2:
        raise ValueError("SVG output needs two variables; use the JSON report instead")
    data = report.data
    labels = {g.vertices: _CLASS[g.label] for g in report.faces}
    polys = [("N(P)", data.NP, None), ("N(Q)", data.NQ, None), ("N(f)", data.Nf, labels)]
    allv = [v for _, S, _ in polys for v in S.vertices]
    size = (min(0, *(v[0] for v in allv)), min(0, *(v[1] for v in allv)),
            max(1, *(v[0] for v in allv)) + 1, max(1, *(v[1] for v in allv)) + 1)
    pw = (size[2] - size[0]) * CELL + 2 * PAD
    ph = (size[3] - size[1]) * CELL + 2 * PAD + 20
    width, height = 3 * pw, ph + 40
    body = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">', f"<style>{STYLE}</style>",
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>']
    for k, (title, S, lab) in enumerate(polys):
        body += _panel(title, S, k * pw, size, lab)
    ly = ph + 20
    legend = [("typeI", "type I face"), ("typeII", "type II face"), ("interior", "interior face")]
    for k, (cls, text) in enumerate(legend):
        x = PAD + k * 160
        body.append(f'<line class="{cls}" x1="{x}" y1="{ly}" x2="{x + 30}" y2="{ly}"/>')
        body.append(f'<text x="{x + 36}" y="{ly + 4}">{text}</text>')
    body.append("</svg>")
    return "\n".join(body) + "\n"
