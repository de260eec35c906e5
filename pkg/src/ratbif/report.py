"""Pipeline orchestration and the assembled bifurcation report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .config import AnalysisOptions
from .critvals import ProbeResult, discriminant_sheet, global_critical_values, probe_milnor_set
from .elim import coprimality_check
from .errors import InconsistencyError
from .faces import (TYPE_I, TYPE_II, ClassifiedFace, CriticalValue, CriticalValueSet, NewtonData,
                    cf_values, classify_faces, face_critical_values, face_function, newton_data)
from .nondegen import HypothesisReport, Verdict, check_hypotheses
from .poly import RationalFunction
from .polytope import LatticePolytope

CERTIFIED = "CERTIFIED_BIFURCATION"
CANDIDATE = "CANDIDATE"
ZERO_SOURCE = "theorem_constant_zero"


@dataclass(frozen=True)
class SupersetEntry:
    value: complex
    exact: Fraction | None
    label: str
    sources: tuple[str, ...]


@dataclass
class BifurcationReport:
    f: RationalFunction
    input_text: str
    data: NewtonData | None
    faces: list[ClassifiedFace]
    hypotheses: HypothesisReport
    global_cv: CriticalValueSet | None
    face_cv: list[CriticalValueSet]
    type_two_cv: list[CriticalValueSet]
    cf: CriticalValueSet | None
    superset: list[SupersetEntry]
    sharpened_superset: list[SupersetEntry] | None
    theorem_applied: str
    verdict: str
    discriminant: dict | None = None
    probe: ProbeResult | None = None
    probe_config: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 3 if self.hypotheses.refuted else 0

    def superset_values(self) -> list[complex]:
        return [e.value for e in self.superset]


def _merge(entries: list[tuple[CriticalValue, str]], tol: float) -> list[tuple[CriticalValue, set[str]]]:
    out: list[tuple[CriticalValue, set[str]]] = []
    for v, src in entries:
        for w, srcs in out:
            same = (v.exact == w.exact) if (v.exact is not None and w.exact is not None) else abs(v.value - w.value) <= tol
            if same:
                srcs.add(src)
                break
        else:
            out.append((v, {src}))
    out.sort(key=lambda t: (round(t[0].value.real, 9), round(t[0].value.imag, 9)))
    return out


def _in_values(v: CriticalValue, vals, tol: float) -> bool:
    for w in vals:
        if v.exact is not None and w.exact is not None:
            if v.exact == w.exact:
                return True
        elif abs(v.value - w.value) <= tol:
            return True
    return False


def bifurcation_superset(f: RationalFunction, options: AnalysisOptions = AnalysisOptions(),
                         input_text: str = "") -> BifurcationReport:
    """Run the full pipeline on f = P/Q.

    ``superset`` is f(Sing f) ∪ {0} ∪ the type I face values. When the
    inequality d^u_Q >= d^u_P holds off the orthant, ``sharpened_superset``
    additionally drops the constant 0 (it keeps 0 only if another source
    produces it).
    """
    tol = options.tol
    data = newton_data(f)
    cop = coprimality_check(f.P, f.Q, lines=options.random_lines, seed=options.seed)
    if cop.status == "refuted":
        names = f.names or None
        hyp = HypothesisReport(Verdict("refuted", (cop.witness.to_string(names),), detail=cop.reason),
                               Verdict("unchecked"), Verdict("unchecked"), Verdict("not-requested"))
        return BifurcationReport(f, input_text, data, [], hyp, None, [], [], None, [], None, "none", "refuted",
                                 notes=["P and Q have a common factor; cancel it and rerun"])
    faces = classify_faces(f, data)
    hyp = check_hypotheses(f, faces, data, tol=tol, seed=options.seed, lines=options.random_lines)
    notes: list[str] = []

    face_cv = []
    for g in faces:
        if g.label == TYPE_I:
            face_cv.append(face_critical_values(face_function(f, g), tol=tol, seed=options.seed,
                                                starts=options.multistart))
            if g.face.is_polytope:
                notes.append(f"the whole Newton polytope {g.face.label()} is a type I face and is included")

    type_two = []
    for g in faces:
        if g.label != TYPE_II:
            continue
        cv = face_critical_values(face_function(f, g), tol=tol, seed=options.seed, starts=options.multistart)
        if hyp.nondegenerate.status == "verified" and len(cv):
            raise InconsistencyError(
                f"type II face {g.face.label()} has critical values although f was verified non-degenerate")
        type_two.append(cv)

    gcv = global_critical_values(f, tol=tol, seed=options.seed, starts=options.multistart)
    cf = cf_values(f, faces, tol=tol)

    entries: list[tuple[CriticalValue, str]] = [(CriticalValue(0j, Fraction(0), "exact-rational"), ZERO_SOURCE)]
    entries += [(v, "global") for v in gcv]
    for cv in face_cv:
        entries += [(v, cv.provenance) for v in cv]

    verified = f.n == 2 and hyp.all_verified
    complete = gcv.complete and all(cv.complete for cv in face_cv)
    zero = CriticalValue(0j, Fraction(0), "exact-rational")

    def label(v: CriticalValue) -> str:
        outside = not _in_values(v, [zero], tol.dedupe) and not _in_values(v, cf.values, tol.dedupe)
        return CERTIFIED if (verified and complete and outside) else CANDIDATE

    superset = [SupersetEntry(v.value, v.exact, label(v), tuple(sorted(s))) for v, s in _merge(entries, tol.dedupe)]
    sharpened = None
    if hyp.condition_star.status == "holds":
        sharpened = [SupersetEntry(v.value, v.exact, label(v), tuple(sorted(s)))
                     for v, s in _merge(entries[1:], tol.dedupe)]

    if verified:
        theorem = "Thm4.1-equality"
    elif hyp.condition_star.status == "holds":
        theorem = "Thm3.3"
    else:
        theorem = "Thm1.1"
    verdict = "unconditional" if (hyp.all_verified and complete) else "conditional"
    if not hyp.all_verified:
        notes.append("some hypotheses are not verified; every value is labelled CANDIDATE")
    for cv in [gcv, cf, *face_cv, *type_two]:
        notes += list(cv.warnings)

    disc = None
    if f.n == 2:
        for var in (0, 1):
            if max(f.P.degree(var), f.Q.degree(var)) > 0:
                names = list(f.names or ("x", "y"))
                other = names[1 - var]
                sheet = discriminant_sheet(f.P, f.Q, var)
                disc = {"eliminated": names[var], "variables": [other, "t"],
                        "polynomial": sheet.to_string([other, "t"])}
                break

    probe = None
    probe_cfg = None
    if options.probe is not None:
        pc = options.probe
        probe = probe_milnor_set(f, pc.radii, pc.starts, pc.seed, accept=pc.accept, cluster_tol=pc.cluster_tol)
        probe_cfg = {"radii": list(pc.radii), "starts": pc.starts, "seed": pc.seed}
        notes += list(probe.warnings)
    return BifurcationReport(f, input_text, data, faces, hyp, gcv, face_cv, type_two, cf, superset, sharpened,
                             theorem, verdict, disc, probe, probe_cfg, notes)


# -- JSON ---------------------------------------------------------------------------------------


def _num(x: float) -> float:
    x = float(x)
    return 0.0 if x == 0 else x


def _cplx(z: complex) -> list[float]:
    return [_num(z.real), _num(z.imag)]


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _vec(v) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


def _verdict(v: Verdict) -> dict:
    out: dict[str, Any] = {"status": v.status}
    if v.witness is not None:
        if all(isinstance(a, int) for a in v.witness):
            out["witness"] = _vec(v.witness)
        elif all(isinstance(a, str) for a in v.witness):
            out["witness"] = v.witness[0]
        else:
            out["witness"] = [_cplx(complex(a)) for a in v.witness]
    if v.face:
        out["face"] = v.face
    if v.detail:
        out["detail"] = v.detail
    return out


def _value_set(cv: CriticalValueSet) -> dict:
    vals = []
    for v in cv:
        d: dict[str, Any] = {"value": _cplx(v.value), "certification": v.certification,
                             "multiplicity": v.multiplicity}
        if v.exact is not None:
            d["exact"] = _frac(v.exact)
        vals.append(d)
    return {"provenance": cv.provenance, "complete": cv.complete, "values": vals, "warnings": list(cv.warnings)}


def _polytope(S: LatticePolytope) -> dict:
    return {"vertices": [list(v) for v in S.vertices], "dim": S.dim,
            "faces": [{"vertices": [list(v) for v in fc.vertices], "dim": fc.dim} for fc in S.faces]}


def report_dict(rep: BifurcationReport) -> dict:
    f = rep.f
    names = list(f.names or ())
    d: dict[str, Any] = {
        "input": {"text": rep.input_text, "vars": names, "P": f.P.to_string(names or None),
                  "Q": f.Q.to_string(names or None)},
        "dimension": f.n,
        "verdict": rep.verdict,
        "theorem_applied": rep.theorem_applied,
        "notes": list(rep.notes),
    }
    if rep.data is not None:
        fpoly = _polytope(rep.data.Nf)
        fpoly["faces"] = [{
            "vertices": [list(v) for v in g.vertices], "dim": g.dim, "type": g.label,
            "normal_generators": [list(u) for u in g.face.normal_generators],
            "decomposition": {"P": [list(v) for v in g.decomposition.gammaP.vertices],
                              "Q": [list(v) for v in g.decomposition.gammaQ.vertices]},
            "d_values": [{"u": list(u), "dP": _frac(a), "dQ": _frac(b), "df": _frac(c)} for u, a, b, c in g.d_values],
        } for g in rep.faces]
        d["polytopes"] = {"P": _polytope(rep.data.NP), "Q": _polytope(rep.data.NQ), "f": fpoly}
    h = rep.hypotheses
    d["hypotheses"] = {"coprimality": _verdict(h.coprimality), "nondegenerate": _verdict(h.nondegenerate),
                       "normal_crossing": _verdict(h.normal_crossing), "condition_star": _verdict(h.condition_star),
                       "faces": [_verdict(v) for v in h.face_verdicts]}
    d["critical_values"] = {
        "global": _value_set(rep.global_cv) if rep.global_cv is not None else None,
        "faces": [_value_set(cv) for cv in rep.face_cv],
        "type_two_self_check": [_value_set(cv) for cv in rep.type_two_cv],
        "cf": _value_set(rep.cf) if rep.cf is not None else None,
    }

    def entries(lst):
        out = []
        for e in lst:
            item: dict[str, Any] = {"value": _cplx(e.value), "label": e.label, "sources": list(e.sources)}
            if e.exact is not None:
                item["exact"] = _frac(e.exact)
            out.append(item)
        return out

    d["superset"] = entries(rep.superset)
    d["sharpened_superset"] = entries(rep.sharpened_superset) if rep.sharpened_superset is not None else None
    if rep.discriminant is not None:
        d["discriminant_sheet"] = rep.discriminant
    if rep.probe is not None:
        d["probe"] = {**(rep.probe_config or {}),
                      "cluster_limits": [_cplx(c) for c in rep.probe.cluster_limits],
                      "samples": [{"radius": _num(s.radius), "f_value": _cplx(s.f_value),
                                   "residual": _num(s.residual)} for s in rep.probe.samples],
                      "warnings": list(rep.probe.warnings)}
    return d


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def emit_json(rep: BifurcationReport) -> str:
    return canonical_json(report_dict(rep))


def _show(z: complex) -> str:
    return f"{z.real:.10g}" if z.imag == 0 else f"{z:.10g}"


def summary_text(rep: BifurcationReport) -> str:
    h = rep.hypotheses
    lines = [f"f = {rep.f}", f"dimension: {rep.f.n}",
             f"coprimality: {h.coprimality.status}   non-degenerate: {h.nondegenerate.status}   "
             f"normal crossing: {h.normal_crossing.status}   condition (*): {h.condition_star.status}"]
    for g in rep.faces:
        lines.append(f"  {g.label:8s} {g.face.label()}")

    def fmt(e: SupersetEntry) -> str:
        v = str(e.exact) if e.exact is not None else _show(e.value)
        return f"{v} [{e.label}; {', '.join(e.sources)}]"

    lines.append("superset: {" + "; ".join(fmt(e) for e in rep.superset) + "}")
    if rep.sharpened_superset is not None:
        lines.append("sharpened superset: {" + "; ".join(fmt(e) for e in rep.sharpened_superset) + "}")
    if rep.cf is not None:
        lines.append("CF_f: {" + ", ".join(str(v.exact) if v.exact is not None else _show(v.value) for v in rep.cf) + "}")
    lines.append(f"theorem applied: {rep.theorem_applied} ({rep.verdict})")
    if rep.probe is not None:
        limits = (_show(complex(round(c.real, 6), round(c.imag, 6))) for c in rep.probe.cluster_limits)
        lines.append("probe limits: " + ", ".join(limits))
    lines += [f"note: {n}" for n in rep.notes]
    return "\n".join(lines) + "\n"
