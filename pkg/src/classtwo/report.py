"""Conversion of verdicts and certificates to JSON-ready data and plain text."""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .decide import EquivClassReport, IsoResult, Verdict
from .forms import AltForm, BinaryForm, ProjPoint, RankLocus
from .groups import ClassTwoGroup, GroupHom, LieElement
from .linalg import RatMatrix


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, RatMatrix):
        return [[str(x) for x in obj.row(i)] for i in range(obj.rows)]
    if isinstance(obj, AltForm):
        return to_jsonable(obj.matrix)
    if isinstance(obj, BinaryForm):
        return {"form": obj.compact(), "degree": obj.degree,
                "coefficients": [str(c) for c in obj.coefficients]}
    if isinstance(obj, ProjPoint):
        return str(obj)
    if isinstance(obj, GroupHom):
        return {"source": obj.source.name, "target": obj.target.name,
                "phi": to_jsonable(obj.phi), "psi": to_jsonable(obj.psi),
                "phi_injective": obj.phi_injective, "psi_injective": obj.psi_injective}
    if isinstance(obj, ClassTwoGroup):
        return {"name": obj.name, "dimV": obj.dimV, "dimW": obj.dimW,
                "brackets": [to_jsonable(c) for c in obj.coords]}
    if isinstance(obj, LieElement):
        return {"v": [str(x) for x in obj.v], "w": [str(x) for x in obj.w]}
    if isinstance(obj, RankLocus):
        return {"k": obj.k, "kind": obj.kind,
                "points": [{"point": str(p), "multiplicity": m} for p, m in obj.points],
                "locus_form": to_jsonable(obj.locus_form),
                "irrational_factors": [{"factor": f.compact(), "multiplicity": m}
                                       for f, m in obj.irrational_factors],
                "resolved": obj.resolved}
    if isinstance(obj, (Verdict, EquivClassReport)):
        return verdict_object(obj)
    if isinstance(obj, IsoResult):
        return {"outcome": obj.outcome, "hom": to_jsonable(obj.hom),
                "invariant": obj.invariant, "values": to_jsonable(list(obj.values))}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)


def verdict_object(v) -> dict:
    """The stable verdict schema: answer, certificate, trace, citations (plus context)."""
    out = {"answer": v.answer, "certificate": to_jsonable(v.certificate),
           "trace": list(v.trace), "citations": list(v.citations)}
    if isinstance(v, Verdict):
        out["question"] = v.question
    else:
        out["classification"] = v.classification
        out["k"] = v.k
        out["details"] = list(v.details)
    return out


def render_text(v) -> str:
    lines = []
    if isinstance(v, Verdict):
        lines.append(f"{v.question}: {v.answer}")
    else:
        head = v.classification + (f"({v.k})" if v.k is not None else "")
        lines.append(f"classification: {head}")
        lines += [f"  {d}" for d in v.details]
    if v.trace:
        lines.append("trace:")
        lines += [f"  {t}" for t in v.trace]
    if v.citations:
        lines.append("cites: " + ", ".join(v.citations))
    return "\n".join(lines)
