"""Text and JSON rendering of results with exact scalars kept as strings."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from hermrank.combinatorics import PivotReport, StructureReport
from hermrank.gallery import GalleryCase
from hermrank.normalform import AffinePairChange, BlockSwap, NormalFormReport, Restriction
from hermrank.poly import Point, PolarizedPolynomial
from hermrank.scalar import Scalar, format_scalar
from hermrank.verify import VerificationReport


def _step(st) -> dict:
    if isinstance(st, BlockSwap):
        return {"kind": "swap-blocks"}
    if isinstance(st, Restriction):
        return {"kind": "restrict", "keep": list(st.keep)}
    if isinstance(st, AffinePairChange):
        return {"kind": "affine", "A": to_jsonable(st.A), "a": to_jsonable(st.a),
                "B": to_jsonable(st.B), "b": to_jsonable(st.b)}
    raise TypeError(st)


def _normal_form(rep: NormalFormReport) -> dict:
    return {"form": rep.form, "r": rep.r, "P": rep.P.to_text(), "n": rep.P.n,
            "trail": list(rep.trail), "epsilons": [str(e) for e in rep.epsilons],
            "swapped": rep.swapped, "steps": [_step(s) for s in rep.steps]}


def _verification(rep: VerificationReport) -> dict:
    return {
        "input": {"P": rep.P.to_text(), "Q": rep.Q_text, "n": rep.n, "d": rep.d},
        "verdict": rep.verdict,
        "reason": rep.reason,
        "base_point": to_jsonable(rep.base_point),
        "rank_P": rep.rank_P,
        "rank_Pd": rep.rank_Pd,
        "expected_bound": rep.expected,
        "lower_bound": None if rep.lower_bound is None else {
            "value": rep.lower_bound, "order": rep.lower_bound_order,
            "kind": "certified lower bound from a finite corner of the coefficient matrix"},
        "effective_d": rep.effective_d,
        "exact_rank_QPd": rep.exact_rank_QPd,
        "normalization": None if rep.normalization is None else _normal_form(rep.normalization),
        "structure": [to_jsonable(s) for s in rep.structure],
        "pivots": [to_jsonable(p) for p in rep.pivots],
        "checks_passed": rep.checks_passed,
        "failure": rep.failure,
        "timings": {k: round(v, 6) for k, v in rep.timings.items()},
    }


def to_jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str, float)):
        return obj
    if isinstance(obj, Scalar):
        return format_scalar(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, PolarizedPolynomial):
        return obj.to_text()
    if isinstance(obj, Point):
        return {"p": [format_scalar(x) for x in obj.p], "q": [format_scalar(x) for x in obj.q]}
    if isinstance(obj, VerificationReport):
        return _verification(obj)
    if isinstance(obj, NormalFormReport):
        return _normal_form(obj)
    if isinstance(obj, StructureReport):
        return {"d": obj.d, "mode": obj.mode, "ok": obj.ok, "checked_N": obj.checked_N,
                "checked_P": obj.checked_P, "violations": [str(v) for v in obj.violations[:10]]}
    if isinstance(obj, PivotReport):
        return {"ok": obj.ok, "rank": obj.rank, "pivots": len(obj.pivots),
                "stage_sizes": list(obj.stage_sizes), "failure": obj.failure}
    if isinstance(obj, GalleryCase):
        return {"case": obj.case_id, "construction": obj.construction, "basis": obj.basis,
                "expected": to_jsonable(obj.expected), "observed": to_jsonable(obj.observed),
                "pass": obj.passed}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)


def _text_lines(data, indent: str = "") -> list[str]:
    lines = []
    if isinstance(data, dict):
        width = max((len(str(k)) for k in data), default=0)
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{indent}{k}:")
                lines.extend(_text_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}{str(k).ljust(width)}  {_scalar_text(v)}")
    elif isinstance(data, list):
        for i, v in enumerate(data):
            if isinstance(v, dict) or (isinstance(v, list) and not _flat_list(v)):
                lines.append(f"{indent}[{i}]")
                lines.extend(_text_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}- {_scalar_text(v)}")
    else:
        lines.append(f"{indent}{_scalar_text(data)}")
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar_text(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar_text(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def emit_report(report, fmt: str = "text") -> bytes:
    """Render one result, or a list of results (one JSON object per line)."""
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    items = report if isinstance(report, list) else [report]
    data = [to_jsonable(x) for x in items]
    if fmt == "json":
        out = "\n".join(json.dumps(d, sort_keys=False, ensure_ascii=False) for d in data)
    else:
        blocks = ["\n".join(_text_lines(d)) for d in data]
        out = "\n\n".join(blocks)
    return (out + "\n").encode("utf-8")
