"""Machine (JSON) and table renderings of engine results.

Machine reports follow ``docs/report.schema.json``: exact integers and
rationals are strings, positions are ASCII labels (``7``, ``omega+1``).
Decimal renderings appear only in the table format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .census import CensusReport
from .diagonal import DiagonalReport, InductionTrace
from .exactdigits import to_rational
from .numerosity import ComparisonVerdict, PairingAudit
from .translist import position_label, row_digit

SCHEMA = "diaglab-report/1"


def rational_record(r):
    r = Fraction(r)
    return {"numerator": str(r.numerator), "denominator": str(r.denominator)}


def digit_string(digits):
    return "".join(str(d) for d in digits)


def rule_record(rule):
    return {str(a): str(b) for a, b in rule.mapping}


def diagonal_record(rep: DiagonalReport, lst):
    detected = None
    if rep.detected is not None:
        detected = {"notation": str(rep.detected), **rational_record(to_rational(rep.detected))}
    return {
        "kind": "diagonal",
        "list": rep.list_name,
        "order_type": lst.order_type.replace("ω", "omega"),
        "distinctness": lst.distinctness,
        "rule": rule_record(rep.rule),
        "horizon": rep.horizon,
        "stream_prefix": digit_string(rep.stream_prefix),
        "detected": detected,
        "certification": rep.certification,
        "membership": None if rep.membership is None else position_label(rep.membership),
        "refuted_at": rep.refuted_at,
    }


def verdict_record(v):
    value = None
    if v.kind == "offset":
        value = str(v.value)
    elif v.kind == "ratio":
        value = rational_record(v.value)
    return {
        "kind": v.kind,
        "value": value,
        "evidence_range": list(v.evidence_range),
        "first_failure": v.first_failure,
    }


def induction_record(tr: InductionTrace):
    return {
        "kind": "induction",
        "list": tr.list_name,
        "rule": rule_record(tr.rule),
        "n_max": len(tr.digits),
        "diagonal_digits": digit_string(tr.digits),
        "found_at": list(tr.found),
        "verdict": verdict_record(tr.verdict),
    }


def census_record(rep: CensusReport):
    return {
        "kind": "census",
        "set": rep.set_name,
        "set_size": rep.set_size,
        "n_digits": rep.n_digits,
        "mode": rep.mode,
        "samples": rep.samples,
        "seed": rep.seed,
        "total_orderings": str(rep.total_orderings),
        "evaluated": str(rep.evaluated),
        "orderings_with_member_diagonal": str(rep.orderings_with_member_diagonal),
        "fraction": rational_record(Fraction(rep.orderings_with_member_diagonal, rep.evaluated)),
        "per_target": [{"target": t, "count": str(c)} for t, c in rep.per_target],
    }


def comparison_record(v: ComparisonVerdict):
    value = None
    if isinstance(v.value, Fraction):
        value = rational_record(v.value)
    elif v.value is not None:
        value = str(v.value)
    return {
        "kind": v.kind,
        "a": v.a_name,
        "b": v.b_name,
        "evidence": v.evidence,
        "value": value,
        "since": v.since,
        "regime": v.regime,
        "discrepancy_bound": v.discrepancy_bound,
        "exact_on": None if v.exact_on is None else {"modulus": v.exact_on[0], "residues": list(v.exact_on[1])},
        "detail": None if v.detail is None else comparison_record(v.detail),
    }


def audit_record(a: PairingAudit):
    return {
        "map": a.map_name,
        "a": a.a_name,
        "b": a.b_name,
        "n_max": a.n_max,
        "paired": a.paired,
        "unpaired_in_a": a.unpaired_in_a,
        "unpaired_in_b": a.unpaired_in_b,
        "unpaired_in_b_within_image": a.unpaired_in_b_within_image,
        "injectivity_violations": a.injectivity_violations,
        "out_of_b": a.out_of_b,
        "image_min": a.image_min,
        "image_max": a.image_max,
        "image_beyond_window": a.image_beyond_window,
        "window_bijection": a.is_window_bijection,
    }


@dataclass
class Report:
    source: str
    config: list
    results: list = field(default_factory=list)
    version: str = ""
    timestamp: str | None = None

    def to_dict(self):
        out = {
            "format": SCHEMA,
            "artifact_version": self.version,
            "source": self.source,
            "config": self.config,
            "results": [r["record"] for r in self.results],
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def machine(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=True) + "\n"

    def table(self):
        blocks = [f"# {self.source}"]
        for r in self.results:
            blocks.append(r["table"])
        return "\n\n".join(blocks) + "\n"


# -- table renderers -----------------------------------------------------


def digit_grid(lst, rows=9, cols=9):
    width = max(len(str(rows)), len(f"ω+{len(lst.tail) - 1}") if len(lst.tail) > 1 else 1)
    head = " " * (width + 4) + " ".join(str(c % 10) for c in range(1, cols + 1))
    out = [head]
    for n in range(1, rows + 1):
        digits = " ".join(str(row_digit(lst, n, m)) for m in range(1, cols + 1))
        out.append(f"{n:>{width}}  0. {digits} …")
    for k, t in enumerate(lst.tail):
        label = "ω" if k == 0 else f"ω+{k}"
        out.append(f"{label:>{width}}  0. {' '.join(str(d) for d in t.digits(cols))} …")
    return "\n".join(out)


def diagonal_table(rep: DiagonalReport, lst):
    lines = [
        f"## diagonal: {rep.list_name or 'list'} (order type {lst.order_type}, {lst.distinctness})",
        f"rule {rep.rule}, horizon {rep.horizon}",
        "",
        digit_grid(lst),
        "",
        f"diagonal digits 1..{min(40, rep.horizon)}: {digit_string(rep.stream_prefix[:40])}",
    ]
    if rep.detected is None:
        lines.append("detected: none")
    else:
        r = to_rational(rep.detected)
        lines.append(f"detected: {rep.detected} = {r} (decimal rendering {rep.detected.rendering()})")
    lines.append(f"certification: {rep.certification}")
    lines.append(f"membership: {rep.membership if rep.membership is not None else 'absent'}")
    if rep.refuted_at is not None:
        lines.append(f"pattern refuted at position {rep.refuted_at}")
    return "\n".join(lines)


def induction_table(tr: InductionTrace, show=8):
    n_max = len(tr.digits)
    lines = [f"## induction: {tr.list_name or 'list'} (n = 1..{n_max})", "", "   n  D(n)            found_at"]
    for n, partial, found in tr.entries:
        if n > show:
            break
        lines.append(f"{n:>4}  {partial.rendering(12):<14}  {found if found is not None else '-'}")
    lines.append("   …")
    v = tr.verdict
    lo, hi = v.evidence_range
    if v.kind == "offset":
        formula = f"found_at(n) = n + {v.value}" if v.value >= 0 else f"found_at(n) = n - {-v.value}"
        lines.append(f"verdict: {v}; {formula} for {lo} ≤ n ≤ {hi}")
    elif v.kind == "ratio":
        lines.append(f"verdict: {v}; found_at(n) = {v.value}·n for {lo} ≤ n ≤ {hi}")
    else:
        extra = f" (first unlocated n = {v.first_failure})" if v.first_failure else ""
        lines.append(f"verdict: no-pattern{extra}")
    return "\n".join(lines)


def census_table(rep: CensusReport):
    mode = rep.mode if rep.mode != "sampled" else f"sampled, seed {rep.seed}, {rep.samples} samples"
    frac = Fraction(rep.orderings_with_member_diagonal, rep.evaluated)
    lines = [
        f"## census: {rep.set_name} ({rep.set_size} strings of {rep.n_digits} digits; {mode})",
        f"orderings: {rep.total_orderings} (= {rep.set_size}!)",
    ]
    if rep.mode == "sampled":
        lines.append(f"sampled orderings evaluated: {rep.samples}")
    lines += [
        f"member diagonal: {rep.orderings_with_member_diagonal} of {rep.evaluated}"
        f" = {frac} (decimal rendering {float(frac):.6f})",
        "",
        "target   count",
    ]
    lines += [f"{t:<8} {c}" for t, c in rep.per_target]
    return "\n".join(lines)


def numerosity_table(verdict, audit=None):
    lines = [f"## numerosity: {verdict.a_name} vs {verdict.b_name} (N ≤ {verdict.evidence})"]
    if audit is not None:
        lines.append(
            f"pairing {audit.map_name}: {audit.paired} paired, image {audit.image_min}..{audit.image_max}, "
            f"{audit.unpaired_in_b} of B unpaired in window "
            f"({audit.unpaired_in_b_within_image} within image range), "
            f"{audit.injectivity_violations} injectivity violations, {audit.out_of_b} outside B"
        )
    lines.append(f"verdict: {verdict}")
    return "\n".join(lines)
