"""Analysis reports for a scenario, as a JSON-ready dict or as text tables."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .passes import (
    DimensionalMismatchAcrossTerms,
    InconsistentDimensions,
    InconsistentFactors,
    NonHomogeneousArgument,
    PassError,
    factorize_terms,
    normalize_multi,
)
from .pi import buckingham_pi, dimensional_matrix, format_sig
from .scenarios.base import Scenario
from .units import render_base_unit

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSIONS = 3
EXIT_FACTORS = 4
EXIT_NUMERIC = 5


def exit_code_for(err: Exception) -> int:
    if isinstance(err, (InconsistentDimensions, DimensionalMismatchAcrossTerms)):
        return EXIT_DIMENSIONS
    if isinstance(err, (InconsistentFactors, NonHomogeneousArgument)):
        return EXIT_FACTORS
    if isinstance(err, ArithmeticError):
        return EXIT_NUMERIC
    return EXIT_PARSE


def encode_fraction(x: Fraction) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vector(v: Sequence[Fraction]) -> list:
    return [encode_fraction(x) for x in v]


def build_report(s: Scenario, pi_only: bool = False, group: str | None = None) -> tuple[dict[str, Any], int]:
    """Run the analysis and return ``(report, exit_code)``.

    Pass failures do not raise; they are recorded under ``"error"``.
    """
    m = dimensional_matrix(s.quantities)
    report: dict[str, Any] = {
        "scenario": s.name,
        "dimension": s.dim,
        "quantities": [
            {
                "name": q.name,
                "value": q.value,
                "unit": q.unit.text,
                "base_value": q.base_value,
                "base_unit": render_base_unit(q.dimension),
                "dimension": str(q.dimension),
            }
            for q in s.quantities
        ],
        "dimension_matrix": {
            "columns": list(m.column_order),
            "rows": {sym: _vector(row) for sym, row in m.nonzero_rows()},
        },
        "pi_groups": [
            {"expression": g.expression, "exponents": _vector(g.exponents), "value": g.value}
            for g in buckingham_pi(s.quantities)
        ],
    }
    if pi_only:
        return report, EXIT_OK
    groups = [s.group(group)] if group is not None else list(s.groups)
    try:
        factorized = [factorize_terms(g.terms, s.quantities, s.mapping) for g in groups]
        normalized = normalize_multi(
            [(f, g.reference) for f, g in zip(factorized, groups)], s.quantities
        )
    except (PassError, ArithmeticError) as err:
        report["error"] = {"kind": type(err).__name__, "message": str(err)}
        return report, exit_code_for(err)
    out = []
    for g, ng in zip(groups, normalized):
        ref = ng.reference_factor
        out.append({
            "name": g.name,
            "reference": g.reference,
            "reference_factor": {
                "expression": ref.expression,
                "exponents": _vector(ref.factor),
                "value": ref.factor_value,
                "base_unit": render_base_unit(m.apply(ref.factor)),
            },
            "terms": [
                {
                    "name": name,
                    "expression": t.expression,
                    "exponents": _vector(t.coefficient_exponents),
                    "value": t.coefficient_value,
                }
                for name, t in ng.terms.items()
            ],
        })
    report["groups"] = out
    return report, EXIT_OK


def to_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _table(rows: list[list[str]], indent: str = "  ") -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return [indent + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def to_text(report: dict[str, Any]) -> str:
    lines = [f"Scenario {report['scenario']} (d = {report['dimension']})", "", "Quantities"]
    lines += _table(
        [["Symbol", "Expression", "Value (base units)"]]
        + [
            [q["name"], f"{format_sig(q['value'])} {q['unit']}", f"{format_sig(q['base_value'])} {q['base_unit']}"]
            for q in report["quantities"]
        ]
    )
    dm = report["dimension_matrix"]
    lines += ["", "Dimension matrix (non-zero rows)"]
    lines += _table([["Dim."] + dm["columns"]] + [[sym] + [str(x) for x in row] for sym, row in dm["rows"].items()])
    lines += ["", "Dimensionless groups"]
    if report["pi_groups"]:
        lines += _table(
            [["Group", "Expression", "Value"]]
            + [[f"Pi_{i}", g["expression"], format_sig(g["value"])] for i, g in enumerate(report["pi_groups"], 1)]
        )
    else:
        lines.append("  (none)")
    for g in report.get("groups", []):
        ref = g["reference_factor"]
        lines += ["", f"Group {g['name']}: reference factor from {g['reference']!r}"]
        lines += _table([["Expression", ref["expression"]], ["Value (base units)", f"{format_sig(ref['value'])} {ref['base_unit']}"]])
        lines += _table([["Term", "Factor", "Value"]] + [[t["name"], t["expression"], format_sig(t["value"])] for t in g["terms"]])
    if "error" in report:
        lines += ["", f"error: {report['error']['kind']}", report["error"]["message"]]
    return "\n".join(lines) + "\n"
