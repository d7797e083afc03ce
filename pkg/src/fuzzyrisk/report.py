"""Report and trace documents: stable JSON plus human-oriented text.

The JSON forms are the machine contract and round-trip structurally;
the text forms are for reading and may change.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .engine import InferenceTrace
from .errors import ConfigError
from .rules import serialize_rule


@dataclass
class TraceRow:
    index: int
    antecedents: list[list[str]]  # [variable, term] pairs
    degrees: list[float]
    strength: float
    consequent: str
    rule_text: str


@dataclass
class TraceSummary:
    """Serializable view of one inference: rule firings plus the centroid."""

    inputs: dict[str, float]
    warnings: list[str]
    rows: list[TraceRow]
    output: float


@dataclass
class ReportNode:
    name: str
    kind: str
    security: float
    vulnerability: float
    children: list[str] = field(default_factory=list)


@dataclass
class AssessmentReport:
    """Per-node scores in depth-first preorder plus per-FIS traces."""

    tree: str
    nodes: list[ReportNode]
    traces: dict[str, TraceSummary]
    meta: dict | None = None


def summarize_trace(trace: InferenceTrace) -> TraceSummary:
    rows = [
        TraceRow(
            index=f.index,
            antecedents=[[c.variable, c.term] for c in f.rule.antecedents],
            degrees=list(f.degrees),
            strength=f.strength,
            consequent=f.rule.consequent.term,
            rule_text=serialize_rule(f.rule),
        )
        for f in trace.firings
    ]
    return TraceSummary(
        inputs=dict(trace.inputs),
        warnings=list(trace.warnings),
        rows=rows,
        output=trace.output,
    )


def _trace_as_dict(summary: TraceSummary) -> dict:
    return {
        "inputs": summary.inputs,
        "warnings": summary.warnings,
        "rules": [
            {
                "index": r.index,
                "antecedents": r.antecedents,
                "degrees": r.degrees,
                "strength": r.strength,
                "consequent": r.consequent,
                "rule": r.rule_text,
            }
            for r in summary.rows
        ],
        "output": summary.output,
    }


def _trace_from_dict(doc: dict) -> TraceSummary:
    return TraceSummary(
        inputs=doc["inputs"],
        warnings=doc["warnings"],
        rows=[
            TraceRow(
                index=r["index"],
                antecedents=r["antecedents"],
                degrees=r["degrees"],
                strength=r["strength"],
                consequent=r["consequent"],
                rule_text=r["rule"],
            )
            for r in doc["rules"]
        ],
        output=doc["output"],
    )


def report_as_dict(report: AssessmentReport) -> dict:
    doc = {
        "tree": report.tree,
        "nodes": [
            {
                "name": n.name,
                "kind": n.kind,
                "security": n.security,
                "vulnerability": n.vulnerability,
                "children": n.children,
            }
            for n in report.nodes
        ],
        "traces": {name: _trace_as_dict(t) for name, t in report.traces.items()},
    }
    if report.meta is not None:
        doc["meta"] = report.meta
    return doc


def _render_text(report: AssessmentReport) -> str:
    by_name = {n.name: n for n in report.nodes}
    if report.tree not in by_name:
        raise ConfigError(f"report has no node entry for its root {report.tree!r}")
    lines: list[str] = []

    def walk(name: str, depth: int) -> None:
        node = by_name[name]
        lines.append(
            "  " * depth
            + f"{node.name}: security {node.security:g}, vulnerability {node.vulnerability:g}"
        )
        for child in node.children:
            walk(child, depth + 1)

    walk(report.tree, 0)
    return "\n".join(lines) + "\n"


def emit_report(report: AssessmentReport, format: str = "json") -> str:
    """Render a report; 'json' is the stable contract, 'text' is for humans."""
    if format == "json":
        return json.dumps(report_as_dict(report), indent=2) + "\n"
    if format == "text":
        return _render_text(report)
    raise ConfigError(f"unknown report format {format!r} (expected 'json' or 'text')")


def parse_report(text: str) -> AssessmentReport:
    """Inverse of emit_report(..., 'json'): structural round-trip."""
    doc = json.loads(text)
    return AssessmentReport(
        tree=doc["tree"],
        nodes=[
            ReportNode(
                name=n["name"],
                kind=n["kind"],
                security=n["security"],
                vulnerability=n["vulnerability"],
                children=n["children"],
            )
            for n in doc["nodes"]
        ],
        traces={name: _trace_from_dict(t) for name, t in doc.get("traces", {}).items()},
        meta=doc.get("meta"),
    )


def emit_trace(trace: InferenceTrace | TraceSummary, format: str = "text") -> str:
    """Render one inference: a row per rule, footer with the centroid."""
    summary = summarize_trace(trace) if isinstance(trace, InferenceTrace) else trace
    if format == "text":
        lines = [
            "inputs: " + ", ".join(f"{k}={v:g}" for k, v in summary.inputs.items())
        ]
        lines.extend(f"warning: {w}" for w in summary.warnings)
        for row in summary.rows:
            degrees = ", ".join(f"{d:g}" for d in row.degrees)
            lines.append(
                f"{row.index:3d}. {row.rule_text}  |  degrees {degrees}  "
                f"|  strength {row.strength:g}"
            )
        lines.append(f"centroid: {summary.output:g}")
        return "\n".join(lines) + "\n"
    if format == "csv":
        lines = ["rule_index,antecedents,degrees,strength,consequent"]
        for row in summary.rows:
            antecedents = "; ".join(f"{v} is {t}" for v, t in row.antecedents)
            degrees = ";".join(str(d) for d in row.degrees)
            lines.append(
                f"{row.index},{antecedents},{degrees},{row.strength},{row.consequent}"
            )
        lines.append(f"centroid,,,,{summary.output}")
        return "\n".join(lines) + "\n"
    raise ConfigError(f"unknown trace format {format!r} (expected 'text' or 'csv')")
