"""Factor trees: composing inference units layer by layer.

A tree node is one of three kinds. A leaf-group receives its crisp score
from the questionnaire layer; a fis-node runs a Mamdani unit over its
children's scores; a mean-node averages them. Scores flow upward as
security values on [0, 10]; the vulnerability complement (10 - security)
is attached to every node for reporting only, since composing complements
would double-invert.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .engine import FISDefinition, InferenceTrace, infer
from .errors import AssessmentError, ConfigError, Diagnostic, InputError, has_errors
from .fuzzy import default_variable
from .report import AssessmentReport, ReportNode, summarize_trace
from .rules import parse_rulebase, validate_rulebase

LEAF_GROUP = "leaf-group"
FIS_NODE = "fis-node"
MEAN_NODE = "mean-node"
_KINDS = (LEAF_GROUP, FIS_NODE, MEAN_NODE)

RuleSource = Callable[[str], str]


@dataclass(frozen=True)
class FactorNode:
    name: str
    kind: str
    children: tuple["FactorNode", ...] = ()
    fis: FISDefinition | None = None
    rules_path: str | None = None
    provenance: tuple[str, ...] = ()
    notes: str | None = None


@dataclass(frozen=True)
class FactorTree:
    root: FactorNode

    def nodes(self) -> list[FactorNode]:
        """All nodes in depth-first preorder, root first."""
        out: list[FactorNode] = []

        def walk(node: FactorNode) -> None:
            out.append(node)
            for child in node.children:
                walk(child)

        walk(self.root)
        return out

    def node(self, name: str) -> FactorNode:
        for node in self.nodes():
            if node.name == name:
                return node
        raise ConfigError(f"no node named {name!r} in the tree")

    def leaf_groups(self) -> list[str]:
        return [n.name for n in self.nodes() if n.kind == LEAF_GROUP]


@dataclass(frozen=True)
class NodeScore:
    name: str
    kind: str
    security: float
    vulnerability: float
    children: tuple["NodeScore", ...] = ()
    trace: InferenceTrace | None = None


def vulnerability(security: float) -> float:
    """Complement of a security score on the [0, 10] scale."""
    if not 0.0 <= security <= 10.0:
        raise InputError(f"security score must lie in [0, 10], got {security}")
    return 10.0 - security


def _build_node(
    doc: dict,
    rule_source: RuleSource,
    seen_names: dict[str, int],
    diagnostics: list[Diagnostic],
    path: str,
) -> FactorNode | None:
    if not isinstance(doc, dict):
        diagnostics.append(Diagnostic("error", path, "node must be a JSON object"))
        return None
    name = doc.get("name")
    where = f"{path}/{name}" if isinstance(name, str) else path
    if not isinstance(name, str) or not name:
        diagnostics.append(Diagnostic("error", path, "node is missing a non-empty 'name'"))
        return None
    seen_names[name] = seen_names.get(name, 0) + 1
    if seen_names[name] == 2:
        diagnostics.append(Diagnostic("error", where, f"duplicate node name {name!r}"))

    kind = doc.get("kind")
    if kind not in _KINDS:
        diagnostics.append(
            Diagnostic("error", where, f"kind must be one of {_KINDS}, got {kind!r}")
        )
        return None

    unknown_keys = set(doc) - {"name", "kind", "children", "rules", "provenance", "notes"}
    if unknown_keys:
        diagnostics.append(
            Diagnostic("warning", where, f"ignoring unknown key(s) {sorted(unknown_keys)}")
        )

    children_docs = doc.get("children", [])
    if not isinstance(children_docs, list):
        diagnostics.append(Diagnostic("error", where, "'children' must be a list"))
        children_docs = []
    children = tuple(
        built
        for child_doc in children_docs
        if (built := _build_node(child_doc, rule_source, seen_names, diagnostics, where))
        is not None
    )

    provenance = tuple(doc.get("provenance", []))
    notes = doc.get("notes")

    if kind == LEAF_GROUP:
        if children:
            diagnostics.append(
                Diagnostic("error", where, "a leaf-group cannot have children")
            )
        return FactorNode(name, kind, (), None, None, provenance, notes)

    if kind == MEAN_NODE:
        if not children:
            diagnostics.append(
                Diagnostic("error", where, "a mean-node needs at least one child")
            )
        return FactorNode(name, kind, children, None, None, provenance, notes)

    # fis-node: resolve and validate the rule file, then check arity.
    rules_path = doc.get("rules")
    if not isinstance(rules_path, str):
        diagnostics.append(Diagnostic("error", where, "a fis-node needs a 'rules' file"))
        return FactorNode(name, kind, children, None, None, provenance, notes)
    try:
        rule_text = rule_source(rules_path)
    except (OSError, KeyError) as err:
        diagnostics.append(
            Diagnostic("error", where, f"cannot read rule file {rules_path!r}: {err}")
        )
        return FactorNode(name, kind, children, None, rules_path, provenance, notes)
    try:
        rulebase = parse_rulebase(rule_text)
    except ConfigError as err:
        for d in err.diagnostics or [Diagnostic("error", rules_path, str(err))]:
            diagnostics.append(Diagnostic(d.severity, f"{where}:{rules_path}", d.message))
        return FactorNode(name, kind, children, None, rules_path, provenance, notes)

    if len(children) != len(rulebase.input_variables):
        diagnostics.append(
            Diagnostic(
                "error",
                where,
                f"fis-node has {len(children)} child(ren) but the rule base "
                f"declares {len(rulebase.input_variables)} input(s) "
                f"{list(rulebase.input_variables)}",
            )
        )
        return FactorNode(name, kind, children, None, rules_path, provenance, notes)

    try:
        fis = FISDefinition(
            inputs=[default_variable(v) for v in rulebase.input_variables],
            output=default_variable(rulebase.output_variable or name),
            rulebase=rulebase,
        )
    except ConfigError as err:
        diagnostics.append(Diagnostic("error", where, str(err)))
        for d in err.diagnostics:
            diagnostics.append(Diagnostic(d.severity, f"{where}:{rules_path}", d.message))
        return FactorNode(name, kind, children, None, rules_path, provenance, notes)

    return FactorNode(name, kind, children, fis, rules_path, provenance, notes)


def validate_hierarchy(
    doc: dict, rule_source: RuleSource
) -> tuple[FactorTree | None, list[Diagnostic]]:
    """Build a tree while collecting every finding; never raises.

    Returns (tree, diagnostics); the tree is None when errors prevent
    construction. Rule bases of fis-nodes are re-checked for warnings
    (grid coverage, duplicates) that construction alone would not surface.
    """
    diagnostics: list[Diagnostic] = []
    root = _build_node(doc, rule_source, {}, diagnostics, path="")
    if root is None or has_errors(diagnostics):
        return None, diagnostics
    tree = FactorTree(root)
    for node in tree.nodes():
        if node.fis is not None:
            findings = validate_rulebase(
                node.fis.rulebase, [*node.fis.inputs, node.fis.output]
            )
            diagnostics.extend(
                Diagnostic(d.severity, f"{node.name}: {d.where}", d.message)
                for d in findings
            )
    return tree, diagnostics


def load_hierarchy(doc: dict, rule_source: RuleSource) -> FactorTree:
    """Build and validate a FactorTree from its JSON document.

    `rule_source` maps a rule-file reference to its text; file-based configs
    resolve references relative to the config file, service requests supply
    an in-memory mapping. Every violation is collected before raising.
    """
    tree, diagnostics = validate_hierarchy(doc, rule_source)
    if tree is None:
        raise ConfigError("hierarchy failed validation", diagnostics)
    return tree


def load_hierarchy_file(path: str | Path) -> FactorTree:
    """Load a hierarchy JSON file, resolving rule files relative to it."""
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    base = path.parent

    def read_rules(ref: str) -> str:
        return (base / ref).read_text(encoding="utf-8")

    return load_hierarchy(doc, read_rules)


def evaluate_node(node: FactorNode, leaf_scores: dict[str, float]) -> NodeScore:
    """Bottom-up evaluation of a subtree from its leaf-group scores."""
    if node.kind == LEAF_GROUP:
        if node.name not in leaf_scores:
            raise AssessmentError(f"no score supplied for leaf group {node.name!r}")
        score = float(leaf_scores[node.name])
        if not 0.0 <= score <= 10.0:
            raise AssessmentError(
                f"score for leaf group {node.name!r} must lie in [0, 10], got {score}"
            )
        return NodeScore(node.name, node.kind, score, vulnerability(score))

    children = tuple(evaluate_node(child, leaf_scores) for child in node.children)

    if node.kind == MEAN_NODE:
        security = sum(c.security for c in children) / len(children)
        return NodeScore(node.name, node.kind, security, vulnerability(security), children)

    assert node.fis is not None  # guaranteed by load_hierarchy
    inputs = {
        variable.name: child.security
        for variable, child in zip(node.fis.inputs, children)
    }
    security, trace = infer(node.fis, inputs)
    return NodeScore(node.name, node.kind, security, vulnerability(security), children, trace)


def assess(
    tree: FactorTree, leaf_scores: dict[str, float], meta: dict | None = None
) -> AssessmentReport:
    """Score every node of the tree and package the result for emission."""
    root_score = evaluate_node(tree.root, leaf_scores)

    nodes: list[ReportNode] = []
    traces: dict = {}

    def walk(score: NodeScore) -> None:
        nodes.append(
            ReportNode(
                name=score.name,
                kind=score.kind,
                security=score.security,
                vulnerability=score.vulnerability,
                children=[c.name for c in score.children],
            )
        )
        if score.trace is not None:
            traces[score.name] = summarize_trace(score.trace)
        for child in score.children:
            walk(child)

    walk(root_score)
    return AssessmentReport(tree=tree.root.name, nodes=nodes, traces=traces, meta=meta)
