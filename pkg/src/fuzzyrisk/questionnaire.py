"""Questionnaires, answers, and leaf-group scoring.

Questions target leaf groups of a factor tree. Answers are either numeric
weights on [0, 10] or linguistic labels; labels map to the peak of the
matching term, so the mapping tracks whatever partition is in force rather
than a hard-coded lookup table. A leaf group's score is the arithmetic mean
of the mapped weights of its answered questions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import AssessmentError, ConfigError, Diagnostic, InputError, has_errors
from .fuzzy import DEFAULT_LABELS, LinguisticVariable, default_variable
from .hierarchy import FactorTree

logger = logging.getLogger(__name__)

# question id -> linguistic label or numeric weight
AnswerSet = dict[str, "str | float"]

# Scale used to interpret answers; matches the hierarchy's score convention.
ANSWER_SCALE = default_variable("answer")


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    target: str
    anchors: dict[str, str] = field(default_factory=dict)
    standard_refs: tuple[str, ...] = ()


def load_questionnaire(doc: list, tree: FactorTree | None = None) -> list[Question]:
    """Parse and validate a questionnaire document (a JSON array).

    When a tree is provided, question targets are cross-checked against its
    leaf groups. All findings are reported together.
    """
    if not isinstance(doc, list):
        raise ConfigError(
            "questionnaire must be a JSON array",
            [Diagnostic("error", "questionnaire", f"expected a list, got {type(doc).__name__}")],
        )
    diagnostics: list[Diagnostic] = []
    questions: list[Question] = []
    seen_ids: set[str] = set()
    leaf_names = set(tree.leaf_groups()) if tree is not None else None

    for i, item in enumerate(doc):
        where = f"question[{i}]"
        if not isinstance(item, dict):
            diagnostics.append(Diagnostic("error", where, "entry must be a JSON object"))
            continue
        qid = item.get("id")
        text = item.get("text", "")
        target = item.get("target")
        if not isinstance(qid, str) or not qid:
            diagnostics.append(Diagnostic("error", where, "missing non-empty 'id'"))
            continue
        where = f"question {qid!r}"
        if qid in seen_ids:
            diagnostics.append(Diagnostic("error", where, "duplicate question id"))
            continue
        seen_ids.add(qid)
        if not isinstance(target, str) or not target:
            diagnostics.append(Diagnostic("error", where, "missing non-empty 'target'"))
            continue
        if leaf_names is not None and target not in leaf_names:
            diagnostics.append(
                Diagnostic("error", where, f"target {target!r} is not a leaf group of the tree")
            )
        anchors = item.get("anchors", {})
        if anchors and set(anchors) != set(DEFAULT_LABELS):
            diagnostics.append(
                Diagnostic(
                    "error",
                    where,
                    f"anchors must cover all of {list(DEFAULT_LABELS)}, got {sorted(anchors)}",
                )
            )
        questions.append(
            Question(
                id=qid,
                text=text,
                target=target,
                anchors=dict(anchors),
                standard_refs=tuple(item.get("standard_refs", [])),
            )
        )

    if has_errors(diagnostics):
        raise ConfigError("questionnaire failed validation", diagnostics)
    if not questions:
        logger.warning("questionnaire is empty")
    return questions


def map_answer(answer: str | float, variable: LinguisticVariable | None = None) -> float:
    """Crisp weight of one answer: numbers pass through, labels map to term peaks."""
    variable = variable or ANSWER_SCALE
    if isinstance(answer, str):
        for label, mf in variable.terms:
            if label == answer:
                return mf.prototype()
        raise InputError(
            f"unknown answer label {answer!r}; expected one of {list(variable.labels)} or a number"
        )
    value = float(answer)
    if not (variable.universe.lo <= value <= variable.universe.hi):
        raise InputError(
            f"numeric answer {value} outside [{variable.universe.lo}, {variable.universe.hi}]"
        )
    return value


def score_leaf_groups(
    questions: list[Question], answers: AnswerSet, tree: FactorTree
) -> dict[str, float]:
    """Mean mapped answer weight per leaf group; every group needs an answer."""
    known_ids = {q.id for q in questions}
    unknown = sorted(set(answers) - known_ids)
    if unknown:
        raise AssessmentError(f"answers reference unknown question id(s): {unknown}")

    weights: dict[str, list[float]] = {name: [] for name in tree.leaf_groups()}
    for question in questions:
        if question.id not in answers:
            continue
        if question.target not in weights:
            # Questionnaire validated against another tree; treat as unknown.
            raise AssessmentError(
                f"question {question.id!r} targets {question.target!r}, "
                "which is not a leaf group of this tree"
            )
        weights[question.target].append(map_answer(answers[question.id]))

    unanswered = sorted(name for name, values in weights.items() if not values)
    if unanswered:
        raise AssessmentError(f"no answered questions for leaf group(s): {unanswered}")
    return {name: sum(values) / len(values) for name, values in weights.items()}
