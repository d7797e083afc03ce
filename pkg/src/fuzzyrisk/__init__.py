"""Layered Mamdani fuzzy inference for questionnaire-driven security scoring."""

from importlib import resources
from pathlib import Path

from .engine import (
    FISDefinition,
    InferenceTrace,
    aggregate,
    defuzzify_coa,
    firing_strength,
    fuzzify,
    imply,
    infer,
    response_surface,
    surface_csv,
)
from .errors import (
    AssessmentError,
    ConfigError,
    DegenerateSetError,
    Diagnostic,
    DimensionError,
    FuzzyRiskError,
    InputError,
    RuleParseError,
)
from .fuzzy import (
    DEFAULT_LABELS,
    DiscretizedFuzzySet,
    LinguisticVariable,
    TrapezoidalMF,
    TriangularMF,
    Universe,
    default_variable,
    discretize,
    eval_mf,
    fuzzy_intersection,
    fuzzy_union,
    make_uniform_partition,
)
from .hierarchy import (
    FactorNode,
    FactorTree,
    NodeScore,
    assess,
    evaluate_node,
    load_hierarchy,
    load_hierarchy_file,
    validate_hierarchy,
    vulnerability,
)
from .questionnaire import (
    AnswerSet,
    Question,
    load_questionnaire,
    map_answer,
    score_leaf_groups,
)
from .report import (
    AssessmentReport,
    emit_report,
    emit_trace,
    parse_report,
    summarize_trace,
)
from .rules import (
    Clause,
    Rule,
    RuleBase,
    complete_rulebase,
    parse_rule,
    parse_rulebase,
    serialize_rule,
    serialize_rulebase,
    validate_rulebase,
)

__version__ = "0.1.0"


def data_path(name: str) -> Path:
    """Path to a shipped configuration file (hierarchies, rules, examples)."""
    return Path(str(resources.files("fuzzyrisk") / "data" / name))
