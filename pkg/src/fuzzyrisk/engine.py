"""Single-unit Mamdani inference: fuzzify, fire, clip, aggregate, defuzzify.

Operator choices are fixed: min for conjunction, min (clipping) for
implication, max for aggregation, and center-of-area for defuzzification.
Rule weights scale firing strengths multiplicatively. All rules are
evaluated independently, so rule order never changes the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateSetError, InputError, has_errors
from .fuzzy import (
    DiscretizedFuzzySet,
    LinguisticVariable,
    MembershipFunction,
    Universe,
    discretize,
)
from .rules import Rule, RuleBase, validate_rulebase


def fuzzify(x: float, variable: LinguisticVariable) -> dict[str, float]:
    """Per-term membership degrees of a crisp input (singleton fuzzification).

    Values outside the universe are clamped to [lo, hi]; callers that need
    to surface the clamping (inference traces) compare against the raw input.
    """
    if not math.isfinite(x):
        raise InputError(f"crisp input for {variable.name!r} must be finite, got {x}")
    x = variable.universe.clamp(x)
    return {label: mf(x) for label, mf in variable.terms}


def firing_strength(
    rule: Rule,
    crisp_inputs: dict[str, float],
    variables: list[LinguisticVariable] | tuple[LinguisticVariable, ...],
) -> float:
    """min over antecedent term degrees at the crisp inputs, times the weight."""
    by_name = {v.name: v for v in variables}
    strength = 1.0
    for clause in rule.antecedents:
        if clause.variable not in crisp_inputs:
            raise InputError(
                f"no input supplied for antecedent variable {clause.variable!r}"
            )
        degrees = fuzzify(crisp_inputs[clause.variable], by_name[clause.variable])
        strength = min(strength, degrees[clause.term])
    return strength * rule.weight


def imply(
    consequent_mf: MembershipFunction, strength: float, universe: Universe
) -> DiscretizedFuzzySet:
    """Clip the consequent term at the firing strength (min implication)."""
    return discretize(consequent_mf, universe).clip(strength)


def aggregate(clipped: list[DiscretizedFuzzySet]) -> DiscretizedFuzzySet:
    """Pointwise maximum across all clipped consequent sets."""
    if not clipped:
        raise DegenerateSetError("no consequent sets to aggregate")
    degrees = clipped[0].degrees
    for s in clipped[1:]:
        clipped[0]._check_compatible(s)
        degrees = np.maximum(degrees, s.degrees)
    return DiscretizedFuzzySet(clipped[0].universe, degrees)


def defuzzify_coa(fuzzy_set: DiscretizedFuzzySet) -> float:
    """Center of area by trapezoidal quadrature over the discretization grid."""
    if fuzzy_set.is_zero():
        raise DegenerateSetError(
            "aggregated set is identically zero; no rule produced any output"
        )
    xs = fuzzy_set.universe.grid()
    mu = fuzzy_set.degrees
    return float(np.trapezoid(xs * mu, xs) / np.trapezoid(mu, xs))


@dataclass(frozen=True)
class RuleFiring:
    """What one rule contributed to an inference."""

    index: int
    rule: Rule
    degrees: tuple[float, ...]  # one per antecedent, same order
    strength: float
    clipped: DiscretizedFuzzySet


@dataclass(frozen=True)
class InferenceTrace:
    """Every intermediate of one inference, for explanation and audit."""

    inputs: dict[str, float]
    clamped_inputs: dict[str, float]
    warnings: tuple[str, ...]
    firings: tuple[RuleFiring, ...]
    aggregated: DiscretizedFuzzySet
    output: float


class FISDefinition:
    """One Mamdani inference unit: input/output variables plus a rule base.

    Validates the rule base against the variables on construction and
    pre-discretizes every output term. Immutable afterwards; `infer` is pure
    and safe to call concurrently.
    """

    def __init__(
        self,
        inputs: list[LinguisticVariable] | tuple[LinguisticVariable, ...],
        output: LinguisticVariable,
        rulebase: RuleBase,
    ):
        self.inputs = tuple(inputs)
        self.output = output
        self.rulebase = rulebase
        if not rulebase.rules:
            raise ConfigError("a FIS needs a non-empty rule base")
        if rulebase.output_variable != output.name:
            raise ConfigError(
                f"rule base concludes on {rulebase.output_variable!r} but the "
                f"output variable is {output.name!r}"
            )
        declared = {v.name for v in self.inputs}
        if set(rulebase.input_variables) != declared:
            raise ConfigError(
                f"rule base uses inputs {sorted(rulebase.input_variables)} but the "
                f"FIS declares {sorted(declared)}"
            )
        diagnostics = validate_rulebase(rulebase, [*self.inputs, output])
        if has_errors(diagnostics):
            raise ConfigError("rule base fails validation", diagnostics)
        self._term_sets = {
            label: discretize(mf, output.universe) for label, mf in output.terms
        }

    def infer(self, crisp_inputs: dict[str, float]) -> tuple[float, InferenceTrace]:
        return infer(self, crisp_inputs)


def infer(fis: FISDefinition, crisp_inputs: dict[str, float]) -> tuple[float, InferenceTrace]:
    """Run the full pipeline and return the crisp output with its trace."""
    missing = [v.name for v in fis.inputs if v.name not in crisp_inputs]
    if missing:
        raise InputError(f"missing crisp input(s) for {missing}")

    warnings: list[str] = []
    clamped: dict[str, float] = {}
    degrees_by_variable: dict[str, dict[str, float]] = {}
    for variable in fis.inputs:
        raw = crisp_inputs[variable.name]
        if not math.isfinite(raw):
            raise InputError(f"crisp input for {variable.name!r} must be finite, got {raw}")
        value = variable.universe.clamp(raw)
        if value != raw:
            warnings.append(
                f"input {variable.name}={raw} clamped to {value} "
                f"(universe [{variable.universe.lo}, {variable.universe.hi}])"
            )
        clamped[variable.name] = value
        degrees_by_variable[variable.name] = fuzzify(value, variable)

    firings: list[RuleFiring] = []
    for index, rule in enumerate(fis.rulebase.rules, start=1):
        degrees = tuple(
            degrees_by_variable[c.variable][c.term] for c in rule.antecedents
        )
        strength = min(degrees) * rule.weight
        clipped = fis._term_sets[rule.consequent.term].clip(strength)
        firings.append(RuleFiring(index, rule, degrees, strength, clipped))

    aggregated = aggregate([f.clipped for f in firings])
    output = defuzzify_coa(aggregated)
    trace = InferenceTrace(
        inputs=dict(crisp_inputs),
        clamped_inputs=clamped,
        warnings=tuple(warnings),
        firings=tuple(firings),
        aggregated=aggregated,
        output=output,
    )
    return output, trace


def response_surface(
    fis: FISDefinition, resolution: int
) -> list[tuple[float, float, float]]:
    """Evaluate a 2-input FIS on a uniform grid, row-major over the first input."""
    if len(fis.inputs) != 2:
        raise InputError(
            f"response surface needs exactly 2 inputs, FIS has {len(fis.inputs)}"
        )
    if resolution < 2:
        raise InputError(f"resolution must be at least 2, got {resolution}")
    first, second = fis.inputs
    xs = np.linspace(first.universe.lo, first.universe.hi, resolution)
    ys = np.linspace(second.universe.lo, second.universe.hi, resolution)
    rows = []
    for x in xs:
        for y in ys:
            value, _ = infer(fis, {first.name: float(x), second.name: float(y)})
            rows.append((float(x), float(y), value))
    return rows


def surface_csv(rows: list[tuple[float, float, float]]) -> str:
    """CSV rendering of a response surface: header x,y,output, 9 significant digits."""
    lines = ["x,y,output"]
    lines.extend(f"{x:.9g},{y:.9g},{out:.9g}" for x, y, out in rows)
    return "\n".join(lines) + "\n"
