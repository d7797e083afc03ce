"""Textual if-then rule format: parsing, validation, serialization, completion.

Grammar (one rule per line, '#' starts a comment, blank lines ignored):

    rule   := [index "."] "If" clause {"and" clause} "then" clause "(" weight ")"
    clause := "(" ident "is" ident ")"
    weight := decimal in [0, 1]

Keywords are matched case-insensitively; the optional leading index is
cosmetic and discarded. Only conjunction is supported: "or" in a rule is
rejected outright rather than silently mis-handled.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import ConfigError, Diagnostic, RuleParseError, has_errors
from .fuzzy import LinguisticVariable

_KEYWORDS = {"if", "and", "then", "is", "or"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+\.\d+(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<dot>\.)
    """,
    re.VERBOSE,
)


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Clause:
    variable: str
    term: str

    def __post_init__(self):
        for value in (self.variable, self.term):
            if not _IDENT_RE.match(value or ""):
                raise ConfigError(f"invalid identifier {value!r} in clause")

    def __str__(self) -> str:
        return f"({self.variable} is {self.term})"


@dataclass(frozen=True)
class Rule:
    """Conjunction of antecedent clauses implying one consequent clause."""

    antecedents: tuple[Clause, ...]
    consequent: Clause
    weight: float = 1.0

    def __post_init__(self):
        if not self.antecedents:
            raise ConfigError("a rule needs at least one antecedent")
        variables = [c.variable for c in self.antecedents]
        if len(set(variables)) != len(variables):
            raise ConfigError(f"antecedent variables must be distinct, got {variables}")
        if not 0.0 <= self.weight <= 1.0:
            raise ConfigError(f"rule weight must lie in [0, 1], got {self.weight}")
        object.__setattr__(self, "antecedents", tuple(self.antecedents))

    def antecedent_key(self) -> frozenset[tuple[str, str]]:
        return frozenset((c.variable, c.term) for c in self.antecedents)


@dataclass(frozen=True)
class RuleBase:
    """An ordered rule list with the variables it implicitly declares.

    Input variables are listed in order of first appearance; the output
    variable is the (single) consequent variable, or None when empty.
    """

    rules: tuple[Rule, ...]
    input_variables: tuple[str, ...]
    output_variable: str | None


class _Token:
    __slots__ = ("kind", "text", "column")

    def __init__(self, kind: str, text: str, column: int):
        self.kind = kind
        self.text = text
        self.column = column


def _tokenize(text: str, line_no: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise RuleParseError(
                f"unexpected character {text[pos]!r}", line_no, pos + 1
            )
        kind = match.lastgroup
        if kind != "ws":
            value = match.group()
            if kind == "ident" and value.lower() in _KEYWORDS:
                kind = value.lower()
            tokens.append(_Token(kind, value, pos + 1))
        pos = match.end()
    tokens.append(_Token("eol", "", len(text) + 1))
    return tokens


class _RuleParser:
    def __init__(self, text: str, line_no: int):
        self.line_no = line_no
        self.tokens = _tokenize(text, line_no)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, expected: str) -> RuleParseError:
        token = self.peek()
        found = repr(token.text) if token.kind != "eol" else "end of line"
        return RuleParseError(
            f"found {found}", self.line_no, token.column, expected=expected
        )

    def expect(self, kind: str, expected: str) -> _Token:
        if self.peek().kind != kind:
            raise self.fail(expected)
        return self.advance()

    def parse_clause(self) -> Clause:
        self.expect("lparen", "'('")
        variable = self.expect("ident", "a variable name").text
        self.expect("is", "'is'")
        term = self.expect("ident", "a term label").text
        self.expect("rparen", "')'")
        return Clause(variable, term)

    def parse_rule(self) -> Rule:
        # Optional numbering as printed in rule listings: "<int>."
        if self.peek().kind == "number" and self.tokens[self.pos + 1].kind == "dot":
            self.advance()
            self.advance()
        self.expect("if", "'If'")
        antecedents = [self.parse_clause()]
        while self.peek().kind == "and":
            self.advance()
            antecedents.append(self.parse_clause())
        if self.peek().kind == "or":
            raise RuleParseError(
                "disjunctive antecedents ('or') are not supported",
                self.line_no,
                self.peek().column,
            )
        self.expect("then", "'then'")
        consequent = self.parse_clause()
        self.expect("lparen", "'(' opening the rule weight")
        weight_token = self.expect("number", "a decimal weight")
        weight = float(weight_token.text)
        if not 0.0 <= weight <= 1.0:
            raise RuleParseError(
                f"weight {weight_token.text} outside [0, 1]",
                self.line_no,
                weight_token.column,
            )
        self.expect("rparen", "')'")
        if self.peek().kind != "eol":
            raise self.fail("end of line")
        duplicates = {c.variable for c in antecedents if sum(a.variable == c.variable for a in antecedents) > 1}
        if duplicates:
            raise RuleParseError(
                f"variable(s) {sorted(duplicates)} repeated in antecedents",
                self.line_no,
                1,
            )
        return Rule(tuple(antecedents), consequent, weight)


def _strip_comment(line: str) -> str:
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


def parse_rule(line: str, line_no: int = 1) -> Rule:
    """Parse a single rule line; raises RuleParseError with position info."""
    return _RuleParser(_strip_comment(line), line_no).parse_rule()


def parse_rulebase(text: str) -> RuleBase:
    """Parse a rule file into an ordered RuleBase.

    Collects every problem before failing so a bad file reports all of its
    diagnostics at once instead of one per run.
    """
    rules: list[Rule] = []
    diagnostics: list[Diagnostic] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        try:
            rules.append(parse_rule(line, line_no))
        except RuleParseError as err:
            diagnostics.append(Diagnostic("error", f"line {line_no}", str(err)))

    output_variable = None
    for i, rule in enumerate(rules, start=1):
        if output_variable is None:
            output_variable = rule.consequent.variable
        elif rule.consequent.variable != output_variable:
            diagnostics.append(
                Diagnostic(
                    "error",
                    f"rule {i}",
                    f"consequent variable {rule.consequent.variable!r} differs from "
                    f"{output_variable!r} declared by earlier rules",
                )
            )

    seen: dict[frozenset, tuple[int, Rule]] = {}
    for i, rule in enumerate(rules, start=1):
        key = rule.antecedent_key()
        if key in seen:
            first_index, first = seen[key]
            if first.consequent != rule.consequent:
                diagnostics.append(
                    Diagnostic(
                        "error",
                        f"rule {i}",
                        f"antecedents duplicate rule {first_index} but conclude "
                        f"{rule.consequent.term!r} instead of {first.consequent.term!r}",
                    )
                )
        else:
            seen[key] = (i, rule)

    if has_errors(diagnostics):
        raise ConfigError(
            f"rule base has {sum(d.severity == 'error' for d in diagnostics)} error(s)",
            diagnostics,
        )

    input_variables: list[str] = []
    for rule in rules:
        for clause in rule.antecedents:
            if clause.variable not in input_variables:
                input_variables.append(clause.variable)
    return RuleBase(tuple(rules), tuple(input_variables), output_variable)


def _format_weight(weight: float) -> str:
    if weight == int(weight):
        return str(int(weight))
    return repr(weight)


def serialize_rule(rule: Rule) -> str:
    """Canonical single-line form; parse(serialize(r)) == r."""
    antecedents = " and ".join(str(c) for c in rule.antecedents)
    return f"If {antecedents} then {rule.consequent} ({_format_weight(rule.weight)})"


def serialize_rulebase(rulebase: RuleBase) -> str:
    return "\n".join(serialize_rule(r) for r in rulebase.rules) + "\n"


def _variable_map(variables: list[LinguisticVariable] | tuple[LinguisticVariable, ...]) -> dict[str, LinguisticVariable]:
    return {v.name: v for v in variables}


def complete_rulebase(
    partial: RuleBase, variables: list[LinguisticVariable]
) -> RuleBase:
    """Fill every uncovered antecedent combination with a synthesized rule.

    The synthesized consequent takes the term whose index is the floor of
    the mean of the antecedent term indices, at weight 1. Rules already in
    the base are kept verbatim and never overwritten, so hand-tuned entries
    always win over synthesis. Idempotent.
    """
    by_name = _variable_map(variables)
    if partial.output_variable is None:
        raise ConfigError("cannot complete a rule base with no output variable")
    missing = [n for n in (*partial.input_variables, partial.output_variable) if n not in by_name]
    if missing:
        raise ConfigError(f"no linguistic variable declared for {missing}")

    diagnostics = validate_rulebase(partial, variables)
    if has_errors(diagnostics):
        raise ConfigError("cannot complete an invalid rule base", diagnostics)

    inputs = [by_name[n] for n in partial.input_variables]
    output = by_name[partial.output_variable]
    covered = {r.antecedent_key() for r in partial.rules}

    synthesized: list[Rule] = []
    for combo in itertools.product(*(range(len(v.terms)) for v in inputs)):
        antecedents = tuple(
            Clause(var.name, var.labels[idx]) for var, idx in zip(inputs, combo)
        )
        key = frozenset((c.variable, c.term) for c in antecedents)
        if key in covered:
            continue
        consequent_index = int(sum(combo) // len(combo))
        synthesized.append(
            Rule(antecedents, Clause(output.name, output.labels[consequent_index]), 1.0)
        )
    return RuleBase(
        partial.rules + tuple(synthesized),
        partial.input_variables,
        partial.output_variable,
    )


def validate_rulebase(
    rulebase: RuleBase, variables: list[LinguisticVariable] | tuple[LinguisticVariable, ...]
) -> list[Diagnostic]:
    """Check a rule base against declared variables; diagnostics are data.

    Errors: unknown variables or terms, conflicting duplicate antecedents.
    Warnings: an empty base, exact duplicate rules, and incomplete coverage
    of the antecedent grid (listing each uncovered combination).
    """
    diagnostics: list[Diagnostic] = []
    by_name = _variable_map(variables)

    if not rulebase.rules:
        diagnostics.append(Diagnostic("warning", "rulebase", "rule base is empty"))
        return diagnostics

    def check_clause(clause: Clause, where: str) -> None:
        var = by_name.get(clause.variable)
        if var is None:
            diagnostics.append(
                Diagnostic("error", where, f"unknown variable {clause.variable!r}")
            )
        elif clause.term not in var.labels:
            diagnostics.append(
                Diagnostic(
                    "error",
                    where,
                    f"variable {clause.variable!r} has no term {clause.term!r}",
                )
            )

    for i, rule in enumerate(rulebase.rules, start=1):
        for clause in rule.antecedents:
            check_clause(clause, f"rule {i}")
        check_clause(rule.consequent, f"rule {i}")

    seen: dict[frozenset, tuple[int, Rule]] = {}
    for i, rule in enumerate(rulebase.rules, start=1):
        key = rule.antecedent_key()
        if key in seen:
            first_index, first = seen[key]
            if first.consequent == rule.consequent:
                diagnostics.append(
                    Diagnostic("warning", f"rule {i}", f"exact duplicate of rule {first_index}")
                )
            else:
                diagnostics.append(
                    Diagnostic(
                        "error",
                        f"rule {i}",
                        f"antecedents duplicate rule {first_index} but conclude "
                        f"{rule.consequent.term!r} instead of {first.consequent.term!r}",
                    )
                )
        else:
            seen[key] = (i, rule)

    if has_errors(diagnostics):
        return diagnostics

    # Coverage of the full antecedent grid (warning only): a FIS over an
    # uncovered region can aggregate to the empty set at run time.
    inputs = [by_name[n] for n in rulebase.input_variables if n in by_name]
    if inputs and all(n in by_name for n in rulebase.input_variables):
        covered = {r.antecedent_key() for r in rulebase.rules}
        uncovered = []
        for combo in itertools.product(*(range(len(v.terms)) for v in inputs)):
            key = frozenset(
                (var.name, var.labels[idx]) for var, idx in zip(inputs, combo)
            )
            if key not in covered:
                uncovered.append(
                    "(" + ", ".join(var.labels[idx] for var, idx in zip(inputs, combo)) + ")"
                )
        if uncovered:
            diagnostics.append(
                Diagnostic(
                    "warning",
                    "rulebase",
                    f"{len(uncovered)} antecedent combination(s) uncovered: "
                    + "; ".join(uncovered),
                )
            )
    return diagnostics
