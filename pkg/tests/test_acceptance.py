"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with its runtime (run with `pytest -s` to see them live).
"""

import json
import random
import shutil
import time
from collections import Counter

import numpy as np

import fuzzyrisk as fr
from fuzzyrisk.cli import main
from fuzzyrisk.engine import FISDefinition, aggregate, defuzzify_coa
import oracles
from corpus import EXPERT_RULES_TEXT


class _Stopwatch:
    def __init__(self, number, budget, description):
        self.number = number
        self.budget = budget
        self.description = description

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None and elapsed < self.budget else "FAIL"
        print(f"criterion {self.number:2d} {status} ({elapsed:.2f}s) {self.description}")
        if exc_type is None:
            assert elapsed < self.budget, (
                f"criterion {self.number} exceeded its {self.budget}s budget: {elapsed:.2f}s"
            )
        return False


def test_criterion_1_rule_corpus(default_vars):
    with _Stopwatch(1, 1.0, "shipped rule corpus: verbatim expert rules, 25-rule completion"):
        expert = fr.parse_rulebase(EXPERT_RULES_TEXT)
        assert len(expert.rules) == 15

        shipped = fr.parse_rulebase(fr.data_path("rules/lost_devices.rules").read_text())
        assert len(shipped.rules) == 25
        assert shipped.rules[10:] == expert.rules  # the expert half, verbatim

        completed = fr.complete_rulebase(expert, default_vars)
        assert len(completed.rules) == 25
        assert {r.antecedent_key() for r in completed.rules} == {
            r.antecedent_key() for r in shipped.rules
        }
        for rule in completed.rules:
            match = [r for r in shipped.rules if r.antecedent_key() == rule.antecedent_key()]
            assert match[0].consequent == rule.consequent

        counts = Counter(r.consequent.term for r in expert.rules)
        assert counts == {"low": 3, "medium": 7, "high": 4, "veryHigh": 1}


def test_criterion_2_layer_arithmetic():
    with _Stopwatch(2, 1.0, "complement and layer-mean arithmetic"):
        assert fr.vulnerability(6.5) == 3.5

        node = fr.FactorNode(
            "MDM", "mean-node",
            (fr.FactorNode("A", "leaf-group"), fr.FactorNode("B", "leaf-group")),
        )
        score = fr.evaluate_node(node, {"A": 6.5, "B": 4.58})
        assert abs(score.security - 5.54) < 1e-12
        assert abs(score.vulnerability - 4.46) < 1e-12


def test_criterion_3_worked_inference_band(lost_devices_fis):
    with _Stopwatch(3, 1.0, "shipped FIS at (6.2, 7.97) lands in [5.5, 7.5]"):
        value, _ = fr.infer(lost_devices_fis, {"Group_1": 6.2, "Group_2": 7.97})
        assert 5.5 <= value <= 7.5


def test_criterion_4_partition_sums_to_one():
    with _Stopwatch(4, 1.0, "default 5-term partition is Ruspini on the 1001-point grid"):
        var = fr.default_variable("x")
        xs = var.universe.grid()
        total = np.zeros_like(xs)
        for _, mf in var.terms:
            total += mf.evaluate_array(xs)
        assert np.max(np.abs(total - 1.0)) < 1e-9


def test_criterion_5_centroid_against_dense_oracle():
    with _Stopwatch(5, 5.0, "50 random aggregates: 1001-pt centroid vs 100001-pt oracle"):
        rng = random.Random(20240917)
        universe = fr.Universe(0, 10, 1001)
        var = fr.default_variable("out", universe)
        peaks = oracles.uniform_peaks(0, 10, 5)
        dense = np.linspace(0, 10, 100001)

        for _ in range(50):
            strengths = [rng.random() for _ in range(5)]
            if max(strengths) < 0.1:
                strengths[rng.randrange(5)] = 0.1 + rng.random() * 0.9

            clipped = [
                fr.discretize(mf, universe).clip(s)
                for (_, mf), s in zip(var.terms, strengths)
            ]
            engine_value = defuzzify_coa(aggregate(clipped))

            ys = np.zeros_like(dense)
            for i, s in enumerate(strengths):
                a = peaks[i - 1] if i > 0 else peaks[i]
                b = peaks[i + 1] if i < 4 else peaks[i]
                ys = np.maximum(ys, np.minimum(oracles.tri_grid(a, peaks[i], b, dense), s))
            oracle_value = oracles.centroid_grid(dense, ys)

            assert abs(engine_value - oracle_value) < 1e-3


def test_criterion_6_rule_order_invariance(lost_devices_fis, default_vars):
    with _Stopwatch(6, 5.0, "100 rule permutations, bit-identical at 20 input pairs"):
        rng = random.Random(6)
        pairs = [(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(20)]
        baseline = [
            fr.infer(lost_devices_fis, {"Group_1": x, "Group_2": y})[0] for x, y in pairs
        ]
        rules = list(lost_devices_fis.rulebase.rules)
        for _ in range(100):
            rng.shuffle(rules)
            permuted = FISDefinition(
                default_vars[:2],
                default_vars[2],
                fr.RuleBase(tuple(rules), ("Group_1", "Group_2"), "LostDevices"),
            )
            outputs = [
                fr.infer(permuted, {"Group_1": x, "Group_2": y})[0] for x, y in pairs
            ]
            assert outputs == baseline


def test_criterion_7_monotone_surface(lost_devices_fis):
    # Expected to fail: min/max/centroid inference over a shoulder-bounded
    # partition ripples by ~0.07-0.12 between rule cells, and every operator
    # involved is fixed. Kept as stated rather than loosened to the ripple.
    with _Stopwatch(7, 5.0, "21x21 response surface non-decreasing along both axes"):
        rows = fr.response_surface(lost_devices_fis, 21)
        grid = np.array([out for _, _, out in rows]).reshape(21, 21)
        worst_x = float(np.min(np.diff(grid, axis=0)))
        worst_y = float(np.min(np.diff(grid, axis=1)))
        assert worst_x >= -0.05 and worst_y >= -0.05, (
            f"surface dips below tolerance: worst step {worst_x:+.4f} along the "
            f"first input and {worst_y:+.4f} along the second (tolerance -0.05)"
        )


def test_criterion_8_quadrature_convergence():
    with _Stopwatch(8, 10.0, "|output(1001) - output(10001)| < 0.01 on 100 input pairs"):
        base = fr.parse_rulebase(fr.data_path("rules/lost_devices.rules").read_text())

        def build(n):
            universe = fr.Universe(0, 10, n)
            return FISDefinition(
                [fr.default_variable(v, universe) for v in base.input_variables],
                fr.default_variable(base.output_variable, universe),
                base,
            )

        coarse, fine = build(1001), build(10001)
        rng = random.Random(8)
        for _ in range(100):
            inputs = {"Group_1": rng.uniform(0, 10), "Group_2": rng.uniform(0, 10)}
            assert abs(fr.infer(coarse, inputs)[0] - fr.infer(fine, inputs)[0]) < 0.01


def _copy_config(tmp_path):
    shutil.copy(fr.data_path("mobile_devices.json"), tmp_path / "mobile_devices.json")
    (tmp_path / "rules").mkdir()
    for name in ("lost_devices.rules", "device_controls.rules"):
        shutil.copy(fr.data_path(f"rules/{name}"), tmp_path / "rules" / name)
    shutil.copy(
        fr.data_path("questionnaire_mobile_devices.json"), tmp_path / "questionnaire.json"
    )
    shutil.copy(fr.data_path("answers_example.json"), tmp_path / "answers.json")


def test_criterion_9_end_to_end_determinism(tmp_path, questionnaire_doc):
    with _Stopwatch(9, 5.0, "assess CLI: byte-identical reruns, sane corner verdicts"):
        _copy_config(tmp_path)
        args = [
            "assess",
            str(tmp_path / "mobile_devices.json"),
            "--questionnaire",
            str(tmp_path / "questionnaire.json"),
            "--no-meta",
        ]
        assert main([*args, "--answers", str(tmp_path / "answers.json"),
                     "--out", str(tmp_path / "first.json")]) == 0
        assert main([*args, "--answers", str(tmp_path / "answers.json"),
                     "--out", str(tmp_path / "second.json")]) == 0
        assert (tmp_path / "first.json").read_bytes() == (tmp_path / "second.json").read_bytes()

        for label, check in (
            ("veryHigh", lambda v: v < 2.0),
            ("veryLow", lambda v: v > 8.0),
        ):
            answers = {q["id"]: label for q in questionnaire_doc}
            (tmp_path / f"{label}.json").write_text(json.dumps(answers))
            out = tmp_path / f"report_{label}.json"
            assert main([*args, "--answers", str(tmp_path / f"{label}.json"),
                         "--out", str(out)]) == 0
            report = fr.parse_report(out.read_text())
            assert report.nodes[0].name == "MobileDevices"
            assert check(report.nodes[0].vulnerability)


def test_criterion_10_round_trips(mobile_tree, questions, example_answers):
    with _Stopwatch(10, 5.0, "1000 random rules parse/serialize fixpoint; report JSON round-trip"):
        rng = random.Random(2024)
        keywords = {"if", "and", "then", "is", "or"}

        def ident():
            first = rng.choice("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
            rest = "".join(
                rng.choice("abcdefghijklmnopqrstuvwxyz0123456789_")
                for _ in range(rng.randrange(0, 8))
            )
            name = first + rest
            return name if name.lower() not in keywords else name + "x"

        for _ in range(1000):
            n = rng.randrange(1, 4)
            variables = []
            while len(variables) < n:
                candidate = ident()
                if candidate not in variables:
                    variables.append(candidate)
            rule = fr.Rule(
                tuple(fr.Clause(v, ident()) for v in variables),
                fr.Clause(ident(), ident()),
                rng.choice([1.0, 0.0, round(rng.random(), 3), rng.random()]),
            )
            assert fr.parse_rule(fr.serialize_rule(rule)) == rule

        scores = fr.score_leaf_groups(questions, example_answers, mobile_tree)
        report = fr.assess(mobile_tree, scores)
        emitted = fr.emit_report(report, "json")
        assert fr.parse_report(emitted) == report
        assert fr.emit_report(fr.parse_report(emitted), "json") == emitted
