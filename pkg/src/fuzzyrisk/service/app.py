"""HTTP front end: every endpoint is a thin shell over the library.

Domain failures surface as 422 responses carrying the full diagnostics
list; rendered documents (reports, traces, surfaces) are returned exactly
as the library emits them so clients get byte-stable output.
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .. import __version__
from ..engine import infer, response_surface, surface_csv
from ..errors import Diagnostic, FuzzyRiskError, InputError, has_errors
from ..hierarchy import FIS_NODE, FactorTree, assess, load_hierarchy, validate_hierarchy
from ..questionnaire import load_questionnaire, score_leaf_groups
from ..report import emit_report, emit_trace
from .schemas import (
    AssessRequest,
    DiagnosticModel,
    ExplainRequest,
    SurfaceRequest,
    ValidateRequest,
    ValidateResponse,
)

app = FastAPI(title="fuzzyrisk", version=__version__)


@app.exception_handler(FuzzyRiskError)
async def _domain_error(request: Request, exc: FuzzyRiskError) -> JSONResponse:
    diagnostics = [d.as_dict() for d in getattr(exc, "diagnostics", [])]
    return JSONResponse(
        status_code=422,
        content={"detail": {"message": str(exc), "diagnostics": diagnostics}},
    )


def _load_tree(hierarchy: dict, rule_files: dict[str, str]) -> FactorTree:
    return load_hierarchy(hierarchy, rule_files.__getitem__)


def _require_fis(tree: FactorTree, name: str):
    node = tree.node(name)
    if node.kind != FIS_NODE or node.fis is None:
        raise InputError(
            f"node {name!r} is a {node.kind}; only fis-nodes can be inspected this way"
        )
    return node


def _sha256(doc) -> str:
    return hashlib.sha256(
        json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    ).hexdigest()


@app.get("/health")
async def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/validate", response_model=ValidateResponse)
async def validate(req: ValidateRequest) -> ValidateResponse:
    tree, diagnostics = validate_hierarchy(req.hierarchy, req.rule_files.__getitem__)
    if tree is not None and req.questionnaire is not None:
        try:
            load_questionnaire(req.questionnaire, tree)
        except FuzzyRiskError as err:
            diagnostics.extend(
                getattr(err, "diagnostics", None)
                or [Diagnostic("error", "questionnaire", str(err))]
            )
    return ValidateResponse(
        ok=not has_errors(diagnostics),
        diagnostics=[DiagnosticModel(**d.as_dict()) for d in diagnostics],
    )


@app.post("/assess")
async def assess_endpoint(req: AssessRequest) -> Response:
    tree = _load_tree(req.hierarchy, req.rule_files)
    questions = load_questionnaire(req.questionnaire, tree)
    scores = score_leaf_groups(questions, req.answers, tree)
    meta = None
    if req.include_meta:
        meta = {
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "hierarchy_sha256": _sha256(
                {"hierarchy": req.hierarchy, "rule_files": req.rule_files}
            ),
            "questionnaire_sha256": _sha256(req.questionnaire),
            "answers_sha256": _sha256(req.answers),
        }
    report = assess(tree, scores, meta=meta)
    document = emit_report(report, req.format)
    media = "application/json" if req.format == "json" else "text/plain"
    return Response(content=document, media_type=media)


@app.post("/explain")
async def explain(req: ExplainRequest) -> Response:
    tree = _load_tree(req.hierarchy, req.rule_files)
    node = _require_fis(tree, req.node)
    declared = {v.name for v in node.fis.inputs}
    unknown = sorted(set(req.inputs) - declared)
    if unknown:
        raise InputError(
            f"unknown input variable(s) {unknown}; node {req.node!r} takes {sorted(declared)}"
        )
    _, trace = infer(node.fis, req.inputs)
    document = emit_trace(trace, req.format)
    media = "text/csv" if req.format == "csv" else "text/plain"
    return Response(content=document, media_type=media)


@app.post("/surface")
async def surface(req: SurfaceRequest) -> Response:
    tree = _load_tree(req.hierarchy, req.rule_files)
    node = _require_fis(tree, req.node)
    rows = response_surface(node.fis, req.resolution)
    return Response(content=surface_csv(rows), media_type="text/csv")
