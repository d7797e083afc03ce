"""Request and response models for the scoring service.

Configs arrive as documents rather than paths: the hierarchy JSON object
plus an in-memory map of rule-file references to their text, so the service
never touches the client's filesystem.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class HierarchyBundle(BaseModel):
    hierarchy: dict
    rule_files: dict[str, str] = Field(default_factory=dict)


class DiagnosticModel(BaseModel):
    severity: Literal["error", "warning"]
    where: str
    message: str


class ValidateRequest(HierarchyBundle):
    questionnaire: list | None = None


class ValidateResponse(BaseModel):
    ok: bool
    diagnostics: list[DiagnosticModel]


class AssessRequest(HierarchyBundle):
    questionnaire: list
    answers: dict[str, float | str]
    format: Literal["json", "text"] = "json"
    include_meta: bool = True


class ExplainRequest(HierarchyBundle):
    node: str
    inputs: dict[str, float]
    format: Literal["text", "csv"] = "text"


class SurfaceRequest(HierarchyBundle):
    node: str
    resolution: int = 21
