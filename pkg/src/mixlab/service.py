"""HTTP front end for the experiment runner.

Thin wrapper: requests are validated, handed to the same functions the CLI
uses, and reports come back as plain JSON. Nothing here holds state, so the
service can serve many clients at once.
"""

from __future__ import annotations

from typing import Any, Dict, List

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .experiments import (ConfigError, list_scenarios, run_experiment,
                          verify_report)
from .ramsey import DEFAULT_NODE_BUDGET

app = FastAPI(
    title="mixlab",
    description="Exact multicorrelation experiments with verifiable certificates",
    version="0.1.0",
)


class ScenarioInfo(BaseModel):
    id: str
    summary: str
    defaults: Dict[str, Any]


class RunRequest(BaseModel):
    scenario: str
    params: Dict[str, Any] = Field(default_factory=dict)
    budget: int = DEFAULT_NODE_BUDGET


class RunResponse(BaseModel):
    report: Dict[str, Any]
    passed: bool


class VerifyRequest(BaseModel):
    report: Dict[str, Any]
    budget: int = DEFAULT_NODE_BUDGET


class VerifyResponse(BaseModel):
    ok: bool
    details: List[str]


@app.get("/health")
def health() -> Dict[str, str]:
    return {"status": "ok"}


@app.get("/scenarios", response_model=List[ScenarioInfo])
def scenarios() -> List[Dict[str, Any]]:
    return list_scenarios()


@app.post("/run", response_model=RunResponse)
def run(req: RunRequest) -> RunResponse:
    try:
        report = run_experiment(req.scenario, req.params, req.budget)
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return RunResponse(report=report.to_json(), passed=report.passed)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    ok, details = verify_report(req.report, req.budget)
    return VerifyResponse(ok=ok, details=details)


__all__ = ["app"]
