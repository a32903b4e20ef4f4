"""
FastAPI Server for Monova
HTTP front end over the workbench operations; every endpoint returns a Verdict
"""

import os
import sys
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

# Add backend directory to path for the flat module imports
backend_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, backend_dir)

import workbench
from local_monitoring import get_daily_report, logger, metrics_collector
from monova_config import get_server_address
from variety_oracles import VerdictStatus
from verdicts import Verdict

app = FastAPI(title="Monova API", version="1.0.0")

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Pydantic models for request validation
class CheckRequest(BaseModel):
    variety: str
    identity: str


class MonoidRequest(BaseModel):
    preset: str
    action: str = "build"  # "build", "table", "idempotents" or "check"
    identity: Optional[str] = None


class FamilyRequest(BaseModel):
    name: str
    n: Optional[int] = None
    pi: Optional[List[int]] = None
    tau: Optional[List[int]] = None
    word: Optional[str] = None


class SweepRequest(BaseModel):
    first: str
    second: str
    max_len: int = Field(default=6, gt=0)
    letters: Optional[str] = None


class DeriveRequest(BaseModel):
    identity: str
    basis: Optional[str] = None  # identity list, one "u ~ v" per line
    basis_name: Optional[str] = None
    within: List[str] = []
    max_word_len: Optional[int] = None
    max_sub_image_len: Optional[int] = None
    max_steps: Optional[int] = None
    ambient_len: Optional[int] = None
    nonempty: bool = False


class MeetRequest(BaseModel):
    first: str
    second: str
    identity: str
    basis_name: Optional[str] = None
    max_word_len: Optional[int] = None
    max_steps: Optional[int] = None
    ambient_len: Optional[int] = None


class StabilityRequest(BaseModel):
    variety: str
    class_spec: str
    max_len: int = Field(default=8, gt=0)
    letters: Optional[str] = None


class IsotermRequest(BaseModel):
    variety: str
    word: str
    max_len: int = Field(default=8, gt=0)
    letters: Optional[str] = None


class SC2Request(BaseModel):
    variety: str
    n_max: int = Field(default=6, gt=0)
    stab_len: int = Field(default=8, gt=0)


class DistRequest(BaseModel):
    kind: str
    identity: str


def _respond(verdict: Verdict) -> Dict:
    """ERROR verdicts become HTTP errors; everything else is a 200 with the verdict"""
    if verdict.status == VerdictStatus.ERROR:
        status_code = 422 if verdict.budget_exceeded else 400
        raise HTTPException(status_code=status_code, detail=verdict.error)
    return verdict.model_dump(mode="json")


@app.get("/api/health")
async def health():
    """Health check endpoint"""
    return {"status": "healthy", "service": "Monova API"}


@app.post("/api/check")
def check(request: CheckRequest):
    return _respond(workbench.check(request.variety, request.identity))


@app.post("/api/monoid")
def monoid(request: MonoidRequest):
    return _respond(workbench.monoid(request.action, request.preset, request.identity))


@app.post("/api/family")
def family(request: FamilyRequest):
    return _respond(
        workbench.family(request.name, request.n, request.pi, request.tau, request.word)
    )


@app.post("/api/sweep")
def sweep(request: SweepRequest):
    return _respond(
        workbench.sweep(request.first, request.second, request.max_len, request.letters)
    )


@app.post("/api/derive")
def derive(request: DeriveRequest):
    bounds = {
        "max_word_len": request.max_word_len,
        "max_sub_image_len": request.max_sub_image_len,
        "max_steps": request.max_steps,
        "ambient_len": request.ambient_len,
    }
    return _respond(
        workbench.derivation(
            request.identity,
            basis_name=request.basis_name,
            basis_text=request.basis,
            within=request.within,
            bounds=bounds,
            nonempty=request.nonempty,
        )
    )


@app.post("/api/meet")
def meet(request: MeetRequest):
    bounds = {
        "max_word_len": request.max_word_len,
        "max_steps": request.max_steps,
        "ambient_len": request.ambient_len,
    }
    return _respond(
        workbench.meet(request.first, request.second, request.identity, request.basis_name, bounds)
    )


@app.post("/api/stability")
def stability(request: StabilityRequest):
    return _respond(
        workbench.stability(request.variety, request.class_spec, request.max_len, request.letters)
    )


@app.post("/api/isoterm")
def isoterm(request: IsotermRequest):
    return _respond(
        workbench.isoterm(request.variety, request.word, request.max_len, request.letters)
    )


@app.post("/api/sc2")
def sc2(request: SC2Request):
    return _respond(workbench.sc2(request.variety, request.n_max, request.stab_len))


@app.post("/api/dist")
def dist(request: DistRequest):
    return _respond(workbench.dist_report(request.kind, request.identity))


@app.get("/api/lattice")
def lattice(max_level: int = 4):
    return _respond(workbench.lattice(max_level))


@app.get("/api/metrics/report")
async def get_metrics_report():
    """Get daily metrics report"""
    try:
        return {"success": True, "report": get_daily_report()}
    except Exception as e:
        logger.error(f"Error getting metrics report: {str(e)}")
        raise HTTPException(status_code=500, detail=str(e)) from e


@app.get("/api/metrics/stats")
async def get_metrics_stats(days: int = 7):
    """Get metrics statistics for last N days"""
    try:
        return {"success": True, "stats": metrics_collector.get_stats(days=days)}
    except Exception as e:
        logger.error(f"Error getting metrics stats: {str(e)}")
        raise HTTPException(status_code=500, detail=str(e)) from e


@app.get("/api/metrics/runs")
async def get_recent_runs(limit: int = 10):
    """Get recent bounded runs"""
    runs = metrics_collector.metrics.get("runs", [])
    return {"success": True, "runs": runs[-limit:] if runs else []}


@app.get("/api/metrics/errors")
async def get_recent_errors(limit: int = 10):
    """Get recent errors"""
    errors = metrics_collector.metrics.get("errors", [])
    return {"success": True, "errors": errors[-limit:] if errors else []}


if __name__ == "__main__":
    import uvicorn

    host, port = get_server_address()
    print("\n🧮 Monova FastAPI Server")
    print("=" * 50)
    print(f"Server running on http://localhost:{port}")
    print(f"API docs available at http://localhost:{port}/docs")
    print("=" * 50)
    uvicorn.run(app, host=host, port=port, log_level="info")
