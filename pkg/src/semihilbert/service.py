"""FastAPI service exposing the analysis pipeline.

Error contract: malformed problems answer 422 (pydantic validation or
weight validation), operators that are not A-bounded answer 409 with the
Douglas residuals, successes answer 200.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, analysis
from .errors import (
    BadSpec,
    DimensionMismatch,
    NotABounded,
    NotHermitian,
    NotPSD,
    SemiHilbertError,
    ZeroWeight,
)
from .schemas import (
    AnalyzeReport,
    Problem,
    RangeResponse,
    SuiteRequest,
    SuiteResponse,
)

app = FastAPI(
    title="semihilbert",
    version=__version__,
    description="Operator geometry in semi-Hilbertian spaces",
)

_VALIDATION_ERRORS = (
    DimensionMismatch, NotHermitian, NotPSD, ZeroWeight, BadSpec, ValueError,
)


def _guard(fn, *args):
    try:
        return fn(*args)
    except NotABounded as exc:
        raise HTTPException(status_code=409, detail={
            "code": "not_a_bounded",
            "message": str(exc),
            "residual_seminorm": exc.residual_seminorm,
            "residual_adjoint": exc.residual_adjoint,
        }) from exc
    except _VALIDATION_ERRORS as exc:
        raise HTTPException(status_code=422, detail={
            "code": type(exc).__name__,
            "message": str(exc),
        }) from exc
    except SemiHilbertError as exc:
        raise HTTPException(status_code=422, detail={
            "code": type(exc).__name__,
            "message": str(exc),
        }) from exc


@app.get("/v1/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/v1/analyze", response_model=AnalyzeReport)
def analyze(problem: Problem) -> AnalyzeReport:
    return _guard(analysis.analyze, problem)


@app.post("/v1/range", response_model=RangeResponse)
def numerical_range(problem: Problem) -> RangeResponse:
    return _guard(analysis.range_report, problem)


@app.post("/v1/suite", response_model=SuiteResponse)
def suite(request: SuiteRequest) -> SuiteResponse:
    return _guard(analysis.suite_report, request)
