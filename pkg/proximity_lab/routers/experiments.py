import json
from typing import Callable, List

from fastapi import APIRouter, Body, Depends, HTTPException
from pydantic import BaseModel
from sqlalchemy.orm import Session

from .. import apps, reports
from ..database import get_db
from ..dtos import ChainRequest, DetectRequest, ExpandRequest, ReportEnvelope, SurfaceRequest, TwoLinesRequest
from ..dual import verify_chain
from ..errors import InvariantViolation, LabError, ParseError, StageError
from ..expander import PLANE_VARIABLES, growth_experiment, separability_test
from ..expression import parse_polynomial
from ..grid import SURFACE_VARIABLES, IndexedSet, intersect_grid, schwartz_zippel_audit
from ..models import ExperimentRun

router = APIRouter(
    prefix="/experiments",
    tags=["experiments"]
)


def status_for(error: LabError) -> int:
    cause = error.cause if isinstance(error, StageError) else error
    if isinstance(cause, ParseError):
        return 400
    if isinstance(cause, InvariantViolation):
        return 500
    return 422


def _sets(request: SurfaceRequest, warnings: list) -> List[IndexedSet]:
    if request.N is not None:
        return [IndexedSet.interval(1, request.N) for _ in range(3)]
    return [IndexedSet.from_values(values, warnings=warnings, name=name)
            for name, values in (("A", request.A), ("B", request.B), ("C", request.C))]


def _execute(db: Session, command: str, polynomial: str, seed: int,
             compute: Callable[[list], BaseModel]) -> ReportEnvelope:
    warnings: list = []
    try:
        document = reports.envelope(command, compute(warnings), warnings)
    except LabError as error:
        db.add(ExperimentRun(command=command, polynomial=polynomial, seed=seed, status="failed",
                             exit_code=error.exit_code, report=json.dumps({"error": str(error)})))
        db.commit()
        raise HTTPException(status_code=status_for(error), detail=str(error))
    db.add(ExperimentRun(command=command, polynomial=polynomial, seed=seed, status="ok", exit_code=0,
                         report=document.model_dump_json(by_alias=True)))
    db.commit()
    return document


@router.post("/count", response_model=ReportEnvelope,
             summary="Count a grid intersection",
             description="Computes G = (A x B x C) ∩ Z(f) exactly and audits it against the Schwartz-Zippel ceiling",
             response_description="The grid report")
def count(request: SurfaceRequest = Body(..., examples=[{"poly": "x + y - z", "N": 10}]),
          db: Session = Depends(get_db)):
    def compute(warnings):
        f = parse_polynomial(request.poly, SURFACE_VARIABLES).polynomial
        grid = intersect_grid(f, *_sets(request, warnings))
        return reports.grid_report(grid, schwartz_zippel_audit(grid))
    return _execute(db, "count", request.poly, 0, compute)


@router.post("/chain", response_model=ReportEnvelope,
             summary="Verify the proximity chain",
             description="Runs grid, safety certificates, forbid sets, 5-tuples and incidences with every exact check",
             response_description="The chain report")
def chain(request: ChainRequest = Body(..., examples=[{"poly": "z - x^2 - x*y", "N": 8}]),
          db: Session = Depends(get_db)):
    def compute(warnings):
        f = parse_polynomial(request.poly, SURFACE_VARIABLES).polynomial
        A, B, C = _sets(request, warnings)
        report = verify_chain(f, A, B, C, request.S, request.K)
        warnings.extend(report.warnings)
        return reports.chain_report(f, report)
    return _execute(db, "chain", request.poly, 0, compute)


@router.post("/detect", response_model=ReportEnvelope,
             summary="Detect a special form",
             description="Decides whether h_x / h_y separates multiplicatively",
             response_description="The separability verdict")
def detect(request: DetectRequest, db: Session = Depends(get_db)):
    def compute(warnings):
        h = parse_polynomial(request.poly, PLANE_VARIABLES).polynomial
        return reports.separability_report(h, separability_test(h))
    return _execute(db, "detect", request.poly, 0, compute)


@router.post("/expand", response_model=ReportEnvelope,
             summary="Run a growth experiment",
             description="Counts |h(A x B)| over a set family and fits the growth exponent",
             response_description="The growth series")
def expand(request: ExpandRequest, db: Session = Depends(get_db)):
    def compute(warnings):
        h = parse_polynomial(request.poly, PLANE_VARIABLES).polynomial
        return reports.growth_report(growth_experiment(h, request.family, request.Ns, request.ratio, request.seed))
    return _execute(db, "expand", request.poly, request.seed, compute)


@router.post("/two-lines", response_model=ReportEnvelope,
             summary="Distinct distances between two lines",
             description="Counts distinct squared distances between points on two lines at angle theta",
             response_description="The experiment record")
def two_lines(request: TwoLinesRequest, db: Session = Depends(get_db)):
    def compute(warnings):
        A = IndexedSet.from_values(request.A, warnings=warnings, name="A")
        B = IndexedSet.from_values(request.B, warnings=warnings, name="B")
        return reports.experiment_report(apps.two_lines_experiment(request.cos_theta, A, B))
    return _execute(db, "app-two-lines", None, 0, compute)
