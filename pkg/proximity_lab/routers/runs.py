from typing import List

from fastapi import APIRouter, Depends, HTTPException, Path
from sqlalchemy.orm import Session

from ..database import get_db
from ..dtos import RunInfo
from ..models import ExperimentRun

router = APIRouter(
    prefix="/runs",
    tags=["runs"]
)


def _info(run: ExperimentRun) -> RunInfo:
    return RunInfo(id=run.id, command=run.command, polynomial=run.polynomial, seed=run.seed or 0,
                   status=run.status, exit_code=run.exit_code or 0, created_at=run.created_at,
                   report=run.report_dict())


@router.get("/", response_model=List[RunInfo],
            summary="Get all runs",
            description="This endpoint retrieves every recorded experiment run",
            response_description="A list of all runs")
def read_runs(db: Session = Depends(get_db)):
    runs = db.query(ExperimentRun).all()
    return [_info(run) for run in runs]


@router.get("/{run_id}",
            response_model=RunInfo,
            summary="Read a run",
            description="This endpoint retrieves the report of the run with the provided ID",
            response_description="The requested run")
def read_run(
    run_id: int = Path(..., description="The ID of the run to be retrieved", examples=1),
    db: Session = Depends(get_db)):
    run = db.query(ExperimentRun).filter(ExperimentRun.id == run_id).first()
    if run is None:
        raise HTTPException(status_code=404, detail="Run not found")
    return _info(run)


@router.delete("/{run_id}",
               summary="Delete a run",
               description="This endpoint deletes the run with the provided ID",
               response_description="Confirmation message")
def delete_run(run_id: int, db: Session = Depends(get_db)):
    run = db.query(ExperimentRun).filter(ExperimentRun.id == run_id).first()
    if run is None:
        raise HTTPException(status_code=404, detail="Run not found")
    db.delete(run)
    db.commit()
    return {"message": "Run deleted successfully"}
