from datetime import datetime
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .config import SCHEMA_VERSION

# Rational values travel as "p/q" (or "p") strings; floats appear only in
# fitted or report-only quantities.
Rational = str


class ReportHeader(BaseModel):
    generated_at: str
    command: str


class ReportEnvelope(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    header: ReportHeader
    report: Dict[str, Any]
    warnings: List[str] = []


class FiberCount(BaseModel):
    c: Rational
    count: int


class GridReport(BaseModel):
    surface: str
    sizes: List[int]
    count: int
    degree: int
    ceiling: Rational
    ratio: float
    asserted: bool
    fibers: List[FiberCount] = []


class ExtremalReport(BaseModel):
    N: int
    surface: str
    count: int
    bound: Rational
    pairs_closed_form: int


class QuadrupleInfo(BaseModel):
    a: Rational
    a2: Rational
    b: Rational
    b2: Rational
    gap_a: int
    gap_b: int


class TupleInfo(QuadrupleInfo):
    c: Rational


class QuadruplesReport(BaseModel):
    curve: str
    size: int
    S: int
    c_dec: int
    pieces: int
    residual: int
    radius_a: Rational
    radius_b: Rational
    guarantee: Rational
    count: int
    quadruples: List[QuadrupleInfo] = []


class TuplesReport(BaseModel):
    surface: str
    G: int
    S: int
    c_dec: int
    heavy_fibers: List[Rational]
    threshold: Rational
    retained: int
    residual: int
    guarantee: Rational
    gap_constant: int
    count: int
    tuples: List[TupleInfo] = []


class ConstantsInfo(BaseModel):
    """Constants the chain run fixed: decomposition, gap and forbid capacity."""

    c_dec: int
    K: Rational
    S: int


class ChainReportInfo(BaseModel):
    surface: str
    G: int
    tuples: int
    safe_tuples: int
    P: int
    Gamma: int
    I: int
    I_by_roots: Optional[int] = None
    st_shape: float
    st_ratio: float
    fitted_C: float
    chain_shape: float
    constants: ConstantsInfo
    sizes: List[int]
    heavy_fibers: int
    guarantee: Rational
    excluded_curves: int
    necessity_checked: int
    permutation: List[str]
    checks: Dict[str, bool] = {}


class SeparabilityInfo(BaseModel):
    polynomial: str
    verdict: Literal["special-candidate", "non-special"]
    witness: str
    trivial: bool = False


class GrowthEntryInfo(BaseModel):
    N: int
    size_a: int
    size_b: int
    image: int
    bound: float


class GrowthReport(BaseModel):
    polynomial: str
    family: str
    ratio: int
    seed: int
    verdict: Literal["special-candidate", "non-special"]
    exponent: float
    residual: float
    entries: List[GrowthEntryInfo] = []


class ExperimentRecordInfo(BaseModel):
    name: str
    parameters: Dict[str, Any]
    n: Any
    exact_count: int
    bound_value: float
    exponent_series: List[List[int]] = []
    exponent: Optional[float] = None
    details: Dict[str, Any] = {}


class RunConfiguration(BaseModel):
    """Everything one lab run needs; a fixed seed makes the report reproducible."""

    command: str
    poly: Optional[str] = None
    sets: List[str] = []
    points: Optional[str] = None
    N: Optional[int] = None
    Ns: List[int] = []
    S: Optional[int] = None
    K: Optional[Rational] = None
    seed: int = 0
    family: str = "interval"
    ratio: int = 1
    cos_theta: Optional[Rational] = None
    anchors: List[Rational] = []
    out: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    record: bool = False
    inject_violation: bool = False
    verbose: bool = False


class SurfaceRequest(BaseModel):
    poly: str
    A: List[Rational] = []
    B: List[Rational] = []
    C: List[Rational] = []
    N: Optional[int] = None


class ChainRequest(SurfaceRequest):
    S: Optional[int] = None
    K: Optional[Rational] = None


class DetectRequest(BaseModel):
    poly: str


class ExpandRequest(BaseModel):
    poly: str
    family: str = "interval"
    Ns: List[int]
    ratio: int = 1
    seed: int = 0


class TwoLinesRequest(BaseModel):
    cos_theta: Rational
    A: List[Rational]
    B: List[Rational]


class RunInfo(BaseModel):
    id: Optional[int] = None
    command: str
    polynomial: Optional[str] = None
    seed: int = 0
    status: str
    exit_code: int
    created_at: Optional[datetime] = None
    report: Optional[Dict[str, Any]] = None
