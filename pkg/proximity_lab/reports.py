"""Conversion of lab results into the pydantic report models shared by the CLI, API and MCP tools."""
from __future__ import annotations

from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterable, Optional

from pydantic import BaseModel

from .algebra import MultivariatePolynomial, format_rational
from .apps import ExperimentRecord, PlanarPoint
from .dtos import (
    ChainReportInfo,
    ConstantsInfo,
    ExperimentRecordInfo,
    ExtremalReport,
    FiberCount,
    GridReport,
    GrowthEntryInfo,
    GrowthReport,
    QuadrupleInfo,
    QuadruplesReport,
    ReportEnvelope,
    ReportHeader,
    SeparabilityInfo,
    TupleInfo,
    TuplesReport,
)
from .dual import ChainReport
from .expander import GrowthSeries, SeparabilityReport
from .grid import ExtremalWitness, GridIntersection, SchwartzZippelReport, extremal_pair_count
from .quadruples import CurveExtraction, TupleExtraction


def plain(value):
    """JSON-ready copy of a value with rationals as "p/q" strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, PlanarPoint):
        return [format_rational(value.x), format_rational(value.y)]
    if isinstance(value, MultivariatePolynomial):
        return str(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def envelope(command: str, report: BaseModel, warnings: Iterable[str] = (),
             generated_at: Optional[str] = None) -> ReportEnvelope:
    """Wrap a report; the timestamp lives only in the header."""
    generated_at = generated_at or datetime.now(timezone.utc).isoformat(timespec="seconds")
    return ReportEnvelope(header=ReportHeader(generated_at=generated_at, command=command),
                          report=report.model_dump(), warnings=list(warnings))


def grid_report(grid: GridIntersection, audit: SchwartzZippelReport) -> GridReport:
    return GridReport(
        surface=str(grid.surface),
        sizes=[len(grid.A), len(grid.B), len(grid.C)],
        count=audit.count,
        degree=audit.degree,
        ceiling=format_rational(audit.ceiling),
        ratio=audit.ratio,
        asserted=audit.asserted,
        fibers=[FiberCount(c=format_rational(f["c"]), count=f["count"]) for f in audit.fibers],
    )


def extremal_report(N: int, witness: ExtremalWitness) -> ExtremalReport:
    return ExtremalReport(N=N, surface=str(witness.surface), count=witness.count,
                          bound=format_rational(witness.bound), pairs_closed_form=extremal_pair_count(N))


def _quadruple(q) -> QuadrupleInfo:
    return QuadrupleInfo(a=format_rational(q.a), a2=format_rational(q.a2), b=format_rational(q.b),
                         b2=format_rational(q.b2), gap_a=q.gap_a, gap_b=q.gap_b)


def quadruples_report(curve: MultivariatePolynomial, extraction: CurveExtraction) -> QuadruplesReport:
    return QuadruplesReport(
        curve=str(curve),
        size=extraction.size,
        S=extraction.S,
        c_dec=extraction.c_dec,
        pieces=extraction.pieces,
        residual=extraction.residual,
        radius_a=format_rational(extraction.radius_a),
        radius_b=format_rational(extraction.radius_b),
        guarantee=format_rational(extraction.guarantee),
        count=len(extraction.quadruples),
        quadruples=[_quadruple(q) for q in extraction.quadruples],
    )


def tuples_report(extraction: TupleExtraction) -> TuplesReport:
    grid = extraction.grid
    return TuplesReport(
        surface=str(grid.surface),
        G=len(grid),
        S=extraction.S,
        c_dec=extraction.c_dec,
        heavy_fibers=[format_rational(c) for c in extraction.heavy.values(grid.C)],
        threshold=format_rational(extraction.heavy.threshold),
        retained=extraction.heavy.retained,
        residual=extraction.residual,
        guarantee=format_rational(extraction.guarantee),
        gap_constant=extraction.gap_constant,
        count=len(extraction.tuples),
        tuples=[TupleInfo(c=format_rational(t.c), **_quadruple(t).model_dump()) for t in extraction.tuples],
    )


def chain_report(surface: MultivariatePolynomial, report: ChainReport) -> ChainReportInfo:
    return ChainReportInfo(
        surface=str(surface),
        G=report.G,
        tuples=report.tuples,
        safe_tuples=report.safe_tuples,
        P=report.P,
        Gamma=report.Gamma,
        I=report.I,
        I_by_roots=report.I_by_roots,
        st_shape=report.st_shape,
        st_ratio=report.st_ratio,
        fitted_C=report.fitted_C,
        chain_shape=report.chain_shape,
        constants=ConstantsInfo(c_dec=report.c_dec, K=format_rational(Fraction(report.K)), S=report.S),
        sizes=list(report.sizes),
        heavy_fibers=report.heavy_fibers,
        guarantee=format_rational(Fraction(report.guarantee)),
        excluded_curves=report.excluded_curves,
        necessity_checked=report.necessity_checked,
        permutation=list(report.permutation),
        checks=dict(report.checks),
    )


def separability_report(h: MultivariatePolynomial, report: SeparabilityReport) -> SeparabilityInfo:
    return SeparabilityInfo(polynomial=str(h), verdict=report.verdict.value, witness=str(report.witness),
                            trivial=report.trivial)


def growth_report(series: GrowthSeries) -> GrowthReport:
    return GrowthReport(
        polynomial=str(series.polynomial),
        family=series.family,
        ratio=series.ratio,
        seed=series.seed,
        verdict=series.verdict.value,
        exponent=series.exponent,
        residual=series.residual,
        entries=[GrowthEntryInfo(N=e.N, size_a=e.size_a, size_b=e.size_b, image=e.image, bound=e.bound)
                 for e in series.entries],
    )


def experiment_report(record: ExperimentRecord) -> ExperimentRecordInfo:
    return ExperimentRecordInfo(
        name=record.name,
        parameters=plain(record.parameters),
        n=plain(record.n),
        exact_count=record.exact_count,
        bound_value=record.bound_value,
        exponent_series=[list(plain(pair)) for pair in record.exponent_series],
        exponent=record.exponent,
        details=plain(record.details),
    )
