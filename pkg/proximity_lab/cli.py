"""proximity-lab command line: parse polynomials, run experiments, emit JSON or CSV reports.

Exit status is 0 when every asserted invariant held, 2 on a parse error, 3 on a
violated precondition and 4 on an invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel

from . import apps
from .config import LOG_FORMAT, LOG_LEVEL
from .algebra import MultivariatePolynomial
from .dtos import RunConfiguration
from .dual import verify_chain
from .errors import InvariantViolation, LabError, PreconditionError
from .expander import PLANE_VARIABLES, growth_experiment, separability_test
from .expression import parse_polynomial
from .formats import growth_csv, quadruples_csv, read_point_file, read_set_file, tuples_csv
from .grid import (
    SURFACE_VARIABLES,
    IndexedSet,
    curve_points,
    gen_extremal_additive,
    intersect_grid,
    schwartz_zippel_audit,
)
from .quadruples import ForbidMap, extract_curve_quadruples, extract_proximate_tuples
from . import reports

logger = logging.getLogger(__name__)

DEFAULT_ANCHORS = ("0", "0", "1", "0", "0", "1")


@dataclass
class Outcome:
    report: BaseModel
    warnings: List[str] = field(default_factory=list)
    csv: Optional[str] = None


def _surface(config: RunConfiguration) -> MultivariatePolynomial:
    if not config.poly:
        raise PreconditionError(f"{config.command} needs --poly")
    return parse_polynomial(config.poly, SURFACE_VARIABLES).polynomial


def _plane(config: RunConfiguration, default: Optional[str] = None) -> MultivariatePolynomial:
    text = config.poly or default
    if not text:
        raise PreconditionError(f"{config.command} needs --poly")
    return parse_polynomial(text, PLANE_VARIABLES).polynomial


def _sets(config: RunConfiguration, count: int, warnings: list) -> List[IndexedSet]:
    """Sets from --sets files, or {1..N} for each role from --N."""
    if config.sets:
        if len(config.sets) != count:
            raise PreconditionError(f"{config.command} needs {count} set files, got {len(config.sets)}")
        return [IndexedSet.from_values(read_set_file(path), warnings=warnings, name=Path(path).name)
                for path in config.sets]
    if config.N is None:
        raise PreconditionError(f"{config.command} needs --sets or --N")
    return [IndexedSet.interval(1, config.N) for _ in range(count)]


def _anchors(config: RunConfiguration) -> List[apps.PlanarPoint]:
    values = config.anchors or list(DEFAULT_ANCHORS)
    if len(values) != 6:
        raise PreconditionError("--anchors takes six rationals x1 y1 x2 y2 x3 y3")
    return [apps.PlanarPoint.of(values[i], values[i + 1]) for i in range(0, 6, 2)]


def _points(config: RunConfiguration) -> List[apps.PlanarPoint]:
    return [apps.PlanarPoint(x, y) for x, y in read_point_file(config.points)]


def cmd_count(config: RunConfiguration) -> Outcome:
    warnings: list = []
    f = _surface(config)
    A, B, C = _sets(config, 3, warnings)
    grid = intersect_grid(f, A, B, C)
    return Outcome(reports.grid_report(grid, schwartz_zippel_audit(grid)), warnings)


def cmd_extremal(config: RunConfiguration) -> Outcome:
    if config.N is None:
        raise PreconditionError("extremal needs --N")
    return Outcome(reports.extremal_report(config.N, gen_extremal_additive(config.N)))


def cmd_quadruples(config: RunConfiguration) -> Outcome:
    warnings: list = []
    g = _plane(config)
    A, B = _sets(config, 2, warnings)
    S = config.S or 1
    extraction = extract_curve_quadruples(g, A, B, curve_points(g, A, B), S,
                                          ForbidMap.empty(S), ForbidMap.empty(S))
    return Outcome(reports.quadruples_report(g, extraction), warnings, quadruples_csv(extraction.quadruples))


def cmd_tuples(config: RunConfiguration) -> Outcome:
    warnings: list = []
    f = _surface(config)
    A, B, C = _sets(config, 3, warnings)
    extraction = extract_proximate_tuples(f, A, B, C, config.S)
    return Outcome(reports.tuples_report(extraction), warnings, tuples_csv(extraction.tuples))


def cmd_chain(config: RunConfiguration) -> Outcome:
    warnings: list = []
    f = _surface(config)
    A, B, C = _sets(config, 3, warnings)
    report = verify_chain(f, A, B, C, config.S, config.K, inject_violation=config.inject_violation)
    return Outcome(reports.chain_report(f, report), warnings + report.warnings)


def cmd_expand(config: RunConfiguration) -> Outcome:
    h = _plane(config)
    series = growth_experiment(h, config.family, config.Ns, config.ratio, config.seed)
    return Outcome(reports.growth_report(series), csv=growth_csv(series))


def cmd_detect(config: RunConfiguration) -> Outcome:
    h = _plane(config)
    return Outcome(reports.separability_report(h, separability_test(h)))


def cmd_two_lines(config: RunConfiguration) -> Outcome:
    if config.cos_theta is None:
        raise PreconditionError("app-two-lines needs --cos")
    if config.Ns:
        record = apps.two_lines_series(config.cos_theta, config.Ns)
        return Outcome(reports.experiment_report(record), record.warnings)
    warnings: list = []
    A, B = _sets(config, 2, warnings)
    return Outcome(reports.experiment_report(apps.two_lines_experiment(config.cos_theta, A, B)), warnings)


def cmd_three_points(config: RunConfiguration) -> Outcome:
    p1, p2, p3 = _anchors(config)
    if config.Ns:
        record = apps.three_points_series(p1, p2, p3, config.Ns)
    elif config.points:
        record = apps.three_points_experiment(p1, p2, p3, _points(config), count_grid=True)
    else:
        record = apps.three_points_experiment(p1, p2, p3, apps.line_points(config.N or 16))
    return Outcome(reports.experiment_report(record), record.warnings)


def cmd_curve(config: RunConfiguration) -> Outcome:
    gamma = _plane(config, default="y - x^3")
    if config.Ns:
        record = apps.curve_series(gamma, config.Ns)
    elif config.points:
        record = apps.curve_distance_experiment(gamma, _points(config))
    else:
        record = apps.curve_distance_experiment(gamma, apps.cubic_points(config.N or 8))
    return Outcome(reports.experiment_report(record), record.warnings)


def cmd_circles(config: RunConfiguration) -> Outcome:
    p1, p2, p3 = _anchors(config)
    if config.Ns:
        record = apps.circles_series(p1, p2, p3, config.Ns)
    else:
        ts = list(range(config.N or 4))
        record = apps.unit_circle_triple_points(p1, p2, p3, (ts, ts, ts))
    return Outcome(reports.experiment_report(record), record.warnings)


COMMANDS: Dict[str, Callable[[RunConfiguration], Outcome]] = {
    "count": cmd_count,
    "extremal": cmd_extremal,
    "quadruples": cmd_quadruples,
    "tuples": cmd_tuples,
    "chain": cmd_chain,
    "expand": cmd_expand,
    "detect": cmd_detect,
    "app-two-lines": cmd_two_lines,
    "app-three-points": cmd_three_points,
    "app-curve": cmd_curve,
    "app-circles": cmd_circles,
}


def execute(config: RunConfiguration) -> Outcome:
    """Run one command and return its report; LabErrors propagate."""
    try:
        handler = COMMANDS[config.command]
    except KeyError:
        raise PreconditionError(f"unknown command {config.command!r}") from None
    outcome = handler(config)
    if config.inject_violation and config.command != "chain":
        raise InvariantViolation(f"injected violation after {config.command}")
    return outcome


def render(config: RunConfiguration, outcome: Outcome, generated_at: Optional[str] = None) -> str:
    if config.format == "csv":
        if outcome.csv is None:
            raise PreconditionError(f"{config.command} has no CSV form; use --format json")
        return outcome.csv
    document = reports.envelope(config.command, outcome.report, outcome.warnings, generated_at)
    return json.dumps(document.model_dump(by_alias=True), indent=2) + "\n"


def record_run(config: RunConfiguration, exit_code: int, report: Optional[str]):
    from .database import Base, SessionLocal, engine
    from .models import ExperimentRun

    Base.metadata.create_all(bind=engine)
    db = SessionLocal()
    try:
        db.add(ExperimentRun(command=config.command, polynomial=config.poly, seed=config.seed,
                             status="ok" if exit_code == 0 else "failed", exit_code=exit_code, report=report))
        db.commit()
    finally:
        db.close()


def run(config: RunConfiguration) -> int:
    """Execute, write the report, optionally record the run; returns the exit status."""
    try:
        text = render(config, execute(config))
    except LabError as error:
        logger.error("%s", error)
        print(f"error: {error}", file=sys.stderr)
        if config.record:
            record_run(config, error.exit_code, json.dumps({"error": str(error)}))
        return error.exit_code
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    if config.record:
        record_run(config, 0, text if config.format == "json" else None)
    return 0


def _csv_ints(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of integers") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proximity-lab", description="Exact experiments on Cartesian grids and surfaces")
    parser.add_argument("--verbose", action="store_true", help="log at INFO")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--poly", help="polynomial in x, y, z, e.g. \"z - x^2 - x*y\"")
        p.add_argument("--sets", nargs="+", default=[], help="set files, one rational per line")
        p.add_argument("--points", help="point file, one \"x y\" pair per line")
        p.add_argument("--N", type=int)
        p.add_argument("--Ns", type=_csv_ints, default=[])
        p.add_argument("--S", type=int)
        p.add_argument("--K")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--family", default="interval")
        p.add_argument("--ratio", type=int, default=1)
        p.add_argument("--cos", dest="cos_theta")
        p.add_argument("--anchors", nargs=6, default=[])
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--record", action="store_true", help="store the run in the run database")
        p.add_argument("--inject-violation", action="store_true", help=argparse.SUPPRESS)
    return parser


def configure_logging(verbose: bool = False):
    level = logging.INFO if verbose else getattr(logging, LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    run_config = RunConfiguration(**vars(args))
    return run(run_config)


if __name__ == "__main__":
    sys.exit(main())
