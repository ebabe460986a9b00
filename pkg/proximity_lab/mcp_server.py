#!/usr/bin/env python3
"""
MCP server exposing proximity-lab experiments.
Tools:
  - count_grid(poly, A, B, C)
  - chain_report(poly, N, S=None, K=None)
  - detect_special_form(poly)
  - growth_experiment(poly, Ns, family="interval", ratio=1, seed=0)
  - list_commands()
Rationals are passed and returned as "p/q" strings.
"""
from typing import Dict, List, Optional

from mcp.server.fastmcp import FastMCP  # official python-sdk FastMCP

from . import reports
from .cli import COMMANDS
from .dual import verify_chain
from .errors import LabError, StageError
from .expander import PLANE_VARIABLES, growth_experiment as run_growth, separability_test
from .expression import parse_polynomial
from .grid import SURFACE_VARIABLES, IndexedSet, intersect_grid, schwartz_zippel_audit

APP_NAME = "proximity-lab"

mcp = FastMCP(APP_NAME)


def _failure(error: LabError) -> Dict:
    stage = error.stage if isinstance(error, StageError) else None
    hint = {2: "Check the polynomial syntax: terms like 3/2*x^2*y, no implicit multiplication.",
            3: "Check the inputs against the command's preconditions.",
            4: "An exact guarantee failed; keep the inputs and report them."}.get(error.exit_code, "")
    return {"error": str(error), "exit_code": error.exit_code, "stage": stage, "hint": hint}


@mcp.tool()
def count_grid(poly: str, A: List[str], B: List[str], C: List[str]) -> Dict:
    """Exact |(A x B x C) ∩ Z(poly)| with the Schwartz-Zippel audit."""
    try:
        f = parse_polynomial(poly, SURFACE_VARIABLES).polynomial
        grid = intersect_grid(f, IndexedSet.from_values(A, name="A"), IndexedSet.from_values(B, name="B"),
                              IndexedSet.from_values(C, name="C"))
        return reports.grid_report(grid, schwartz_zippel_audit(grid)).model_dump()
    except LabError as e:
        return _failure(e)


@mcp.tool()
def chain_report(poly: str, N: int, S: Optional[int] = None, K: Optional[str] = None) -> Dict:
    """Run the full proximity chain on A = B = C = {1..N}."""
    try:
        f = parse_polynomial(poly, SURFACE_VARIABLES).polynomial
        A = IndexedSet.interval(1, N)
        report = verify_chain(f, A, A, A, S, K)
        result = reports.chain_report(f, report).model_dump()
        result["warnings"] = list(report.warnings)
        return result
    except LabError as e:
        return _failure(e)


@mcp.tool()
def detect_special_form(poly: str) -> Dict:
    """Is poly(x, y) a special-form candidate (h_x / h_y separates multiplicatively)?"""
    try:
        h = parse_polynomial(poly, PLANE_VARIABLES).polynomial
        return reports.separability_report(h, separability_test(h)).model_dump()
    except LabError as e:
        return _failure(e)


@mcp.tool()
def growth_experiment(poly: str, Ns: List[int], family: str = "interval", ratio: int = 1, seed: int = 0) -> Dict:
    """|poly(A x B)| over a set family with the fitted growth exponent."""
    try:
        h = parse_polynomial(poly, PLANE_VARIABLES).polynomial
        return reports.growth_report(run_growth(h, family, Ns, ratio, seed)).model_dump()
    except LabError as e:
        return _failure(e)


@mcp.tool()
def list_commands() -> Dict:
    """Commands of the proximity-lab CLI."""
    return {"count": len(COMMANDS), "commands": sorted(COMMANDS)}


def main():
    mcp.run()


if __name__ == "__main__":
    main()
