"""Least-squares growth exponents. Floating point lives here and nowhere else."""
from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .errors import DegenerateFitError


class ExponentFit(NamedTuple):
    slope: float
    residual: float


def fit_exponent(pairs: Iterable) -> ExponentFit:
    """Slope of log(count) against log(N), with the RMS residual of the fit."""
    pairs = [(int(n), int(count)) for n, count in pairs]
    if len({n for n, _ in pairs}) < 2:
        raise DegenerateFitError("an exponent fit needs at least two distinct sizes")
    if any(count <= 0 or n <= 0 for n, count in pairs):
        raise DegenerateFitError("an exponent fit needs positive sizes and counts")
    log_n = np.log(np.array([n for n, _ in pairs], dtype=float))
    log_count = np.log(np.array([count for _, count in pairs], dtype=float))
    design = np.column_stack([log_n, np.ones_like(log_n)])
    coefficients, *_ = np.linalg.lstsq(design, log_count, rcond=None)
    residual = float(np.sqrt(np.mean((design @ coefficients - log_count) ** 2)))
    return ExponentFit(float(coefficients[0]), residual)
