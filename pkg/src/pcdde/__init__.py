"""Exact and numeric analysis of periodic orbits in the delay equation
x'(t) = a(t) f(x(t - 1)) with a periodic, sign-changing, piecewise-constant
coefficient and sign-type negative feedback."""

from .coefficients import (CoefficientParams, ParameterError, eval_a0, eval_a_delta, eval_f0,
                           eval_f_delta, ingest_params, validate_delta)
from .exact import (EventRecord, HistoryFunction, NonTransversalError, Trajectory,
                    integrate_exact, stroboscopic_samples, zeros_of)
from .numeric import DenseTrajectory, RhsSpec, integrate_numeric, stroboscopic_numeric
from .return_map import (AffineMap, DegenerateMapError, FixedPointResult, ValidityReport,
                         iterate_map, type1_fixed_point, type1_map, type2_cycle, type2_map,
                         validate_type1, validate_type2)

__all__ = [
    "AffineMap", "CoefficientParams", "DegenerateMapError", "DenseTrajectory", "EventRecord",
    "FixedPointResult", "HistoryFunction", "NonTransversalError", "ParameterError", "RhsSpec",
    "Trajectory", "ValidityReport", "eval_a0", "eval_a_delta", "eval_f0", "eval_f_delta",
    "ingest_params", "integrate_exact", "integrate_numeric", "iterate_map",
    "stroboscopic_numeric", "stroboscopic_samples", "type1_fixed_point", "type1_map",
    "type2_cycle", "type2_map", "validate_delta", "validate_type1", "validate_type2", "zeros_of",
]
