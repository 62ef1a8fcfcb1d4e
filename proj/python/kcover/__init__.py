"""Balanced k-coverage for pan-only directional sensor networks."""

from ._core import (
    CameraModel,
    CoverageMatrix,
    Error,
    GridSize,
    InvalidArgument,
    IoError,
    ParseError,
    Point2D,
    Scenario,
    balancing_index,
    brute_force,
    default_rho,
    evaluate,
    fairness_index,
    generate,
    greedy_trace,
    load_scenario,
    parse_scenario,
    solve,
    sweep,
    target_in_sector,
)

SOLVERS = ("ILP-exact", "IQP-exact", "INLP-exact", "GreedyLinear", "GreedyQuadratic")

__all__ = [name for name in dir() if not name.startswith("_")]
