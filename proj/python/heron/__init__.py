"""Solvers for the generalized Heron problem: minimize a weighted sum of
Euclidean distances to closed convex sets over a convex constraint set."""

from ._core import (
    CatalogEntry,
    ConvexSet,
    CustomSteps,
    FixedEps,
    HarmonicStep,
    HeronProblem,
    OptimalityReport,
    ParseError,
    ParsedProblem,
    PowerLeg,
    SingularWeightError,
    SolveResult,
    SolveStatus,
    SolverConfig,
    SolverSettings,
    TargetTerm,
    Trajectory,
    TrajectoryRecord,
    builtin_example,
    builtin_examples,
    contains,
    distance,
    finite_difference_gradient,
    grid_search_oracle,
    mm_solve,
    mm_solve_continuation,
    mm_solve_fixed_eps,
    mm_step,
    optimality_residual,
    parse_problem,
    parse_problem_file,
    project,
    project_simplex,
    run_solver,
    serialize_problem,
    subgradient_solve,
    subgradient_step,
    write_trajectory_csv,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
