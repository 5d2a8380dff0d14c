"""Solvers for the discrete parallel-machine makespan scheduling-location problem.

Pick p of m candidate machine locations and schedule n jobs with
location-dependent release dates so the latest completion is smallest.
The heavy lifting lives in the compiled extension; this package just
re-exports its surface.
"""

from ._core import (
    Bounds,
    FrameworkResult,
    IlsResult,
    Instance,
    MachineSchedule,
    OracleResult,
    ParseError,
    ScheduledJob,
    Solution,
    StageReport,
    __version__,
    evaluate,
    generate_instance,
    initial_lower_bound,
    read_instance,
    read_instance_literature,
    run_framework,
    run_ils,
    solve_exact,
    write_instance,
)

__all__ = [
    "Bounds",
    "FrameworkResult",
    "IlsResult",
    "Instance",
    "MachineSchedule",
    "OracleResult",
    "ParseError",
    "ScheduledJob",
    "Solution",
    "StageReport",
    "__version__",
    "evaluate",
    "generate_instance",
    "initial_lower_bound",
    "read_instance",
    "read_instance_literature",
    "run_framework",
    "run_ils",
    "solve_exact",
    "write_instance",
]
