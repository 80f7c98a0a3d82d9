"""Arc-flow models, bounds and heuristics for P||sum wjCj."""

from ._core import (
    Instance,
    PmschedError,
    check_schedule,
    emit_model,
    evaluate_schedule,
    generate_instance,
    graph_stats,
    horizon,
    job_types,
    normal_patterns,
    parse_instance,
    solve_exact,
    solve_heuristic,
    time_windows,
    to_dot,
    write_instance,
    wspt_order,
)

__all__ = [
    "Instance",
    "PmschedError",
    "check_schedule",
    "emit_model",
    "evaluate_schedule",
    "generate_instance",
    "graph_stats",
    "horizon",
    "job_types",
    "normal_patterns",
    "parse_instance",
    "solve_exact",
    "solve_heuristic",
    "time_windows",
    "to_dot",
    "write_instance",
    "wspt_order",
]
