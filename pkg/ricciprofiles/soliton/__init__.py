from ricciprofiles.soliton.koiso_cao import (
    CaoData,
    CaoSolution,
    DiscrepancyReport,
    ObjectiveOutcome,
    build_cao_profile,
    cao_interval,
    evaluate_cao,
    h_moment,
    initial_data,
    objective_discrepancy,
    quadrature_objective,
    s_of_a,
    solve_cao_parameter,
)

__all__ = [
    "CaoData",
    "CaoSolution",
    "DiscrepancyReport",
    "ObjectiveOutcome",
    "build_cao_profile",
    "cao_interval",
    "evaluate_cao",
    "h_moment",
    "initial_data",
    "objective_discrepancy",
    "quadrature_objective",
    "s_of_a",
    "solve_cao_parameter",
]
