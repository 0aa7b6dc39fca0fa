from ricciprofiles.einstein.page import (
    EinsteinData,
    PageSolution,
    build_page_profile,
    dsx_residual,
    g_f_functions,
    p_bracket_value,
    p_poly,
    phi_from_xi,
    phid_from_xi,
    s_poly,
    solve_page_parameter,
    solve_phi_linear,
    t_of_xi,
    theta,
    xi_of_t,
)

__all__ = [
    "EinsteinData",
    "PageSolution",
    "build_page_profile",
    "dsx_residual",
    "g_f_functions",
    "p_bracket_value",
    "p_poly",
    "phi_from_xi",
    "phid_from_xi",
    "s_poly",
    "solve_page_parameter",
    "solve_phi_linear",
    "t_of_xi",
    "theta",
    "xi_of_t",
]
