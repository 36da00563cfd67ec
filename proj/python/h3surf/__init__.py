"""Surface geometry in the Heisenberg group H3."""

import json

from . import _h3surf
from ._h3surf import (
    Chart,
    H3Error,
    InvalidArgument,
    NumericalError,
    ParseError,
    __version__,
    beltrami_coords,
    integrate_s2_profile,
    line_is_geodesic,
    mean_curvature,
    run_cli,
    s2_P_Q,
    s2_solve_t,
    tension_field,
    unit_normal,
)

__all__ = [
    "Chart",
    "H3Error",
    "InvalidArgument",
    "NumericalError",
    "ParseError",
    "__version__",
    "beltrami_coords",
    "beltrami_identity_check",
    "finite_type_fit",
    "integrate_s2_profile",
    "line_is_geodesic",
    "mean_curvature",
    "run_cli",
    "s1_classify",
    "s2_P_Q",
    "s2_solve_t",
    "solve_pde",
    "surface_data",
    "tension_field",
    "unit_normal",
]


def surface_data(chart, u, v):
    return json.loads(_h3surf.surface_data(chart, u, v))


def finite_type_fit(chart, u_range, v_range, grid=(11, 11), h=0.0):
    return json.loads(_h3surf.finite_type_fit(chart, u_range, v_range, grid, h))


def beltrami_identity_check(chart, u_range, v_range, grid=(11, 11)):
    return json.loads(_h3surf.beltrami_identity_check(chart, u_range, v_range, grid))


def s1_classify(a, c=None, t_range=(-1, 1), s_range=(-1, 1), grid=(11, 11)):
    return json.loads(_h3surf.s1_classify(a, c, t_range, s_range, grid))


def solve_pde(equation, lam, u0, boundary, x_range=(-1, 1), y_range=(-1, 1), grid=(33, 33)):
    return json.loads(_h3surf.solve_pde(equation, lam, u0, boundary, x_range, y_range, grid))
