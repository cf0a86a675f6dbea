"""Exact symbolic engine for algebraic elliptic KZB connection forms.

The heavy lifting happens in the C++ extension; this package re-exports its
surface.
"""

from ellkzb._core import (
    Connection,
    P_poly,
    bernoulli,
    bracket_string,
    check_curve_relation,
    connection,
    connection_from_json,
    eisenstein_g,
    eval_fzag,
    lyndon_words,
    numeric_checks,
    p_poly,
    q_poly,
    r_fun,
    solve_gauge,
    symbolic_checks,
    witt_dimension,
)

__all__ = [
    "Connection",
    "P_poly",
    "bernoulli",
    "bracket_string",
    "check_curve_relation",
    "connection",
    "connection_from_json",
    "eisenstein_g",
    "eval_fzag",
    "lyndon_words",
    "numeric_checks",
    "p_poly",
    "q_poly",
    "r_fun",
    "solve_gauge",
    "symbolic_checks",
    "witt_dimension",
]
