"""Local cohomology and Castelnuovo-Mumford regularity over k[y][x]."""

from .cech import (
    CERTIFIED,
    WINDOW_BOUNDED,
    CechSpec,
    EndReport,
    cohomological_dimension,
    cohomology_piece,
    end_of_cohomology,
    localized_piece,
    prop211_reg,
    reg_polynomial_module,
    reg_wrt,
)
from .dsl import ScriptSemanticError, ScriptSyntaxError, parse, render_script
from .frobenius import f_depth_probe, frobenius_on_piece
from .groebner import FreeModule, ModulePresentation, buchberger
from .poly import GF, GENERAL, MINUS_INF, MULTIGRADED, QQ, AlgebraError, Polynomial, RingSpec
from .report import execute, render
from .resolution import BettiTable, depth, grade, minimal_free_resolution, reg_thm213
from .verify import STATEMENTS, corpus, run_suite, verify

__version__ = "0.1.0"

__all__ = [
    "CERTIFIED", "WINDOW_BOUNDED", "CechSpec", "EndReport", "cohomological_dimension",
    "cohomology_piece", "end_of_cohomology", "localized_piece", "prop211_reg",
    "reg_polynomial_module", "reg_wrt", "ScriptSemanticError", "ScriptSyntaxError", "parse",
    "render_script", "f_depth_probe", "frobenius_on_piece", "FreeModule", "ModulePresentation",
    "buchberger", "GF", "GENERAL", "MINUS_INF", "MULTIGRADED", "QQ", "AlgebraError", "Polynomial",
    "RingSpec", "execute", "render", "BettiTable", "depth", "grade", "minimal_free_resolution",
    "reg_thm213", "STATEMENTS", "corpus", "run_suite", "verify",
]
