"""Satisfiability, provability and completeness of modal formulas.

Covers the normal modal logics between K and S5 obtained by adding any of
the axioms D, T, 4 and 5 to K. A formula is complete for a logic when it decides
every formula over its own variables.
"""

from .complete import (complete, complete_wrt_model, hardness_reduction,
                       reduction_up_to_depth, satisfiable_and_complete)
from .errors import (FormulaSyntaxError, InternalError, ModcompError,
                     ModelFormatError, PreconditionError, ResourceLimitError)
from .formula import Formula, parse
from .kripke import PointedModel, check, parse_model
from .logics import (D, D4, K, K4, K5, K45, KD5, KD45, LOGICS, S4, S5, T, Logic,
                     get_logic)
from .prover import consistent, find_model, provable, satisfiable
from .verdict import Verdict

__all__ = [
    "complete", "complete_wrt_model", "hardness_reduction", "reduction_up_to_depth",
    "satisfiable_and_complete", "FormulaSyntaxError", "InternalError", "ModcompError",
    "ModelFormatError", "PreconditionError", "ResourceLimitError", "Formula", "parse",
    "PointedModel", "check", "parse_model", "D", "D4", "K", "K4", "K5", "K45", "KD5",
    "KD45", "LOGICS", "S4", "S5", "T", "Logic", "get_logic", "consistent", "find_model",
    "provable", "satisfiable", "Verdict",
]
