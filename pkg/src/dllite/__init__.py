"""Query answering and simulation analysis for DL-Lite_{R,⊓} knowledge bases."""

from .answering import AnswerSet, certain_answers, entails, evaluate_disjunct, is_consistent
from .chase import ChaseModel, answers_over_chase, chase
from .core import *  # noqa: F401,F403
from .errors import BudgetExceeded, DLError, ParseError, SourceSpan, ValidationError
from .reduction import HomInstance, brute_force_hom, encode
from .reformulation import RoleHierarchy, RewriteTrace, perfect_reformulation, reformulate, role_closure
from .simulation import (
    ClosureReport,
    SimulationRelation,
    bounded_equivalence,
    check_simulation,
    concept_preserved,
    dl_similar,
    fo_closed_under,
    maximal_simulation,
)
from .syntax import *  # noqa: F401,F403

__version__ = "0.1.0"
