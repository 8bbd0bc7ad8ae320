"""Abstract syntax and finite-model semantics."""

from .concepts import (
    Atomic,
    Axiom,
    Concept,
    ConceptInclusion,
    Conj,
    Exists,
    ExistsQualified,
    NegAtomic,
    NegExists,
    Role,
    RoleInclusion,
    conj,
    conjuncts,
    depth,
    is_left,
    is_negative_only,
    is_right,
)
from .fo import (
    FoAnd,
    FoAtom,
    FoExists,
    FoForall,
    FoImplies,
    FoNot,
    FoOr,
    Formula,
    concept_to_fo,
    eval_fo,
    fo_models,
    free_vars,
    satisfying_elements,
)
from .graph import Graph
from .interpretation import (
    Interpretation,
    eval_concept,
    eval_role,
    interpretation_of_abox,
    kb_violations,
    models_axiom,
    models_kb,
)
from .kb import Assertion, KnowledgeBase
from .query import Atom, Const, ConjunctiveQuery, Term, UnionQuery, Var
