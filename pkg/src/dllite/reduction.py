"""Graph homomorphism as query answering over an empty TBox.

``G1`` becomes the ABox ``{R(c_u, c_v) | (u, v) in E1}`` and ``G2`` a boolean
query with one atom ``R(x_u, x_v)`` per edge. The query holds iff some map
``V2 -> V1`` sends every edge of ``G2`` onto an edge of ``G1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core.graph import Graph
from .core.kb import Assertion, KnowledgeBase
from .core.query import Atom, ConjunctiveQuery, UnionQuery, Var
from .errors import BudgetExceeded, ValidationError

RELATION = "R"
DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class HomInstance:
    g1: Graph
    g2: Graph


def constant_for(v: str) -> str:
    return f"c{v}"


def variable_for(v: str) -> Var:
    return Var(f"x{v}")


def encode(inst: HomInstance) -> tuple[KnowledgeBase, UnionQuery]:
    """ABox/query pair whose entailment decides ``G2 -> G1``."""
    if not inst.g1.vertices:
        raise ValidationError("the target graph needs at least one vertex")
    if not inst.g2.vertices:
        raise ValidationError("the source graph needs at least one vertex")
    abox = frozenset(Assertion(RELATION, (constant_for(u), constant_for(v))) for u, v in inst.g1.edges)
    kb = KnowledgeBase(frozenset(), abox, frozenset(constant_for(v) for v in inst.g1.vertices))
    atoms = frozenset(Atom(RELATION, (variable_for(u), variable_for(v))) for u, v in inst.g2.edges)
    return kb, UnionQuery((ConjunctiveQuery((), atoms),))


def _index(g: Graph) -> tuple[list[str], dict[str, int]]:
    order = g.sorted_vertices()
    return order, {v: k for k, v in enumerate(order)}


def brute_force_hom(inst: HomInstance, budget: int = DEFAULT_BUDGET) -> bool:
    """Exhaustively decide whether ``G2`` maps homomorphically into ``G1``."""
    return find_hom(inst, budget) is not None


def find_hom(inst: HomInstance, budget: int = DEFAULT_BUDGET, chunk: int = 1 << 16) -> dict[str, str] | None:
    """First edge-preserving map ``V2 -> V1`` in lexicographic order, or ``None``.

    Candidate maps are enumerated as base-``|V1|`` numbers, a chunk at a time.
    """
    n1, n2 = len(inst.g1.vertices), len(inst.g2.vertices)
    total = n1**n2
    if total > budget:
        raise BudgetExceeded(f"{n1}^{n2} = {total} candidate maps exceed the budget of {budget}")
    order1, id1 = _index(inst.g1)
    order2, id2 = _index(inst.g2)
    if n1 == 0:
        return {} if n2 == 0 else None
    adj = np.zeros((n1, n1), dtype=bool)
    for u, v in inst.g1.edges:
        adj[id1[u], id1[v]] = True
    weights = n1 ** np.arange(n2 - 1, -1, -1, dtype=np.int64)
    src = np.array([id2[u] for u, _ in inst.g2.edges], dtype=np.int64)
    dst = np.array([id2[v] for _, v in inst.g2.edges], dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        maps = (codes[:, None] // weights[None, :]) % n1
        ok = adj[maps[:, src], maps[:, dst]].all(axis=1) if len(src) else np.ones(len(codes), dtype=bool)
        hits = np.flatnonzero(ok)
        if len(hits):
            row = maps[hits[0]]
            return {order2[k]: order1[int(row[k])] for k in range(n2)}
    return None
