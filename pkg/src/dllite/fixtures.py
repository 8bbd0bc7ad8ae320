"""The two-structure example showing that ``forall y P(x,y) -> A(y)`` is not a concept.

``I`` has ``d`` pointing at ``e1`` and ``e2``, both inside ``A``; ``J`` has
``d'`` pointing at ``e'`` and ``A`` empty. The relation ``{({d}, d'),
({e1, e2}, e')}`` makes them DL-similar, yet ``d`` satisfies the formula and
``d'`` does not.

``I_SINGLE`` is the variant in which only ``e1`` is in ``A``.
"""

from __future__ import annotations

from .core.interpretation import Interpretation
from .core.fo import Formula
from .simulation import SimulationRelation

I_TEXT = """\
domain: d e1 e2
concept A = {e1, e2}
role P = {(d, e1), (d, e2)}
"""

I_SINGLE_TEXT = """\
domain: d e1 e2
concept A = {e1}
role P = {(d, e1), (d, e2)}
"""

J_TEXT = """\
domain: d' e'
concept A = {}
role P = {(d', e')}
"""

PHI_TEXT = "forall y . P(x, y) -> A(y)"

EXAMPLE_PAIRS = ((frozenset({"d"}), "d'"), (frozenset({"e1", "e2"}), "e'"))


def example_i() -> Interpretation:
    from .syntax import parse_interpretation

    return parse_interpretation(I_TEXT)


def example_i_single() -> Interpretation:
    from .syntax import parse_interpretation

    return parse_interpretation(I_SINGLE_TEXT)


def example_j() -> Interpretation:
    from .syntax import parse_interpretation

    return parse_interpretation(J_TEXT)


def example_phi() -> Formula:
    from .syntax import parse_formula

    return parse_formula(PHI_TEXT)


def example_relation(kind: str = "combined") -> SimulationRelation:
    return SimulationRelation(kind, frozenset(EXAMPLE_PAIRS))
