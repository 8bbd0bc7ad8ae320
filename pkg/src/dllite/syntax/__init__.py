"""Text formats: ``.dl`` knowledge bases, ``.dlq`` queries, ``.int`` interpretations, ``.graph`` edge lists."""

from .parser import (
    parse_concept,
    parse_formula,
    parse_graph,
    parse_interpretation,
    parse_kb,
    parse_query,
    parse_relation,
    parse_role,
)
from .printer import (
    print_axiom,
    print_concept,
    print_disjunct,
    print_formula,
    print_graph,
    print_interpretation,
    print_kb,
    print_query,
    print_relation,
    print_role,
)
