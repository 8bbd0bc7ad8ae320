from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError


@dataclass(frozen=True)
class Graph:
    """Directed graph; self-loops allowed, vertices are strings."""

    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        stray = {v for e in self.edges for v in e} - self.vertices
        if stray:
            raise ValidationError(f"edges reference undeclared vertices: {sorted(stray)}")

    @classmethod
    def from_edges(cls, edges, vertices=()) -> Graph:
        edges = frozenset((str(a), str(b)) for a, b in edges)
        vs = {str(v) for v in vertices} | {v for e in edges for v in e}
        return cls(frozenset(vs), edges)

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices, key=_vertex_key)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges, key=lambda e: (_vertex_key(e[0]), _vertex_key(e[1])))


def _vertex_key(v: str):
    return (0, int(v), "") if v.isdigit() else (1, 0, v)
