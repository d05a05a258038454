"""
Finite simple graphs on vertices ``0 .. n-1`` with optional labels.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, FrozenSet, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .exception import RejectedInput

__all__ = ['FiniteGraph', 'complete_graph', 'path_graph', 'cycle_graph']


def _is_integer(v: Any) -> bool:
    return isinstance(v, (int, np.integer)) and not isinstance(v, bool)


def _vertex_index(v: Any) -> int:
    if not _is_integer(v):
        raise RejectedInput(f'A vertex index must be an integer, found {v!r}')
    return int(v)


@dataclass(frozen=True)
class FiniteGraph:
    """Undirected graph without loops or multi-edges.

    ``labels`` name the vertices (half-graph vertices, or plain indices);
    ``edges`` hold index pairs ``(i, j)`` with ``i < j``, sorted.
    """
    labels: Tuple[Any, ...]
    edges: Tuple[Tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise RejectedInput('Vertex labels must be distinct')
        normalized = set()
        for edge in self.edges:
            if not isinstance(edge, (tuple, list)) or len(edge) != 2:
                raise RejectedInput(f'An edge joins two vertices, found {edge!r}')
            i, j = (_vertex_index(v) for v in edge)
            if not (0 <= i < n and 0 <= j < n):
                raise RejectedInput(f'Edge {edge} references a vertex outside 0..{n - 1}')
            if i == j:
                raise RejectedInput(f'Loop at vertex {i}')
            pair = (min(i, j), max(i, j))
            if pair in normalized:
                raise RejectedInput(f'Multi-edge {pair}')
            normalized.add(pair)
        object.__setattr__(self, 'labels', tuple(self.labels))
        object.__setattr__(self, 'edges', tuple(sorted(normalized)))

    @classmethod
    def from_edge_list(cls, n: int, edges: Sequence[Sequence[int]]) -> 'FiniteGraph':
        if not _is_integer(n) or n < 0:
            raise RejectedInput(f'Vertex count must be a nonnegative integer, got {n!r}')
        if not isinstance(edges, (tuple, list)):
            raise RejectedInput(f'Edges must be a list of pairs, found {type(edges).__name__}')
        return cls(labels=tuple(range(n)), edges=tuple(edges))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.n

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            adj[i, j] = adj[j, i] = True
        return adj

    @cached_property
    def neighbours(self) -> Tuple[FrozenSet[int], ...]:
        nbrs: List[set] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return tuple(frozenset(s) for s in nbrs)

    def degrees(self) -> List[int]:
        return [len(s) for s in self.neighbours]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def index(self, label: Any) -> int:
        return self.labels.index(label)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def to_plain(self) -> dict:
        """The generic edge-list form ``{"n": ..., "edges": [[i, j], ...]}``."""
        return {'n': self.n, 'edges': [list(e) for e in self.edges]}


def complete_graph(n: int) -> FiniteGraph:
    return FiniteGraph.from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> FiniteGraph:
    return FiniteGraph.from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> FiniteGraph:
    if n < 3:
        raise RejectedInput(f'A cycle needs at least 3 vertices, got {n}')
    return FiniteGraph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])
