"""
The half-graph on two copies of Q: vertices ``q+`` and ``q-`` for every
rational ``q``, with ``q+`` adjacent to ``r-`` exactly when ``q < r``.

Finite truncations are :class:`~qsym.graph.FiniteGraph` instances labelled
with :class:`Vertex`. An order automorphism of Q lifts to the half-graph in
two ways: ``up`` applies it to both copies, ``down`` applies it, negates, and
swaps the copies.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .autgrp import Permutation, automorphisms
from .backforth import AutReport, LazyAut, refute_order_colouring, verify
from .colouring import ColouringSpec, pair_colouring
from .config import configclass
from .exactq import OrderMap, enumerate_in, format_rational, parse_rational
from .exception import BudgetExhausted, RejectedInput
from .fileio import load
from .graph import FiniteGraph
from .logging import print_log

__all__ = ['Side', 'Vertex', 'Flavour', 'ArcKind', 'GraphAut', 'StructureReport', 'GraphAutReport',
           'truncation', 'support_grid', 'aut_apply', 'arc_witness', 'base_arc', 'check_structure',
           'predicted_group', 'lift_image', 'refute_graph_colouring', 'load_graph', 'dump_graph']


class Side(str, Enum):
    PLUS = '+'
    MINUS = '-'

    def flip(self) -> 'Side':
        return Side.MINUS if self is Side.PLUS else Side.PLUS


@dataclass(frozen=True, order=True)
class Vertex:
    value: Fraction
    side: Side

    def __post_init__(self):
        object.__setattr__(self, 'value', parse_rational(self.value))
        object.__setattr__(self, 'side', Side(self.side))

    def __str__(self):
        return f'{format_rational(self.value)}{self.side.value}'

    def to_plain(self) -> dict:
        return {'q': format_rational(self.value), 'side': self.side.value}

    @classmethod
    def from_plain(cls, plain: dict) -> 'Vertex':
        try:
            return cls(parse_rational(plain['q']), Side(plain['side']))
        except (KeyError, TypeError, ValueError) as e:
            raise RejectedInput(f'Malformed vertex {plain!r}: {e!r}')


class Flavour(str, Enum):
    UP = 'up'
    DOWN = 'down'


class ArcKind(str, Enum):
    PLUS_TO_MINUS = 'plus-to-minus'
    MINUS_TO_PLUS = 'minus-to-plus'


def _check_support(support: Sequence[Fraction], name: str) -> Tuple[Fraction, ...]:
    support = tuple(parse_rational(q) for q in support)
    if not support:
        raise RejectedInput(f'{name} must not be empty')
    for a, b in zip(support, support[1:]):
        if not a < b:
            raise RejectedInput(f'{name} must be strictly increasing: {format_rational(a)} >= {format_rational(b)}')
    return support


def truncation(support: Sequence[Fraction], minus_support: Optional[Sequence[Fraction]] = None) -> FiniteGraph:
    """Induced subgraph on ``q+`` for ``q`` in ``support`` and ``r-`` for ``r`` in ``minus_support``.

    Vertices are ordered plus copies first, then minus copies, each by value.
    ``minus_support`` defaults to ``support``.
    """
    plus = _check_support(support, 'support')
    minus = plus if minus_support is None else _check_support(minus_support, 'minus support')
    labels = [Vertex(q, Side.PLUS) for q in plus] + [Vertex(r, Side.MINUS) for r in minus]
    edges = [(i, len(plus) + j) for i, q in enumerate(plus) for j, r in enumerate(minus) if q < r]
    return FiniteGraph(tuple(labels), tuple(edges))


def support_grid(a: Fraction, b: Fraction, n: int) -> List[Fraction]:
    """``n`` evenly spaced rationals from ``a`` to ``b`` inclusive."""
    a, b = parse_rational(a), parse_rational(b)
    if n < 1:
        raise RejectedInput(f'Grid size must be positive, got {n}')
    if n == 1:
        return [a]
    if not a < b:
        raise RejectedInput(f'Grid needs a < b, got {format_rational(a)}, {format_rational(b)}')
    return [a + (b - a) * k / (n - 1) for k in range(n)]


@dataclass(frozen=True)
class GraphAut:
    """Automorphism of the half-graph lifted from an increasing order automorphism of Q."""
    order_part: Union[OrderMap, LazyAut]
    flavour: Flavour = Flavour.UP

    def __post_init__(self):
        object.__setattr__(self, 'flavour', Flavour(self.flavour))
        if isinstance(self.order_part, OrderMap) and not self.order_part.increasing:
            raise RejectedInput('The order part of a half-graph automorphism must be increasing')

    def gamma(self, q: Fraction) -> Fraction:
        if isinstance(self.order_part, OrderMap):
            return self.order_part(q)
        return self.order_part.image(q)

    def __call__(self, v: Vertex) -> Vertex:
        return aut_apply(self, v)

    def to_plain(self) -> dict:
        if isinstance(self.order_part, OrderMap):
            order_part = self.order_part.asdict()
        else:
            order_part = self.order_part.transcript()
        return {'flavour': self.flavour.value, 'order_part': order_part}


def aut_apply(a: GraphAut, v: Vertex) -> Vertex:
    """``up``: ``q+ -> g(q)+``, ``q- -> g(q)-``; ``down``: ``q+ -> (-g(q))-``, ``q- -> (-g(q))+``."""
    image = a.gamma(v.value)
    if a.flavour is Flavour.UP:
        return Vertex(image, v.side)
    return Vertex(-image, v.side.flip())


def base_arc() -> Tuple[Vertex, Vertex]:
    return Vertex(Fraction(0), Side.PLUS), Vertex(Fraction(1), Side.MINUS)


def arc_witness(q: Fraction, r: Fraction, kind: ArcKind) -> GraphAut:
    """An automorphism sending the base arc ``(0+, 1-)`` onto an arc of the edge ``q+ r-``.

    ``plus-to-minus`` targets ``(q+, r-)`` with ``g(x) = q + (r - q) x`` lifted up.
    ``minus-to-plus`` targets ``(r-, q+)`` with ``g(x) = -r + (r - q) x`` lifted
    down, so that ``-g(0) = r`` and ``-g(1) = q``.

    Raises:
        RejectedInput: unless ``q < r``.
    """
    q, r = parse_rational(q), parse_rational(r)
    kind = ArcKind(kind)
    if not q < r:
        raise RejectedInput(f'{format_rational(q)}+ and {format_rational(r)}- are adjacent only if q < r')
    if kind is ArcKind.PLUS_TO_MINUS:
        return GraphAut(OrderMap.affine(r - q, q), Flavour.UP)
    return GraphAut(OrderMap.affine(r - q, -r), Flavour.DOWN)


def predicted_group(n: int) -> List[Permutation]:
    """Automorphisms of a truncation on ``n`` support points: identity, the swap of
    ``max+`` with ``min-``, the reversal ``q_i± -> q_(n+1-i)∓`` and their product."""
    ident = tuple(range(2 * n))
    swap = list(ident)
    swap[n - 1], swap[n] = n, n - 1
    reversal = [n + (n - 1 - i) for i in range(n)] + [n - 1 - j for j in range(n)]
    product = [reversal[i] for i in swap]
    return sorted({ident, tuple(swap), tuple(reversal), tuple(product)})


@configclass(frozen=True)
class StructureReport:
    support: Tuple[Fraction, ...]
    bipartite: bool
    order_neighbourhood: bool
    minus_intersection: bool
    automorphism_group: bool
    group_order: int
    predicted_order: int
    edges: int
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.bipartite and self.order_neighbourhood and self.minus_intersection and self.automorphism_group

    def to_plain(self) -> dict:
        return {**self.asdict(), 'pass': self.passed}


def check_structure(support: Sequence[Fraction], order_cap: int = 10 ** 6) -> StructureReport:
    """Check the structural facts of a truncation.

    * bipartite with the plus and minus copies as classes;
    * ``q >= r`` iff ``N(q+)`` is contained in ``N(r+)``, for all support points;
    * ``N(q-)`` is the intersection of ``N(v)`` over ``v ~ q+``, minus ``q+``, for non-maximal ``q``;
    * the automorphism group is :func:`predicted_group`.
    """
    support = _check_support(support, 'support')
    g = truncation(support)
    n = len(support)
    nbrs = g.neighbours
    failures = []

    same_side = [(i, j) for i, j in g.edges if g.labels[i].side is g.labels[j].side]
    bipartite = not same_side and (g.n < 2 or _is_bipartite(g))
    failures += [f'edge {g.labels[i]} {g.labels[j]} inside one copy' for i, j in same_side]

    order_ok = True
    for i, q in enumerate(support):
        for j, r in enumerate(support):
            if (q >= r) != (nbrs[i] <= nbrs[j]):
                order_ok = False
                failures.append(f'order/neighbourhood mismatch at q={format_rational(q)}, r={format_rational(r)}')

    minus_ok = True
    for i, q in enumerate(support[:-1]):
        common = frozenset.intersection(*(nbrs[v] for v in nbrs[i])) - {i}
        if common != nbrs[n + i]:
            minus_ok = False
            failures.append(f'N({format_rational(q)}-) differs from the common neighbourhood')

    group = automorphisms(g, order_cap)
    predicted = predicted_group(n)
    group_ok = group.element_set == set(predicted)
    if not group_ok:
        failures.append(f'automorphism group of order {group.order} differs from the predicted group')

    report = StructureReport(support=support, bipartite=bipartite, order_neighbourhood=order_ok,
                             minus_intersection=minus_ok, automorphism_group=group_ok,
                             group_order=group.order, predicted_order=len(predicted), edges=len(g.edges),
                             failures=tuple(failures))
    print_log(f'Structure of the truncation on {n} points: {"pass" if report.passed else "FAIL"}', __name__)
    return report


def _is_bipartite(g: FiniteGraph) -> bool:
    return nx.is_bipartite(g.to_networkx())


def lift_image(a: GraphAut, support: Sequence[Fraction]) -> Tuple[FiniteGraph, bool]:
    """The truncation on the image support and whether ``a`` maps the truncation on ``support`` onto it
    bijectively on vertices and edges."""
    g = truncation(support)
    images = [a(v) for v in g.labels]
    image_support = sorted(v.value for v in images if v.side is Side.PLUS)
    target = truncation(image_support)
    if set(images) != set(target.labels) or len(set(images)) != len(images):
        return target, False
    index = {v: k for k, v in enumerate(target.labels)}
    mapped = {tuple(sorted((index[images[i]], index[images[j]]))) for i, j in g.edges}
    return target, mapped == set(target.edges)


@configclass(frozen=True)
class GraphAutReport:
    samples: int
    plus_colour_violations: int
    minus_colour_violations: int
    adjacency_violations: int
    failed_queries: int
    moved_vertices: int
    pair_alphabet: int
    alphabet_bound: int
    order: AutReport

    @property
    def passed(self) -> bool:
        violations = self.plus_colour_violations + self.minus_colour_violations + self.adjacency_violations
        return (violations == 0 and self.failed_queries == 0 and self.moved_vertices >= 1
                and self.pair_alphabet <= self.alphabet_bound and self.order.passed)

    def to_plain(self) -> dict:
        plain = self.asdict()
        plain['order'] = self.order.to_plain()
        plain['pass'] = self.passed
        return plain


def refute_graph_colouring(cplus: ColouringSpec, cminus: ColouringSpec, budget: int,
                           samples: int = 1000) -> Tuple[GraphAut, GraphAutReport]:
    """A nontrivial automorphism of the half-graph preserving the vertex colouring
    ``q+ -> cplus(q)``, ``q- -> cminus(q)``.

    The pair colouring ``q -> (cplus(q), cminus(q))`` is refuted on Q and the
    witness is lifted up. On ``samples`` sampled rationals the report checks both
    colourings, adjacency (images of the sorted samples are strictly increasing,
    so ``q < r`` iff ``g(q) < g(r)`` on all sampled pairs) and that some vertex moves.

    Raises:
        Inconclusive, BudgetExhausted: if no verified witness could be built.
    """
    product = pair_colouring(cplus, cminus)
    lazy = refute_order_colouring(product, budget)
    aut = GraphAut(lazy, Flavour.UP)
    order_report = verify(lazy, samples)

    points = enumerate_in(lazy.interval.widened(), samples)
    mapped: Dict[Fraction, Fraction] = {}
    plus_bad = minus_bad = failed = 0
    for q in points:
        try:
            plus_image = aut(Vertex(q, Side.PLUS))
            minus_image = aut(Vertex(q, Side.MINUS))
        except BudgetExhausted:
            failed += 1
            continue
        mapped[q] = plus_image.value
        plus_bad += cplus.colour_of(q) != cplus.colour_of(plus_image.value)
        minus_bad += cminus.colour_of(q) != cminus.colour_of(minus_image.value)
    ordered = sorted(mapped.items())
    adjacency_bad = sum(1 for (_, a), (_, b) in zip(ordered, ordered[1:]) if not a < b)
    moved = 2 * len({q for q, y in mapped.items() if q != y} | {x for x, y in lazy.anchors if x != y})

    n = max(cplus.alphabet, cminus.alphabet)
    report = GraphAutReport(samples=len(points), plus_colour_violations=plus_bad,
                            minus_colour_violations=minus_bad, adjacency_violations=adjacency_bad,
                            failed_queries=failed, moved_vertices=moved, pair_alphabet=product.alphabet,
                            alphabet_bound=n * n, order=order_report)
    print_log(f'Half-graph witness on {lazy.interval}: {"pass" if report.passed else "FAIL"}, '
              f'{moved} of {2 * len(points)} sampled vertices moved', __name__)
    if not report.passed:
        print_log(f'Failing report: {report}', __name__, level=logging.WARNING)
    return aut, report


def load_graph(source: Union[str, Path, dict]) -> FiniteGraph:
    """Read a graph in the half-graph form ``{"vertices": [{"q": ..., "side": ...}], "edges": ...}``
    or the edge-list form ``{"n": ..., "edges": ...}``.

    A half-graph file without ``edges`` is regenerated from the adjacency rule.
    """
    plain = source
    if isinstance(source, (str, Path)):
        try:
            plain = load(source)
        except TypeError as e:
            raise RejectedInput(f'Cannot read graph {source}: {e}') from e
    if not isinstance(plain, dict):
        raise RejectedInput(f'A graph must be a mapping, found {type(plain).__name__}')
    if 'vertices' in plain:
        if not isinstance(plain['vertices'], list):
            raise RejectedInput(f'Vertices must be a list, found {type(plain["vertices"]).__name__}')
        labels = tuple(Vertex.from_plain(v) for v in plain['vertices'])
        if 'edges' in plain:
            if not isinstance(plain['edges'], list):
                raise RejectedInput(f'Edges must be a list of pairs, found {type(plain["edges"]).__name__}')
            return FiniteGraph(labels, tuple(plain['edges']))
        edges = [(i, j) for i, u in enumerate(labels) for j, v in enumerate(labels)
                 if u.side is Side.PLUS and v.side is Side.MINUS and u.value < v.value]
        return FiniteGraph(labels, tuple(edges))
    if 'n' in plain:
        return FiniteGraph.from_edge_list(plain['n'], plain.get('edges', []))
    raise RejectedInput('A graph needs either "vertices" or "n"')


def dump_graph(g: FiniteGraph) -> dict:
    if g.labels and all(isinstance(v, Vertex) for v in g.labels):
        return {'vertices': [v.to_plain() for v in g.labels], 'edges': [list(e) for e in g.edges]}
    return g.to_plain()
