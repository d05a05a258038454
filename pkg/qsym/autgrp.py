"""
Automorphism groups of finite graphs, fully enumerated, and the quantities
read off them: orbits, point stabilizers, motion, distinguishing colourings
and the distinguishing number.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from networkx.utils import UnionFind

from .exception import OrderCapExceeded, RejectedInput, SearchCapExceeded
from .graph import FiniteGraph
from .logging import print_log

__all__ = ['Permutation', 'PermGroup', 'automorphisms', 'naive_automorphisms', 'motion', 'element_motion',
           'orbits', 'stabilizer_orbits', 'colour_stabilizer', 'is_distinguishing', 'distinguishing_number',
           'restricted_growth_strings']

Permutation = Tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p o q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def element_motion(p: Permutation) -> int:
    """Number of points moved by ``p``."""
    return sum(1 for i, j in enumerate(p) if i != j)


def closure(generators: Sequence[Permutation], n: int) -> Set[Permutation]:
    """The group generated by ``generators``."""
    group = {identity(n)}
    frontier = list(group)
    while frontier:
        new = []
        for p in frontier:
            for g in generators:
                h = compose(g, p)
                if h not in group:
                    group.add(h)
                    new.append(h)
        frontier = new
    return group


@dataclass(frozen=True)
class PermGroup:
    """A permutation group on ``0 .. degree-1`` given by all of its elements, identity first."""
    degree: int
    elements: Tuple[Permutation, ...]
    generators: Tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, p):
        return tuple(p) in self.element_set

    @cached_property
    def element_set(self) -> Set[Permutation]:
        return set(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_closed(self) -> bool:
        """Contains the identity and is closed under composition and inverses."""
        elements = self.element_set
        if self.elements[0] != identity(self.degree):
            return False
        if any(inverse(p) not in elements for p in elements):
            return False
        return all(compose(p, q) in elements for p in elements for q in elements)

    def generates(self) -> bool:
        """Whether the generators generate exactly the listed elements."""
        return closure(self.generators, self.degree) == self.element_set

    def to_plain(self) -> dict:
        return {
            'degree': self.degree,
            'order': self.order,
            'generators': [list(p) for p in self.generators],
            'elements': [list(p) for p in self.elements],
        }

    @classmethod
    def from_elements(cls, degree: int, elements: Sequence[Permutation]) -> 'PermGroup':
        """Wrap a complete element list; generators are picked greedily in element order."""
        elements = [tuple(p) for p in elements]
        ident = identity(degree)
        elements.sort(key=lambda p: p != ident)
        generators: List[Permutation] = []
        generated = {ident}
        for p in elements:
            if p not in generated:
                generators.append(p)
                generated = closure(generators, degree)
        return cls(degree, tuple(elements), tuple(generators))


def is_automorphism(adjacency: np.ndarray, p: Sequence[int]) -> bool:
    p = np.asarray(p, dtype=int)
    return bool(np.array_equal(adjacency[np.ix_(p, p)], adjacency))


def naive_automorphisms(g: FiniteGraph) -> PermGroup:
    """Filter all ``n!`` permutations. Only for small graphs."""
    adj = g.adjacency
    found = [p for p in permutations(range(g.n)) if is_automorphism(adj, p)]
    return PermGroup.from_elements(g.n, found)


def _refine(neighbours: Sequence[Sequence[int]], colours: Sequence[int]) -> Tuple[List[int], Tuple]:
    """Colour refinement to the coarsest equitable partition.

    Cells are renumbered by sorted signature, so the result commutes with
    relabelling the graph. The trace records the cell sizes of every round.
    """
    colours = list(colours)
    trace = []
    while True:
        signatures = [(colours[v], tuple(sorted(Counter(colours[u] for u in nbrs).items())))
                      for v, nbrs in enumerate(neighbours)]
        ranking = {s: k for k, s in enumerate(sorted(set(signatures)))}
        refined = [ranking[s] for s in signatures]
        trace.append(tuple(sorted(Counter(refined).items())))
        if len(ranking) == len(set(colours)):
            return refined, tuple(trace)
        colours = refined


def _target_cell(colours: Sequence[int]) -> Optional[Tuple[int, int]]:
    """(colour, lowest vertex) of the first largest non-singleton cell, or None if discrete."""
    sizes = Counter(colours)
    largest = max(sizes.values())
    if largest == 1:
        return None
    colour = min(c for c, size in sizes.items() if size == largest)
    return colour, colours.index(colour)


def _individualize(colours: Sequence[int], v: int) -> List[int]:
    colours = list(colours)
    colours[v] = -1
    return colours


class _Search:
    """Backtracking over individualizations, compared against one fixed reference path."""

    def __init__(self, g: FiniteGraph, order_cap: int):
        self.g = g
        self.order_cap = order_cap
        self.neighbours = [sorted(s) for s in g.neighbours]
        self.adjacency = g.adjacency
        self.path = []
        self.found: List[Permutation] = []
        self.leaves = 0

    def _reference(self, level: int):
        # the reference path individualizes the lowest vertex of the first largest cell
        while len(self.path) <= level:
            if not self.path:
                colours, trace = _refine(self.neighbours, self.g.degrees())
            else:
                colours, trace, (_, v) = self.path[-1]
                colours, trace = _refine(self.neighbours, _individualize(colours, v))
            self.path.append((colours, trace, _target_cell(colours)))
        return self.path[level]

    def run(self) -> List[Permutation]:
        if self.g.n == 0:
            return [()]
        colours, trace = _refine(self.neighbours, self.g.degrees())
        self._descend(0, colours, trace)
        return self.found

    def _descend(self, level: int, colours: List[int], trace: Tuple):
        ref_colours, ref_trace, target = self._reference(level)
        if trace != ref_trace:
            return
        if target is None:
            self.leaves += 1
            position = {c: w for w, c in enumerate(colours)}
            p = tuple(position[c] for c in ref_colours)
            if is_automorphism(self.adjacency, p):
                self.found.append(p)
                if len(self.found) > self.order_cap:
                    raise OrderCapExceeded(self.order_cap)
            return
        cell, _ = target
        for w in [u for u, c in enumerate(colours) if c == cell]:
            refined, refined_trace = _refine(self.neighbours, _individualize(colours, w))
            self._descend(level + 1, refined, refined_trace)


def automorphisms(g: FiniteGraph, order_cap: int = 10 ** 6) -> PermGroup:
    """The full automorphism group of ``g``.

    The initial partition is by degree. The search refines it to an equitable
    partition, individualizes the lowest vertex of the first largest cell on a
    reference path, and tries every vertex of the matching cell on the other
    side; candidate maps are checked at the leaves. The identity comes first.

    Raises:
        OrderCapExceeded: if the group has more than ``order_cap`` elements.
    """
    if order_cap < 1:
        raise RejectedInput(f'Order cap must be positive, got {order_cap}')
    search = _Search(g, order_cap)
    found = search.run()
    group = PermGroup.from_elements(g.n, found)
    print_log(f'Automorphism group of order {group.order} on {g.n} vertices '
              f'({search.leaves} leaves, {len(group.generators)} generators)', __name__, level=logging.DEBUG)
    return group


def motion(grp: PermGroup) -> Optional[int]:
    """Least number of points moved by a non-identity element; None for the trivial group."""
    if grp.is_trivial():
        return None
    return min(element_motion(p) for p in grp.elements[1:])


def _orbits_of(elements: Sequence[Permutation], degree: int) -> List[List[int]]:
    uf = UnionFind(range(degree))
    for p in elements:
        for i, j in enumerate(p):
            uf.union(i, j)
    return sorted(sorted(s) for s in uf.to_sets())


def orbits(grp: PermGroup) -> List[List[int]]:
    """Orbit partition, each orbit sorted, orbits ordered by least element."""
    return _orbits_of(grp.generators, grp.degree)


def stabilizer_orbits(grp: PermGroup, v: int) -> List[List[int]]:
    """Orbits of the point stabilizer of ``v``."""
    if not 0 <= v < grp.degree:
        raise RejectedInput(f'Vertex {v} outside 0..{grp.degree - 1}')
    return _orbits_of([p for p in grp.elements if p[v] == v], grp.degree)


def _check_colouring(grp: PermGroup, colours: Sequence[int]):
    if len(colours) != grp.degree:
        raise RejectedInput(f'Colouring has {len(colours)} entries for {grp.degree} vertices')


def colour_stabilizer(grp: PermGroup, colours: Sequence[int]) -> List[Permutation]:
    """All elements preserving the vertex colouring."""
    _check_colouring(grp, colours)
    c = np.asarray(colours)
    return [p for p in grp.elements if np.array_equal(c[list(p)], c)]


def _preserves(p: Permutation, colours: Sequence[int]) -> bool:
    return all(colours[j] == colours[i] for i, j in enumerate(p))


def is_distinguishing(g: FiniteGraph, colours: Sequence[int], grp: Optional[PermGroup] = None) -> bool:
    """True iff no non-identity automorphism preserves the colouring."""
    grp = automorphisms(g) if grp is None else grp
    _check_colouring(grp, colours)
    return not any(_preserves(p, colours) for p in grp.elements[1:])


def restricted_growth_strings(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Colourings of ``n`` vertices using exactly ``k`` colours, numbered in order of first use, lexicographic."""
    word = [0] * n

    def extend(i: int, used: int):
        if n - i < k - used:
            return
        if i == n:
            yield tuple(word)
            return
        for colour in range(min(used + 1, k)):
            word[i] = colour
            yield from extend(i + 1, max(used, colour + 1))

    yield from extend(0, 0)


def distinguishing_number(g: FiniteGraph, max_k: int, search_cap: int = 10 ** 7,
                          grp: Optional[PermGroup] = None) -> Optional[int]:
    """Least number of colours of a distinguishing colouring, or None if it exceeds ``max_k``.

    Colourings are tried with colours numbered in order of first use, which is
    enough since renaming colours does not change whether a colouring is
    distinguishing. Each colouring is rejected at the first non-identity
    element preserving it.

    Raises:
        SearchCapExceeded: after testing more than ``search_cap`` colourings.
    """
    if max_k < 1:
        raise RejectedInput(f'max_k must be positive, got {max_k}')
    grp = automorphisms(g) if grp is None else grp
    nontrivial = grp.elements[1:]
    if not nontrivial:
        return 1
    tested = 0
    for k in range(1, min(max_k, g.n) + 1):
        for colours in restricted_growth_strings(g.n, k):
            tested += 1
            if tested > search_cap:
                raise SearchCapExceeded(search_cap)
            if not any(_preserves(p, colours) for p in nontrivial):
                print_log(f'Distinguishing {k}-colouring {list(colours)} after {tested} colourings', __name__,
                          level=logging.DEBUG)
                return k
    return None
