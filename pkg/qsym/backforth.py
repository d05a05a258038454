"""
Lazy back-and-forth construction of a nontrivial colour-preserving order
automorphism of Q.

The automorphism is an infinite object; :class:`LazyAut` holds its finite
state: the anchors revealed so far, together with the convention that the
map is the identity outside the operating interval of its dense region.
Every query either reads an anchor or extends the partial isomorphism by one
witness found with :func:`~qsym.colouring.find_in`.
"""

import logging
from bisect import bisect_left
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .colouring import ColouringSpec, DenseRegion, dense_interval, dump_colouring, find_in
from .config import configclass
from .exactq import Interval, OrderMap, enumerate_in, format_rational, parse_rational, simplest_in
from .exception import BudgetExhausted, RejectedInput
from .logging import print_log

__all__ = ['AUDIT', 'LazyAut', 'AutReport', 'seed_aut', 'image', 'preimage', 'verify',
           'refute_order_colouring', 'replay', 'closed_form']

# re-check the partial-isomorphism invariants after every insertion
AUDIT = False


class LazyAut:
    """Partially revealed order automorphism of Q, preserving a colouring.

    Anchors ``(x, y)`` are strictly increasing in both coordinates and lie inside
    ``region.interval``, whose endpoints act as fixed sentinels. Queries mutate
    the anchor memo, so an instance must not be queried from two threads at once.
    """

    def __init__(self, spec: ColouringSpec, region: DenseRegion, seed: Tuple[Fraction, Fraction], budget: int):
        if budget < 1:
            raise RejectedInput(f'Search budget must be positive, got {budget}')
        x0, y0 = seed
        if x0 == y0:
            raise RejectedInput(f'Seed anchor must move a point, got ({x0}, {y0})')
        self.spec = spec
        self.region = region
        self.seed = (x0, y0)
        self.budget = budget
        self.query_log: List[Tuple[str, Fraction, Fraction]] = []
        self._xs: List[Fraction] = []
        self._ys: List[Fraction] = []
        self._fwd: Dict[Fraction, Fraction] = {}
        self._back: Dict[Fraction, Fraction] = {}
        self._insert(x0, y0)

    @property
    def anchors(self) -> List[Tuple[Fraction, Fraction]]:
        return [(x, self._fwd[x]) for x in self._xs]

    @property
    def interval(self) -> Interval:
        return self.region.interval

    def __len__(self):
        return len(self._xs)

    def __repr__(self):
        return f'LazyAut(region={self.interval}, seed={self.seed}, anchors={len(self)})'

    def _insert(self, x: Fraction, y: Fraction):
        k = bisect_left(self._xs, x)
        self._xs.insert(k, x)
        self._ys.insert(k, y)
        self._fwd[x] = y
        self._back[y] = x
        if AUDIT:
            self._audit_at(k)

    def _audit_at(self, k: int):
        x, y = self._xs[k], self._ys[k]
        assert self.interval.contains(x) and self.interval.contains(y), f'anchor ({x}, {y}) outside {self.interval}'
        assert self.spec.colour_of(x) == self.spec.colour_of(y), f'anchor ({x}, {y}) changes colour'
        if k > 0:
            assert self._xs[k - 1] < x and self._ys[k - 1] < y, f'anchor ({x}, {y}) breaks order on the left'
        if k + 1 < len(self._xs):
            assert x < self._xs[k + 1] and y < self._ys[k + 1], f'anchor ({x}, {y}) breaks order on the right'
        assert self._fwd.get(self.seed[0]) == self.seed[1] != self.seed[0], 'seed anchor lost'

    def audit(self):
        """Check all invariants over the whole anchor list."""
        assert len(self._xs) == len(self._ys) == len(self._fwd) == len(self._back)
        for k in range(len(self._xs)):
            self._audit_at(k)

    def _extend(self, q: Fraction, sources: List[Fraction], targets: List[Fraction], direction: str) -> Fraction:
        k = bisect_left(sources, q)
        lower = targets[k - 1] if k > 0 else self.interval.lower
        upper = targets[k] if k < len(targets) else self.interval.upper
        gap = Interval(lower, upper)
        colour = self.spec.colour_of(q)
        found = find_in(self.spec, colour, gap, self.budget)
        if found is None:
            raise BudgetExhausted(f'No partner of colour {colour} for {format_rational(q)} in {gap}', self.budget)
        print_log(f'{direction} {format_rational(q)} -> {format_rational(found)} in {gap}', __name__,
                  level=logging.DEBUG)
        self.query_log.append((direction, q, found))
        return found

    def image(self, q: Fraction) -> Fraction:
        q = parse_rational(q)
        if not self.interval.contains(q):
            return q
        if q not in self._fwd:
            self._insert(q, self._extend(q, self._xs, self._ys, 'forth'))
        return self._fwd[q]

    def preimage(self, q: Fraction) -> Fraction:
        q = parse_rational(q)
        if not self.interval.contains(q):
            return q
        if q not in self._back:
            self._insert(self._extend(q, self._ys, self._xs, 'back'), q)
        return self._back[q]

    def transcript(self) -> dict:
        return {
            'colouring': dump_colouring(self.spec),
            'region': self.region.to_plain(),
            'budget': self.budget,
            'seed': [format_rational(v) for v in self.seed],
            'anchors': [[format_rational(x), format_rational(y)] for x, y in self.anchors],
            'query_log': [[d, format_rational(q), format_rational(a)] for d, q, a in self.query_log],
        }


def image(a: LazyAut, q: Fraction) -> Fraction:
    return a.image(q)


def preimage(a: LazyAut, q: Fraction) -> Fraction:
    return a.preimage(q)


def seed_aut(spec: ColouringSpec, region: DenseRegion, budget: int) -> LazyAut:
    """Start the construction at the first rational of the region and its first partner of the same colour.

    The partner is searched to the right of ``x0`` first, then to the left.
    """
    interval = region.interval
    x0 = simplest_in(interval)
    colour = spec.colour_of(x0)
    y0 = find_in(spec, colour, Interval(x0, interval.upper), budget)
    if y0 is None:
        y0 = find_in(spec, colour, Interval(interval.lower, x0), budget)
    if y0 is None:
        raise BudgetExhausted(f'No seed partner of colour {colour} for {format_rational(x0)} in {interval}', budget)
    print_log(f'Seed anchor {format_rational(x0)} -> {format_rational(y0)} in {interval}', __name__)
    return LazyAut(spec, region, (x0, y0), budget)


def refute_order_colouring(spec: ColouringSpec, budget: int) -> LazyAut:
    """A nontrivial colour-preserving order automorphism of Q, revealed lazily."""
    return seed_aut(spec, dense_interval(spec, budget), budget)


@configclass(frozen=True)
class AutReport:
    queries: int
    order_violations: int
    colour_violations: int
    inverse_violations: int
    failed_queries: int
    moved_points: int

    @property
    def passed(self) -> bool:
        violations = self.order_violations + self.colour_violations + self.inverse_violations + self.failed_queries
        return violations == 0 and self.moved_points >= 1

    def to_plain(self) -> dict:
        return {**self.asdict(), 'pass': self.passed}


def verify(a: LazyAut, sample_count: int) -> AutReport:
    """Query ``sample_count`` rationals of a window around the region and count violations.

    Violations are counted, never raised. Witness searches that run out of
    budget count as failed queries.
    """
    if sample_count < 2:
        raise RejectedInput(f'Verification needs at least 2 samples, got {sample_count}')
    samples = enumerate_in(a.interval.widened(), sample_count)
    mapped = []
    colour_violations = inverse_violations = failed = 0
    for q in samples:
        try:
            y = a.image(q)
            back = a.preimage(q)
        except BudgetExhausted as e:
            print_log(f'Query {format_rational(q)} failed: {e}', __name__, level=logging.WARNING)
            failed += 1
            continue
        mapped.append((q, y))
        if a.spec.colour_of(q) != a.spec.colour_of(y):
            colour_violations += 1
        if a.preimage(y) != q or a.image(back) != q:
            inverse_violations += 1

    mapped.sort()
    order_violations = sum(1 for (_, y1), (_, y2) in zip(mapped, mapped[1:]) if not y1 < y2)
    moved = {q for q, y in mapped if q != y} | {x for x, y in a.anchors if x != y}
    if AUDIT:
        a.audit()
    report = AutReport(queries=len(samples), order_violations=order_violations,
                       colour_violations=colour_violations, inverse_violations=inverse_violations,
                       failed_queries=failed, moved_points=len(moved))
    print_log(f'Verified {a!r}: {report}', __name__)
    return report


def replay(spec: ColouringSpec, transcript: dict, budget: Optional[int] = None) -> LazyAut:
    """Rebuild a witness from scratch and re-issue the logged queries.

    Raises:
        RejectedInput: if the rebuilt witness disagrees with ``transcript``.
    """
    budget = transcript['budget'] if budget is None else budget
    a = refute_order_colouring(spec, budget)
    if a.region.to_plain() != transcript['region'] or [format_rational(v) for v in a.seed] != transcript['seed']:
        raise RejectedInput('Transcript region or seed does not match the colouring')
    for direction, q, answer in transcript['query_log']:
        got = a.image(q) if direction == 'forth' else a.preimage(q)
        if format_rational(got) != answer:
            raise RejectedInput(f'Replayed {direction} query {q} gave {format_rational(got)}, logged {answer}')
    return a


def closed_form(a: LazyAut) -> Optional[OrderMap]:
    """A total piecewise-affine witness for a bounded monochromatic region.

    The map fixes everything outside the region and sends the seed point to its
    partner; None if the region is not exactly one colour.
    """
    interval = a.interval
    if not (a.region.exact and len(a.region.colours) == 1 and interval.bounded):
        return None
    return OrderMap.from_points([(interval.lower, interval.lower), a.seed, (interval.upper, interval.upper)])
