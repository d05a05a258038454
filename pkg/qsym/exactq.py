"""
Exact rationals, open intervals of Q, the deterministic Stern-Brocot
enumeration of the rationals inside an interval, and piecewise-affine
order maps (bijections of Q that are strictly monotone).

Rationals are :class:`fractions.Fraction` values, always in lowest terms
with a positive denominator; they serialize as ``"p/q"`` strings.
"""

import numbers
import re
from bisect import bisect_right
from collections import deque
from dataclasses import field
from enum import Enum
from fractions import Fraction
from itertools import islice
from typing import Iterator, List, Optional, Sequence, Tuple

from .config import TypeDef, TypeDefRegistry, configclass
from .exception import RejectedInput

__all__ = ['Rational', 'Interval', 'Orientation', 'OrderMap', 'rat', 'parse_rational', 'format_rational',
           'enumerate_in', 'iter_in', 'simplest_in', 'sb_depth', 'om_apply', 'om_compose', 'om_invert']

Rational = Fraction

_RATIONAL_RE = re.compile(r'([+-]?\d+)(?:/([+-]?\d+))?')

# Stern-Brocot bounds are integer pairs (numerator, denominator >= 0); (+-1, 0) is +-infinity.
_NEG_INF = (-1, 0)
_POS_INF = (1, 0)


def rat(p: int, q: int = 1) -> Fraction:
    """The canonical rational ``p/q``."""
    for value in (p, q):
        if isinstance(value, bool) or not isinstance(value, numbers.Integral):
            raise RejectedInput(f'Rational parts must be integers, got {value!r}')
    if q == 0:
        raise RejectedInput(f'Zero denominator in {p}/{q}')
    return Fraction(p, q)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Integers and fractions pass through."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, numbers.Integral) and not isinstance(text, bool):
        return Fraction(int(text))
    if not isinstance(text, str):
        raise RejectedInput(f'Expect a rational written as "p/q", found {type(text)}: {text!r}')
    match = _RATIONAL_RE.fullmatch(text.strip())
    if match is None:
        raise RejectedInput(f'Expect a rational written as "p/q", found {text!r}')
    return rat(int(match.group(1)), int(match.group(2) or 1))


def format_rational(q: Fraction) -> str:
    return f'{q.numerator}/{q.denominator}'


class RationalDef(TypeDef):
    """Loads ``"p/q"`` strings (or integers) into :class:`Fraction` and dumps them back."""

    @classmethod
    def new(cls, type_):
        if type_ is Fraction:
            return cls(type_)
        return None

    def from_plain(self, plain, ctx):
        return parse_rational(plain)

    def to_plain(self, obj, ctx):
        if not isinstance(obj, Fraction):
            raise TypeError(f'Expected a Fraction, found {obj} of type: {type(obj)}')
        return format_rational(obj)


TypeDefRegistry.register_module(module=RationalDef)


class Interval:
    """Open interval of Q; ``None`` stands for an infinite end."""

    __slots__ = ('lower', 'upper')

    def __init__(self, lower: Optional[Fraction] = None, upper: Optional[Fraction] = None):
        lower = None if lower is None else parse_rational(lower)
        upper = None if upper is None else parse_rational(upper)
        if lower is not None and upper is not None and not lower < upper:
            raise RejectedInput(f'Empty interval ({format_rational(lower)}, {format_rational(upper)})')
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    def __setattr__(self, name, value):
        raise AttributeError('Interval is immutable')

    def __eq__(self, other):
        return isinstance(other, Interval) and (self.lower, self.upper) == (other.lower, other.upper)

    def __hash__(self):
        return hash((self.lower, self.upper))

    def __repr__(self):
        return f'Interval{self}'

    def __str__(self):
        lo = '-inf' if self.lower is None else format_rational(self.lower)
        hi = 'inf' if self.upper is None else format_rational(self.upper)
        return f'({lo}, {hi})'

    @property
    def bounded(self) -> bool:
        return self.lower is not None and self.upper is not None

    def contains(self, q: Fraction) -> bool:
        return (self.lower is None or self.lower < q) and (self.upper is None or q < self.upper)

    __contains__ = contains

    def meet(self, other: 'Interval') -> Optional['Interval']:
        """Intersection, or None when empty."""
        lowers = [b for b in (self.lower, other.lower) if b is not None]
        uppers = [b for b in (self.upper, other.upper) if b is not None]
        lo = max(lowers) if lowers else None
        hi = min(uppers) if uppers else None
        if lo is not None and hi is not None and lo >= hi:
            return None
        return Interval(lo, hi)

    def widened(self) -> 'Interval':
        """The interval extended by its own width on both sides (the whole line if unbounded)."""
        if not self.bounded:
            return Interval()
        width = self.upper - self.lower
        return Interval(self.lower - width, self.upper + width)

    def to_plain(self) -> List[Optional[str]]:
        return [None if b is None else format_rational(b) for b in (self.lower, self.upper)]

    @classmethod
    def from_plain(cls, plain: Sequence[Optional[str]]) -> 'Interval':
        lo, hi = plain
        return cls(None if lo is None else parse_rational(lo), None if hi is None else parse_rational(hi))

    def _bounds(self):
        lo = _NEG_INF if self.lower is None else (self.lower.numerator, self.lower.denominator)
        hi = _POS_INF if self.upper is None else (self.upper.numerator, self.upper.denominator)
        return lo, hi


def _pair_lt(a, b):
    if a[1] == 0 and b[1] == 0:
        return a[0] < b[0]
    return a[0] * b[1] < b[0] * a[1]


def _mediant(left, right):
    node = (left[0] + right[0], left[1] + right[1])
    # the root between -inf and +inf is 0/1
    return (0, 1) if node == (0, 0) else node


def iter_in(i: Interval) -> Iterator[Fraction]:
    """All rationals of ``i``, breadth-first through the Stern-Brocot tree of Q.

    The tree has root 0/1 between -1/0 and 1/0; a node between bounds L and R
    holds their mediant. Subtrees whose open bound interval misses ``i`` are
    pruned, which leaves the order of the remaining nodes unchanged: by depth,
    then by value.
    """
    lo, hi = i._bounds()
    queue = deque([(_NEG_INF, _POS_INF)])
    while queue:
        left, right = queue.popleft()
        node = _mediant(left, right)
        if _pair_lt(lo, node) and _pair_lt(node, hi):
            yield Fraction(*node)
        for a, b in ((left, node), (node, right)):
            if _pair_lt(a, hi) and _pair_lt(lo, b):
                queue.append((a, b))


def enumerate_in(i: Interval, budget: int) -> List[Fraction]:
    """The first ``budget`` rationals of ``i`` in Stern-Brocot breadth-first order.

    Examples:
        >>> enumerate_in(Interval(rat(0), rat(1)), 3)
        [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]
    """
    if budget < 1:
        raise RejectedInput(f'Enumeration budget must be positive, got {budget}')
    return list(islice(iter_in(i), budget))


def sb_depth(q: Fraction) -> int:
    """Depth in the Stern-Brocot tree of Q: the sum of the continued fraction quotients of ``|q|``."""
    q = abs(Fraction(q))
    p, d = q.numerator, q.denominator
    depth = 0
    while d:
        depth += p // d
        p, d = d, p % d
    return depth


def _simplest_positive(lo: Fraction, hi: Optional[Fraction]) -> Fraction:
    # 0 <= lo < hi, hi None is +inf
    quotients = []
    while True:
        fl = lo.numerator // lo.denominator
        if hi is None or fl + 1 < hi:
            break
        # every x in (lo, hi) has floor fl: continue on the reciprocal of the fractional part
        quotients.append(fl)
        lo, hi = 1 / (hi - fl), (None if lo == fl else 1 / (lo - fl))
    x = Fraction(fl + 1)
    for a in reversed(quotients):
        x = a + 1 / x
    return x


def simplest_in(i: Interval) -> Fraction:
    """The unique rational of least Stern-Brocot depth in ``i``, i.e. ``enumerate_in(i, 1)[0]``."""
    lo, hi = i.lower, i.upper
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return Fraction(0)
    if hi is not None and hi <= 0:
        return -_simplest_positive(-hi, None if lo is None else -lo)
    return _simplest_positive(lo, hi)


def first_key(q: Fraction) -> Tuple[int, Fraction]:
    """Sort key reproducing the enumeration order."""
    return sb_depth(q), q


class Orientation(str, Enum):
    INCREASING = 'increasing'
    DECREASING = 'decreasing'

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.INCREASING else -1

    @classmethod
    def of_sign(cls, sign: int) -> 'Orientation':
        return cls.INCREASING if sign > 0 else cls.DECREASING


@configclass(frozen=True)
class OrderMap:
    """Piecewise-affine bijection of Q, strictly increasing or decreasing.

    ``anchors`` are the breakpoints ``(x, y)``, increasing in ``x``; between
    anchors the map interpolates, outside them it continues with the tail
    slopes (positive, applied with the sign of the orientation). Instances are
    normalized on construction, so equal maps compare equal: redundant anchors
    are dropped and an affine map keeps at most the anchor ``(0, f(0))``.
    """
    anchors: Tuple[Tuple[Fraction, Fraction], ...] = ()
    orientation: Orientation = Orientation.INCREASING
    left_slope: Fraction = Fraction(1)
    right_slope: Fraction = Fraction(1)
    _xs: Tuple[Fraction, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        anchors = tuple((parse_rational(x), parse_rational(y)) for x, y in self.anchors)
        left_slope, right_slope = parse_rational(self.left_slope), parse_rational(self.right_slope)
        orientation = Orientation(self.orientation)
        sign = orientation.sign
        if left_slope <= 0 or right_slope <= 0:
            raise RejectedInput(f'Tail slopes must be positive, got {left_slope}, {right_slope}')
        for (x1, y1), (x2, y2) in zip(anchors, anchors[1:]):
            if not x1 < x2:
                raise RejectedInput(f'Anchors must be strictly increasing in x: {x1} >= {x2}')
            if not sign * y1 < sign * y2:
                raise RejectedInput(f'Anchors must be strictly {orientation.value} in y: {y1}, {y2}')
        if not anchors and left_slope != right_slope:
            raise RejectedInput('A map without anchors needs equal tail slopes')

        if anchors:
            slopes = [sign * left_slope]
            slopes += [(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(anchors, anchors[1:])]
            slopes.append(sign * right_slope)
            kept = tuple(a for k, a in enumerate(anchors) if slopes[k] != slopes[k + 1])
            if not kept:
                x0, y0 = anchors[0]
                intercept = y0 - sign * left_slope * x0
                kept = ((Fraction(0), intercept),) if intercept else ()
            anchors = kept

        object.__setattr__(self, 'anchors', anchors)
        object.__setattr__(self, 'orientation', orientation)
        object.__setattr__(self, 'left_slope', left_slope)
        object.__setattr__(self, 'right_slope', right_slope)
        object.__setattr__(self, '_xs', tuple(x for x, _ in anchors))

    @property
    def sign(self) -> int:
        return self.orientation.sign

    @property
    def increasing(self) -> bool:
        return self.orientation is Orientation.INCREASING

    def is_identity(self) -> bool:
        return self == OrderMap.identity()

    def __call__(self, q: Fraction) -> Fraction:
        return om_apply(self, q)

    @classmethod
    def identity(cls) -> 'OrderMap':
        return cls()

    @classmethod
    def affine(cls, slope: Fraction, intercept: Fraction = Fraction(0)) -> 'OrderMap':
        """``x -> slope * x + intercept``."""
        slope, intercept = parse_rational(slope), parse_rational(intercept)
        if slope == 0:
            raise RejectedInput('An affine order map needs a nonzero slope')
        return cls(anchors=((Fraction(0), intercept),), orientation=Orientation.of_sign(slope),
                   left_slope=abs(slope), right_slope=abs(slope))

    @classmethod
    def negation(cls) -> 'OrderMap':
        return cls.affine(-1)

    @classmethod
    def from_points(cls, points: Sequence[Tuple[Fraction, Fraction]],
                    left_slope: Fraction = Fraction(1), right_slope: Fraction = Fraction(1),
                    orientation: Optional[Orientation] = None) -> 'OrderMap':
        """Interpolate through ``points``; the orientation is read off the points when not given."""
        points = sorted((parse_rational(x), parse_rational(y)) for x, y in points)
        if orientation is None:
            orientation = Orientation.INCREASING
            if len(points) >= 2 and points[1][1] < points[0][1]:
                orientation = Orientation.DECREASING
        return cls(anchors=tuple(points), orientation=orientation,
                   left_slope=left_slope, right_slope=right_slope)


def om_apply(m: OrderMap, q: Fraction) -> Fraction:
    """Exact image of ``q``."""
    q = parse_rational(q)
    sign = m.sign
    if not m.anchors:
        return sign * m.left_slope * q
    k = bisect_right(m._xs, q)
    if k == 0:
        x0, y0 = m.anchors[0]
        return y0 + sign * m.left_slope * (q - x0)
    if k == len(m.anchors):
        xn, yn = m.anchors[-1]
        return yn + sign * m.right_slope * (q - xn)
    (x1, y1), (x2, y2) = m.anchors[k - 1], m.anchors[k]
    return y1 + (y2 - y1) * (q - x1) / (x2 - x1)


def om_invert(m: OrderMap) -> OrderMap:
    if m.increasing:
        anchors = tuple((y, x) for x, y in m.anchors)
        return OrderMap(anchors, m.orientation, 1 / m.left_slope, 1 / m.right_slope)
    anchors = tuple((y, x) for x, y in reversed(m.anchors))
    return OrderMap(anchors, m.orientation, 1 / m.right_slope, 1 / m.left_slope)


def om_compose(a: OrderMap, b: OrderMap) -> OrderMap:
    """``a o b``, i.e. ``x -> a(b(x))``. Breakpoints are those of ``b`` and the preimages of those of ``a``."""
    b_inv = om_invert(b)
    xs = {x for x, _ in b.anchors} | {om_apply(b_inv, x) for x, _ in a.anchors}
    if b.increasing:
        left_slope, right_slope = b.left_slope * a.left_slope, b.right_slope * a.right_slope
    else:
        left_slope, right_slope = b.left_slope * a.right_slope, b.right_slope * a.left_slope
    anchors = tuple((x, om_apply(a, om_apply(b, x))) for x in sorted(xs))
    return OrderMap(anchors, Orientation.of_sign(a.sign * b.sign), left_slope, right_slope)
