"""
Finitely described colourings of Q with finite alphabets.

Three kinds are supported, dispatched by the ``kind`` key of their plain form:

* ``piecewise``: finitely many cuts; every open piece and every cut carries a colour.
* ``denom_mod``: the colour of ``p/q`` is ``residues[q mod m]``.
* ``pair``: the product ``q -> (first(q), second(q))`` encoded row-major.

Colours are plain ints ``0 .. alphabet - 1``.
"""

import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import islice
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import Registry, TypeDef, TypeDefRegistry, configclass
from .exactq import Interval, first_key, format_rational, iter_in, parse_rational, simplest_in
from .exception import Inconclusive, RejectedInput
from .fileio import load
from .logging import print_log

__all__ = ['Colourings', 'ColouringSpec', 'Piecewise', 'DenomMod', 'PairProduct', 'DenseRegion',
           'colour_of', 'find_in', 'dense_interval', 'pair_colouring', 'decode_pair', 'to_piecewise',
           'load_colouring', 'dump_colouring', 'random_piecewise', 'random_denom_mod']

# number of sorted samples whose gaps are probed when certifying density by search
DENSITY_PROBES = 8
WITNESSES_PER_COLOUR = 3


class Colourings(metaclass=Registry, name='colouring'):
    pass


class ColouringSpec:
    """Base class of colouring descriptions. Subclasses are frozen config classes with an ``alphabet``."""

    alphabet: int

    @property
    def exact(self) -> bool:
        """Whether witness search and density are decided exactly rather than by bounded enumeration."""
        raise NotImplementedError()

    def colour_of(self, q: Fraction) -> int:
        raise NotImplementedError()


def _check_colours(colours: Sequence[int], alphabet: int, name: str):
    for c in colours:
        if not 0 <= c < alphabet:
            raise RejectedInput(f'{name}: colour {c} outside alphabet of size {alphabet}')


@Colourings.register_module('piecewise')
@configclass(frozen=True)
class Piecewise(ColouringSpec):
    cuts: Tuple[Fraction, ...]
    pieces: Tuple[int, ...]
    cut_colours: Tuple[int, ...]
    alphabet: int

    def __post_init__(self):
        object.__setattr__(self, 'cuts', tuple(parse_rational(c) for c in self.cuts))
        object.__setattr__(self, 'pieces', tuple(int(c) for c in self.pieces))
        object.__setattr__(self, 'cut_colours', tuple(int(c) for c in self.cut_colours))
        if self.alphabet < 1:
            raise RejectedInput(f'Alphabet must be positive, got {self.alphabet}')
        if any(a >= b for a, b in zip(self.cuts, self.cuts[1:])):
            raise RejectedInput(f'Cuts must be strictly increasing: {[format_rational(c) for c in self.cuts]}')
        if len(self.pieces) != len(self.cuts) + 1:
            raise RejectedInput(f'{len(self.cuts)} cuts need {len(self.cuts) + 1} piece colours, '
                                f'found {len(self.pieces)}')
        if len(self.cut_colours) != len(self.cuts):
            raise RejectedInput(f'{len(self.cuts)} cuts need as many cut colours, found {len(self.cut_colours)}')
        _check_colours(self.pieces, self.alphabet, 'pieces')
        _check_colours(self.cut_colours, self.alphabet, 'cut_colours')

    @property
    def exact(self) -> bool:
        return True

    def colour_of(self, q: Fraction) -> int:
        k = bisect_left(self.cuts, q)
        if k < len(self.cuts) and self.cuts[k] == q:
            return self.cut_colours[k]
        return self.pieces[k]

    def piece(self, j: int) -> Interval:
        """The ``j``-th open piece."""
        lower = self.cuts[j - 1] if j > 0 else None
        upper = self.cuts[j] if j < len(self.cuts) else None
        return Interval(lower, upper)

    @classmethod
    def constant(cls, colour: int = 0, alphabet: int = 1) -> 'Piecewise':
        return cls(cuts=(), pieces=(colour,), cut_colours=(), alphabet=alphabet)


@Colourings.register_module('denom_mod')
@configclass(frozen=True)
class DenomMod(ColouringSpec):
    m: int
    residues: Tuple[int, ...]
    alphabet: int

    def __post_init__(self):
        object.__setattr__(self, 'residues', tuple(int(c) for c in self.residues))
        if self.m < 2:
            raise RejectedInput(f'Modulus must be at least 2, got {self.m}')
        if self.alphabet < 1:
            raise RejectedInput(f'Alphabet must be positive, got {self.alphabet}')
        if len(self.residues) != self.m:
            raise RejectedInput(f'Modulus {self.m} needs {self.m} residue colours, found {len(self.residues)}')
        _check_colours(self.residues, self.alphabet, 'residues')

    @property
    def exact(self) -> bool:
        return False

    def colour_of(self, q: Fraction) -> int:
        return self.residues[Fraction(q).denominator % self.m]


@Colourings.register_module('pair')
@configclass(frozen=True)
class PairProduct(ColouringSpec):
    first: ColouringSpec
    second: ColouringSpec

    @property
    def alphabet(self) -> int:
        return self.first.alphabet * self.second.alphabet

    @property
    def exact(self) -> bool:
        return self.first.exact and self.second.exact

    def colour_of(self, q: Fraction) -> int:
        return self.first.colour_of(q) * self.second.alphabet + self.second.colour_of(q)


class ColouringDef(TypeDef):
    """Loads and dumps :class:`ColouringSpec` by the registered ``kind``."""

    @classmethod
    def new(cls, type_):
        if type_ is ColouringSpec:
            return cls(type_)
        return None

    def validate(self, converted, ctx):
        if not isinstance(converted, ColouringSpec):
            raise TypeError(f'Expect a colouring, found {type(converted)}')

    def from_plain(self, plain, ctx):
        if isinstance(plain, ColouringSpec):
            return plain
        if not isinstance(plain, dict):
            raise TypeError(f'Expect a dict with a "kind" key, found {type(plain)}: {plain}')
        plain = dict(plain)
        kind = plain.pop('kind', None)
        if kind not in Colourings:
            raise ValueError(f'Unknown colouring kind {kind!r}, expect one of {list(Colourings.module_dict)}')
        with ctx.onto(kind):
            return TypeDef.load(Colourings.get(kind), plain, ctx=ctx)

    def to_plain(self, obj, ctx):
        if not isinstance(obj, ColouringSpec):
            raise TypeError(f'Expect a colouring, found {type(obj)}: {obj}')
        kind = Colourings.inverse_get(type(obj))
        with ctx.onto(kind):
            return {'kind': kind, **TypeDef.dump(type(obj), obj, ctx=ctx)}


TypeDefRegistry.register_module(module=ColouringDef)


def load_colouring(source: Union[str, Path, dict]) -> ColouringSpec:
    """Read a colouring from a JSON/YAML file or its plain form."""
    if isinstance(source, (str, Path)):
        try:
            source = load(source)
        except TypeError as e:
            raise RejectedInput(f'Cannot read colouring {source}: {e}') from e
    return TypeDef.load(ColouringSpec, source)


def dump_colouring(spec: ColouringSpec) -> dict:
    return TypeDef.dump(ColouringSpec, spec)


def colour_of(spec: ColouringSpec, q: Fraction) -> int:
    return spec.colour_of(parse_rational(q))


def pair_colouring(cplus: ColouringSpec, cminus: ColouringSpec) -> PairProduct:
    """The product colouring ``q -> (cplus(q), cminus(q))``; its alphabet is the product of both."""
    return PairProduct(first=cplus, second=cminus)


def decode_pair(spec: PairProduct, colour: int) -> Tuple[int, int]:
    if not 0 <= colour < spec.alphabet:
        raise RejectedInput(f'Colour {colour} outside alphabet of size {spec.alphabet}')
    return divmod(colour, spec.second.alphabet)


def to_piecewise(spec: ColouringSpec) -> Piecewise:
    """An equivalent :class:`Piecewise` for an exact colouring; a piecewise colouring is returned as is."""
    if isinstance(spec, Piecewise):
        return spec
    if not spec.exact:
        raise RejectedInput(f'{type(spec).__name__} has no piecewise form')
    return _flatten(spec)


@lru_cache(maxsize=256)
def _flatten(spec: ColouringSpec) -> Piecewise:
    cuts = sorted(set(_cuts_of(spec)))
    bounds = [None] + cuts + [None]
    pieces = [spec.colour_of(simplest_in(Interval(lo, hi))) for lo, hi in zip(bounds, bounds[1:])]
    return Piecewise(cuts=tuple(cuts), pieces=tuple(pieces),
                     cut_colours=tuple(spec.colour_of(c) for c in cuts), alphabet=spec.alphabet)


def _cuts_of(spec: ColouringSpec) -> List[Fraction]:
    if isinstance(spec, PairProduct):
        return _cuts_of(spec.first) + _cuts_of(spec.second)
    return list(to_piecewise(spec).cuts)


def _find_exact(pw: Piecewise, k: int, i: Interval) -> Optional[Fraction]:
    # the first colour-k rational of the enumeration is the (depth, value)-least one:
    # the simplest point of some colour-k piece, or a colour-k cut
    candidates = []
    for j, colour in enumerate(pw.pieces):
        if colour == k:
            part = pw.piece(j).meet(i)
            if part is not None:
                candidates.append(simplest_in(part))
    candidates += [c for c, colour in zip(pw.cuts, pw.cut_colours) if colour == k and i.contains(c)]
    return min(candidates, key=first_key) if candidates else None


def find_in(spec: ColouringSpec, k: int, i: Interval, budget: int) -> Optional[Fraction]:
    """First rational of colour ``k`` strictly inside ``i`` in enumeration order, or None.

    Exact colourings are answered from their cuts and None means there is no
    such rational. Otherwise the first ``budget`` enumerated rationals are scanned.
    """
    if budget < 1:
        raise RejectedInput(f'Search budget must be positive, got {budget}')
    if spec.exact:
        return _find_exact(to_piecewise(spec), k, i)
    for q in islice(iter_in(i), budget):
        if spec.colour_of(q) == k:
            return q
    return None


@dataclass(frozen=True)
class DenseRegion:
    """An open interval in which every colour of ``colours`` is dense and no other colour occurs.

    ``exact`` tells whether this was decided exactly or certified by bounded search.
    """
    interval: Interval
    colours: Tuple[int, ...]
    witnesses: Dict[int, Tuple[Fraction, ...]] = field(hash=False)
    exact: bool = True

    def to_plain(self) -> dict:
        return {
            'interval': self.interval.to_plain(),
            'colours': list(self.colours),
            'witnesses': {str(k): [format_rational(w) for w in ws] for k, ws in self.witnesses.items()},
            'exact': self.exact,
        }


def _decompose(pw: Piecewise, window: Interval) -> List[Tuple[Union[Interval, Fraction], int]]:
    # left-to-right: open piece, cut, open piece, ..., open piece
    inner = [(c, colour) for c, colour in zip(pw.cuts, pw.cut_colours) if window.contains(c)]
    bounds = [window.lower] + [c for c, _ in inner] + [window.upper]
    elements = []
    for n, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
        part = Interval(lo, hi)
        elements.append((part, pw.colour_of(simplest_in(part))))
        if n < len(inner):
            elements.append(inner[n])
    return elements


def _leftmost_free_run(elements, colour: int) -> Interval:
    runs, current = [], []
    for element in elements + [(None, colour)]:
        if element[1] != colour:
            current.append(element[0])
            continue
        # an open run cannot start or end at a cut
        while current and not isinstance(current[0], Interval):
            current.pop(0)
        while current and not isinstance(current[-1], Interval):
            current.pop()
        if current:
            runs.append(Interval(current[0].lower, current[-1].upper))
        current = []
    return runs[0]


def _exact_window(pw: Piecewise) -> Tuple[Interval, int]:
    window = Interval(Fraction(0), Fraction(1))
    for refinement in range(pw.alphabet):
        elements = _decompose(pw, window)
        present = sorted({colour for _, colour in elements})
        if len(present) == 1:
            return window, present[0]
        piece_colours = {colour for part, colour in elements if isinstance(part, Interval)}
        dense = piece_colours if len(piece_colours) == 1 else set()
        sparse = next(c for c in present if c not in dense)
        window = _leftmost_free_run(elements, sparse)
        print_log(f'Refinement {refinement + 1}: colour {sparse} is not dense, window {window}',
                  __name__, level=logging.DEBUG)
    raise AssertionError(f'Refinement did not settle within {pw.alphabet} steps')


def _initial_window(spec: ColouringSpec) -> Interval:
    # on a window where an exact factor is constant, the product is as homogeneous as the other factor
    if isinstance(spec, PairProduct):
        for part in (spec.first, spec.second):
            if part.exact:
                return _exact_window(to_piecewise(part))[0]
    return Interval(Fraction(0), Fraction(1))


def _witnesses(spec: ColouringSpec, k: int, window: Interval, budget: int) -> Optional[Tuple[Fraction, ...]]:
    w1 = find_in(spec, k, window, budget)
    if w1 is None:
        return None
    w2 = find_in(spec, k, Interval(w1, window.upper), budget)
    w3 = find_in(spec, k, Interval(window.lower, w1), budget)
    if w2 is None or w3 is None:
        return None
    return w1, w2, w3


def dense_interval(spec: ColouringSpec, budget: int) -> DenseRegion:
    """Find an interval where the colours that occur are all dense.

    Exact colourings start from the window (0, 1) and repeatedly shrink it to
    the leftmost maximal sub-interval free of the lowest colour that occurs but
    is not dense; each step drops at least one colour, and the result is
    monochromatic. Other colourings take the colours of the first ``budget``
    rationals of the window and certify them by witness search on the gaps
    between sorted samples.

    Raises:
        Inconclusive: if density could not be certified within ``budget``.
    """
    if budget < 1:
        raise RejectedInput(f'Search budget must be positive, got {budget}')
    if spec.exact:
        window, colour = _exact_window(to_piecewise(spec))
        witnesses = {colour: _witnesses(spec, colour, window, budget)}
        region = DenseRegion(window, (colour,), witnesses, exact=True)
        print_log(f'Dense interval {window} with colour {colour}', __name__)
        return region

    window = _initial_window(spec)
    samples = list(islice(iter_in(window), budget))
    colours = tuple(sorted({spec.colour_of(q) for q in samples}))
    probes = sorted(samples[:DENSITY_PROBES])
    ends = [window.lower] + probes + [window.upper]
    gaps = [Interval(lo, hi) for lo, hi in zip(ends, ends[1:])]
    witnesses = {}
    for k in colours:
        for gap in gaps:
            if find_in(spec, k, gap, budget) is None:
                raise Inconclusive(f'Colour {k} not found in {gap} within budget {budget}; '
                                   f'cannot certify density in {window}')
        found = _witnesses(spec, k, window, budget)
        if found is None:
            raise Inconclusive(f'Fewer than {WITNESSES_PER_COLOUR} witnesses of colour {k} in {window}')
        witnesses[k] = found
    print_log(f'Dense interval {window} with colours {list(colours)}, certified on {len(gaps)} gaps',
              __name__)
    return DenseRegion(window, colours, witnesses, exact=False)


def _random_rational(rng: np.random.Generator, span: int = 20, max_denominator: int = 6) -> Fraction:
    return Fraction(int(rng.integers(-span, span + 1)), int(rng.integers(1, max_denominator + 1)))


def random_piecewise(rng: np.random.Generator, max_cuts: int = 6, colours: int = 5) -> Piecewise:
    """A random piecewise colouring with at most ``max_cuts`` cuts and colours below ``colours``."""
    n_cuts = int(rng.integers(0, max_cuts + 1))
    cuts = set()
    while len(cuts) < n_cuts:
        cuts.add(_random_rational(rng))
    return Piecewise(cuts=tuple(sorted(cuts)),
                     pieces=tuple(int(c) for c in rng.integers(0, colours, size=n_cuts + 1)),
                     cut_colours=tuple(int(c) for c in rng.integers(0, colours, size=n_cuts)),
                     alphabet=colours)


def random_denom_mod(rng: np.random.Generator, m: int = 2, colours: int = 2) -> DenomMod:
    return DenomMod(m=m, residues=tuple(int(c) for c in rng.integers(0, colours, size=m)), alphabet=colours)
