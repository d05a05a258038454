from fractions import Fraction
from itertools import islice
from pathlib import Path

import numpy as np
import pytest

from qsym.colouring import (Colourings, DenomMod, PairProduct, Piecewise, colour_of, decode_pair, dense_interval,
                            dump_colouring, find_in, load_colouring, pair_colouring, random_denom_mod,
                            random_piecewise, to_piecewise)
from qsym.config import ValidationError
from qsym.exactq import Interval, enumerate_in, iter_in
from qsym.exception import Inconclusive, RejectedInput

assets = Path(__file__).parent / 'assets' / 'colourings'

middle = Piecewise(cuts=(Fraction(0), Fraction(1)), pieces=(0, 1, 0), cut_colours=(1, 1), alphabet=2)
parity = DenomMod(m=2, residues=(0, 1), alphabet=2)


def test_registry():
    assert 'piecewise' in Colourings
    assert Colourings.get('denom_mod') is DenomMod
    assert Colourings.inverse_get(PairProduct) == 'pair'
    with pytest.raises(KeyError, match='already registered'):
        Colourings.register_module('pair', module=Piecewise)


def test_colour_of():
    assert colour_of(middle, '1/2') == 1
    assert colour_of(middle, 0) == 1
    assert colour_of(middle, 1) == 1
    assert colour_of(middle, -1) == 0
    assert colour_of(middle, Fraction(3, 2)) == 0
    assert colour_of(parity, '1/2') == 0
    assert colour_of(parity, '1/3') == 1
    assert colour_of(parity, 3) == 1
    assert Piecewise.constant(2, 3).colour_of(Fraction(-7, 3)) == 2


def test_piecewise_rejects():
    with pytest.raises(RejectedInput, match='strictly increasing'):
        Piecewise(cuts=(Fraction(1), Fraction(0)), pieces=(0, 0, 0), cut_colours=(0, 0), alphabet=1)
    with pytest.raises(RejectedInput, match='need 3 piece colours'):
        Piecewise(cuts=(Fraction(0), Fraction(1)), pieces=(0, 0), cut_colours=(0, 0), alphabet=1)
    with pytest.raises(RejectedInput, match='as many cut colours'):
        Piecewise(cuts=(Fraction(0),), pieces=(0, 0), cut_colours=(), alphabet=1)
    with pytest.raises(RejectedInput, match='outside alphabet'):
        Piecewise(cuts=(), pieces=(2,), cut_colours=(), alphabet=2)
    with pytest.raises(RejectedInput, match='at least 2'):
        DenomMod(m=1, residues=(0,), alphabet=1)
    with pytest.raises(RejectedInput, match='needs 3 residue colours'):
        DenomMod(m=3, residues=(0, 1), alphabet=2)


def test_find_in():
    assert find_in(middle, 0, Interval(), 100) == -1
    assert find_in(middle, 1, Interval(), 100) == 0
    assert find_in(middle, 1, Interval(0, 1), 100) == Fraction(1, 2)
    assert find_in(middle, 0, Interval(0, 1), 100) is None
    assert find_in(middle, 1, Interval(Fraction(1, 2), 1), 100) == Fraction(2, 3)
    assert find_in(parity, 0, Interval(0, 1), 100) == Fraction(1, 2)
    assert find_in(parity, 1, Interval(0, 1), 100) == Fraction(1, 3)
    # bounded search gives up
    assert find_in(parity, 0, Interval(0, 1), 1) == Fraction(1, 2)
    assert find_in(parity, 1, Interval(0, 1), 1) is None
    with pytest.raises(RejectedInput):
        find_in(parity, 1, Interval(0, 1), 0)


def test_find_in_matches_scan():
    rng = np.random.default_rng(1)
    for _ in range(60):
        spec = random_piecewise(rng, max_cuts=6, colours=4)
        lo, hi = sorted(Fraction(int(n), int(d)) for n, d in zip(rng.integers(-25, 25, 2), rng.integers(1, 7, 2)))
        i = Interval(None, hi) if lo == hi else Interval(lo, hi)
        for k in range(4):
            exact = find_in(spec, k, i, 1)
            scanned = next((q for q in islice(iter_in(i), 1000) if spec.colour_of(q) == k), None)
            if scanned is not None:
                assert exact == scanned
            if exact is None:
                assert scanned is None


def test_pair():
    rng = np.random.default_rng(2)
    cplus = random_piecewise(rng, colours=3)
    cminus = random_denom_mod(rng, m=3, colours=2)
    pair = pair_colouring(cplus, cminus)
    assert pair.alphabet == 6
    assert not pair.exact
    for q in enumerate_in(Interval(-10, 10), 100):
        assert decode_pair(pair, pair.colour_of(q)) == (cplus.colour_of(q), cminus.colour_of(q))
    with pytest.raises(RejectedInput):
        decode_pair(pair, 6)


def test_to_piecewise():
    rng = np.random.default_rng(3)
    for _ in range(20):
        pair = pair_colouring(random_piecewise(rng, colours=3), random_piecewise(rng, colours=2))
        assert pair.exact
        flat = to_piecewise(pair)
        assert flat.alphabet == 6
        for q in list(flat.cuts) + enumerate_in(Interval(-25, 25), 300):
            assert flat.colour_of(q) == pair.colour_of(q)
    assert to_piecewise(middle) is middle
    twin = Piecewise(cuts=middle.cuts, pieces=middle.pieces, cut_colours=middle.cut_colours, alphabet=middle.alphabet)
    assert twin == middle and twin is not middle
    assert to_piecewise(twin) is twin
    assert to_piecewise(middle) is middle
    with pytest.raises(RejectedInput, match='no piecewise form'):
        to_piecewise(parity)


def test_dense_interval_exact():
    region = dense_interval(middle, 100)
    assert region.interval == Interval(0, 1)
    assert region.colours == (1,)
    assert region.exact
    assert region.witnesses == {1: (Fraction(1, 2), Fraction(2, 3), Fraction(1, 3))}

    # an isolated cut colour is cut away
    spike = Piecewise(cuts=(Fraction(1, 2),), pieces=(0, 0), cut_colours=(1,), alphabet=2)
    region = dense_interval(spike, 100)
    assert region.interval == Interval(0, Fraction(1, 2))
    assert region.colours == (0,)

    # two pieces: the lowest colour is cut away first
    split = Piecewise(cuts=(Fraction(1, 3),), pieces=(0, 1), cut_colours=(0,), alphabet=2)
    region = dense_interval(split, 100)
    assert region.interval == Interval(Fraction(1, 3), 1)
    assert region.colours == (1,)
    assert region.to_plain() == {
        'interval': ['1/3', '1/1'],
        'colours': [1],
        'witnesses': {'1': ['1/2', '2/3', '2/5']},
        'exact': True,
    }


def test_dense_interval_random():
    rng = np.random.default_rng(4)
    for _ in range(100):
        spec = random_piecewise(rng)
        region = dense_interval(spec, 100)
        (colour,) = region.colours
        assert region.interval.bounded
        for q in enumerate_in(region.interval, 200):
            assert spec.colour_of(q) == colour
        assert all(region.interval.contains(w) for w in region.witnesses[colour])


def test_dense_interval_sampled():
    region = dense_interval(parity, 1000)
    assert not region.exact
    assert region.interval == Interval(0, 1)
    assert region.colours == (0, 1)
    for k, witnesses in region.witnesses.items():
        assert len(witnesses) == 3
        assert all(parity.colour_of(w) == k for w in witnesses)

    mod3 = DenomMod(m=3, residues=(0, 1, 1), alphabet=2)
    assert dense_interval(mod3, 1000).colours == (0, 1)

    with pytest.raises(Inconclusive, match='cannot certify density'):
        dense_interval(parity, 1)


def test_dense_interval_pair_window():
    # the exact factor is constant on its window, so only the sampled factor varies there
    pair = pair_colouring(middle, parity)
    region = dense_interval(pair, 1000)
    assert region.interval == Interval(0, 1)
    assert region.colours == (2, 3)


def test_load_colouring():
    assert load_colouring(assets / 'middle.json') == middle
    assert load_colouring(assets / 'parity.json') == parity
    steps = load_colouring(assets / 'steps.yml')
    assert steps.cuts == (Fraction(-1, 2), Fraction(1, 3), Fraction(2))
    assert steps.colour_of(Fraction(-1, 2)) == 2
    pair = load_colouring(str(assets / 'pair.json'))
    assert isinstance(pair, PairProduct)
    assert pair.alphabet == 6
    assert load_colouring(dump_colouring(pair)) == pair


def test_dump_colouring():
    assert dump_colouring(middle) == {
        'kind': 'piecewise',
        'cuts': ['0/1', '1/1'],
        'pieces': [0, 1, 0],
        'cut_colours': [1, 1],
        'alphabet': 2,
    }
    assert dump_colouring(pair_colouring(middle, parity)) == {
        'kind': 'pair',
        'first': dump_colouring(middle),
        'second': {'kind': 'denom_mod', 'm': 2, 'residues': [0, 1], 'alphabet': 2},
    }


def test_load_colouring_errors():
    with pytest.raises(ValidationError, match='Unknown colouring kind'):
        load_colouring(assets / 'unknown_kind.json')
    with pytest.raises(ValidationError, match='need 3 piece colours'):
        load_colouring(assets / 'bad_pieces.json')
    with pytest.raises(ValidationError, match='Expect a dict'):
        load_colouring({'kind': 'pair', 'first': [0], 'second': {'kind': 'denom_mod', 'm': 2,
                                                                  'residues': [0, 1], 'alphabet': 2}})
    with pytest.raises(ValidationError, match='p/q'):
        load_colouring({'kind': 'piecewise', 'cuts': ['half'], 'pieces': [0, 0], 'cut_colours': [0],
                        'alphabet': 1})
    with pytest.raises(ValidationError, match='Unrecognized fields'):
        load_colouring({'kind': 'denom_mod', 'm': 2, 'residues': [0, 1], 'alphabet': 2, 'colour': 3})
