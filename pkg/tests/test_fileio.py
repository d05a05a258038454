# Modified from https://github.com/open-mmlab/mmcv/blob/master/tests/test_fileio.py

import json
from fractions import Fraction

import numpy as np
import pytest

from qsym import fileio
from qsym.halfgraph import Side


def _test_handler(tmp_path, file_format, test_obj, str_checker):
    # dump to a string
    dump_str = fileio.dump(test_obj, file_format=file_format)
    str_checker(dump_str)

    # load/dump with filenames
    tmp_filename = str(tmp_path / 'fileio_test_dump')
    fileio.dump(test_obj, tmp_filename, file_format=file_format)
    assert fileio.load(tmp_filename, file_format=file_format) == test_obj

    # load/dump with a file-like object
    with open(tmp_path / 'fileobj', 'w') as f:
        fileio.dump(test_obj, f, file_format=file_format)
    with open(tmp_path / 'fileobj') as f:
        assert fileio.load(f, file_format=file_format) == test_obj

    # automatically infer the file format from the given filename
    tmp_filename = tmp_path / ('fileio_test_dump.' + file_format)
    fileio.dump(test_obj, tmp_filename)
    assert fileio.load(tmp_filename) == test_obj


obj_for_test = [{'a': 'abc', 'b': 1}, 2, 'c']


def test_json(tmp_path):

    def json_checker(dump_str):
        assert dump_str in [
            '[{"a": "abc", "b": 1}, 2, "c"]', '[{"b": 1, "a": "abc"}, 2, "c"]'
        ]

    _test_handler(tmp_path, 'json', obj_for_test, json_checker)


def test_yaml(tmp_path):

    def yaml_checker(dump_str):
        assert dump_str in [
            '- {a: abc, b: 1}\n- 2\n- c\n', '- {b: 1, a: abc}\n- 2\n- c\n',
            '- a: abc\n  b: 1\n- 2\n- c\n', '- b: 1\n  a: abc\n- 2\n- c\n'
        ]

    _test_handler(tmp_path, 'yaml', obj_for_test, yaml_checker)
    _test_handler(tmp_path, 'yml', obj_for_test, yaml_checker)


def test_json_defaults():
    report = {
        'anchor': Fraction(-3, 6),
        'orbit': {2, 0, 1},
        'side': Side.MINUS,
        'colours': np.array([0, 1]),
        'order': np.int64(4),
        'support': range(3),
    }
    assert json.loads(fileio.dump(report, file_format='json')) == {
        'anchor': '-1/2',
        'orbit': [0, 1, 2],
        'side': '-',
        'colours': [0, 1],
        'order': 4,
        'support': [0, 1, 2],
    }
    with pytest.raises(TypeError, match='unsupported for json dump'):
        fileio.dump({'x': object()}, file_format='json')


def test_exception():
    test_obj = [{'a': 'abc', 'b': 1}, 2, 'c']

    with pytest.raises(ValueError):
        fileio.dump(test_obj)

    with pytest.raises(TypeError):
        fileio.dump(test_obj, 'tmp.txt')

    with pytest.raises(TypeError):
        fileio.dump(test_obj, 'tmp.pkl', file_format='pickle')
