# Copyright (c) Open-MMLab. All rights reserved.
import json
from enum import Enum
from fractions import Fraction

import numpy as np

from .base import BaseFileHandler


def set_default(obj):
    """Set default json values for non-serializable values.

    Rationals are written as ``"p/q"`` strings, ``set``/``frozenset`` as sorted
    lists, enums by value, and ``np.ndarray``/``np.generic`` as plain python
    lists and numbers.
    """
    if isinstance(obj, Fraction):
        return f'{obj.numerator}/{obj.denominator}'
    elif isinstance(obj, (set, frozenset)):
        return sorted(obj)
    elif isinstance(obj, range):
        return list(obj)
    elif isinstance(obj, Enum):
        return obj.value
    elif isinstance(obj, np.ndarray):
        return obj.tolist()
    elif isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f'{type(obj)} is unsupported for json dump')


class JsonHandler(BaseFileHandler):

    def load_from_fileobj(self, file):
        return json.load(file)

    def dump_to_fileobj(self, obj, file, **kwargs):
        kwargs.setdefault('default', set_default)
        json.dump(obj, file, **kwargs)

    def dump_to_str(self, obj, **kwargs):
        kwargs.setdefault('default', set_default)
        return json.dumps(obj, **kwargs)
