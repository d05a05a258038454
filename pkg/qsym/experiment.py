import json
import logging
import pprint
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import backforth
from .config.builtin import RuntimeConfig
from .exactq import format_rational
from .logging import mute_logger, print_log, setup_logger, reset_logger

_runtime_config: Optional[RuntimeConfig] = None
_rng: Optional[np.random.Generator] = None


def seed_everything(seed: int) -> np.random.Generator:
    """Reset the shared generator returned by :func:`get_rng` to ``seed``."""
    global _rng
    _rng = np.random.default_rng(seed)
    return _rng


def get_rng() -> np.random.Generator:
    assert _rng is not None, 'Generator is not seeded. Please call `setup_experiment()` first.'
    return _rng


def setup_experiment(runtime_config: RuntimeConfig, logger_blacklist: Optional[List[str]] = None) -> RuntimeConfig:
    """Seed, install the root logger (stderr, plus ``<output_dir>/stdout.log`` when an
    output directory is configured) and remember the config for :func:`get_runtime_config`.

    ``debug`` lowers the log level to DEBUG and switches on the back-and-forth audit.
    """
    if logger_blacklist is None:
        logger_blacklist = ['matplotlib']
    seed_everything(runtime_config.seed)

    log_file = None
    if runtime_config.output_dir is not None:
        runtime_config.output_dir.mkdir(parents=True, exist_ok=True)
        log_file = (runtime_config.output_dir / 'stdout.log').as_posix()

    reset_logger()
    setup_logger('', log_file=log_file, log_level=logging.DEBUG if runtime_config.debug else logging.INFO)
    for logger in logger_blacklist:
        mute_logger(logger)
    if runtime_config.debug:
        backforth.AUDIT = True

    global _runtime_config
    _runtime_config = runtime_config

    return runtime_config


def print_config(config, dump_config=False, output_dir=None, expand_config=True):
    class Encoder(json.JSONEncoder):
        def default(self, obj):
            if isinstance(obj, Enum):
                return obj.value
            if isinstance(obj, Path):
                return obj.as_posix()
            if isinstance(obj, Fraction):
                return format_rational(obj)
            return super().default(obj)

    if isinstance(config, dict):
        config_meta = None
    else:
        config_meta = config.meta()
        config = config.asdict()

    print_log('Config: ' + json.dumps(config, cls=Encoder), __name__)
    if config_meta:
        print_log('Config (meta): ' + json.dumps(config_meta, cls=Encoder), __name__)
    if expand_config:
        print_log('Config (expanded):\n' + pprint.pformat(config), __name__, level=logging.DEBUG)
    if dump_config:
        if output_dir is None:
            output_dir = get_output_dir()
        with open(Path(output_dir) / 'config.json', 'w') as fh:
            json.dump(config, fh, cls=Encoder)


def get_runtime_config() -> RuntimeConfig:
    assert _runtime_config is not None, 'Runtime config is not initialized. Please call `setup_experiment()` first.'
    return _runtime_config


def get_output_dir() -> Optional[Path]:
    return get_runtime_config().output_dir


def is_debugging() -> bool:
    try:
        return get_runtime_config().debug
    except AssertionError:
        return False
