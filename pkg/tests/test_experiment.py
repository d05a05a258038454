import json
import logging

from qsym import backforth
from qsym.config import RuntimeConfig
from qsym.experiment import (get_output_dir, get_rng, get_runtime_config, is_debugging, print_config, seed_everything,
                             setup_experiment)
from qsym.logging import print_log, reset_logger


def test_setup_experiment(tmp_path):
    backforth.AUDIT = False
    config = RuntimeConfig.fromdict({'output_dir': str(tmp_path / 'run'), 'debug': True, 'seed': 3})
    assert setup_experiment(config) is config
    assert get_runtime_config() is config
    assert get_output_dir() == tmp_path / 'run'
    assert is_debugging()
    assert backforth.AUDIT
    assert logging.getLogger().level == logging.DEBUG

    print_config(config, dump_config=True)
    assert json.loads((tmp_path / 'run' / 'config.json').read_text())['seed'] == 3

    print_log('hello from the test', __name__)
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert 'hello from the test' in (tmp_path / 'run' / 'stdout.log').read_text()
    reset_logger()


def test_quiet_experiment():
    config = setup_experiment(RuntimeConfig())
    assert not is_debugging()
    assert get_output_dir() is None
    assert logging.getLogger().level == logging.INFO
    reset_logger()


def test_seeded_generator():
    setup_experiment(RuntimeConfig.fromdict({'seed': 11}))
    first = get_rng().integers(0, 10 ** 9, size=5).tolist()
    assert get_rng().integers(0, 10 ** 9, size=5).tolist() != first
    rng = seed_everything(11)
    assert rng is get_rng()
    assert rng.integers(0, 10 ** 9, size=5).tolist() == first
    reset_logger()
