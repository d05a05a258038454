from .config import *
from .exception import BudgetExhausted, Inconclusive, OrderCapExceeded, QsymError, RejectedInput, SearchCapExceeded
from .experiment import get_output_dir, get_runtime_config, is_debugging, setup_experiment, print_config
from .fileio import load, dump
from .logging import print_log, setup_logger

__version__ = '0.1.0'
