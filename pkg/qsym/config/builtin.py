from pathlib import Path
from typing import Optional

from .python import configclass


@configclass
class RuntimeConfig:
    """Built-in runtime config shared by the command line and the experiment helpers:

    * ``seed`` (int) for random colouring generation
    * ``budget`` (int) enumeration budget of every witness search
    * ``samples`` (int) sampled queries when verifying a witness
    * ``order_cap`` (int) largest automorphism group that is fully enumerated
    * ``max_colours`` (int) largest colour count tried by the distinguishing search
    * ``search_cap`` (int) largest number of colourings the distinguishing search tests
    * ``output_dir`` (path, optional) where ``stdout.log`` is written
    * ``debug`` (bool, default false) debug logging and back-and-forth audit

    This can be used as an argument to setup an experiment:
    :meth:`~qsym.experiment.setup_experiment`.
    """
    seed: int = 42
    budget: int = 10000
    samples: int = 1000
    order_cap: int = 1000000
    max_colours: int = 8
    search_cap: int = 10000000
    output_dir: Optional[Path] = None
    debug: bool = False

    def post_validate(self):
        for name in ('budget', 'samples', 'order_cap', 'max_colours', 'search_cap'):
            if getattr(self, name) < 1:
                return False, f'{name} must be positive, got {getattr(self, name)}'
        if self.samples < 2:
            return False, 'samples must be at least 2'
        return True, None
