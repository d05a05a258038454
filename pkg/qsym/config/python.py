"""
Interface of config classes.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Protocol, TypeVar, Union

from ..fileio.config import Config
from .exception import ValidationError
from .type_def import TypeDef

T = TypeVar('T')


class BaseConfig(Protocol):
    """Interface for config
    """

    def asdict(self) -> Dict[str, Any]:
        """Convert config to JSON object."""
        ...

    def meta(self) -> dict:
        """Export metadata."""
        ...

    @classmethod
    def fromfile(cls: T, filename: Path, overrides: Optional[Dict[str, Any]] = None) -> T:
        """Create a config by reading from ``filename``.

        Args:
            filename (path): Path to read from (JSON or YAML).
            overrides (dict, optional): Dotted keys merged over the file content,
                e.g. ``{'budget': 100}``.
        """
        ...

    @classmethod
    def fromdict(cls: T, data: Any) -> T:
        """Create a config by parsing ``data``.

        Args:
            data (any): Data to parse. Should be a dict in most cases.
        """
        ...


def configclass(cls: Optional[T] = None, *, frozen: bool = False) -> Union[T, BaseConfig]:
    """
    Make a class a config class.
    The class should be written like a `dataclass <https://docs.python.org/3/library/dataclasses.html>`__,
    and annotated with ``@configclass``. Then it can load content from JSON/YAML files or python dict.
    ``@configclass(frozen=True)`` makes immutable, hashable values.

    Returns:
        BaseConfig:
            The annotated config class.

    Examples:

        To create a config class: ::

            @configclass
            class SweepConf:
                trials: int
                max_cuts: int = 6
                colours: Optional[int] = None

        To load from a file or content: ::

            config = SweepConf.fromfile('sweep.yml')
            config = SweepConf.fromdict({'trials': 100})

        A method ``post_validate`` returning a bool or ``(ok, message)``
        is run after loading.
    """
    def wrap(cls):
        cls = dataclass(cls, frozen=frozen)

        # add four methods to match protocol
        cls.asdict = _asdict
        cls.meta = _meta
        cls.fromdict = _fromdict
        cls.fromfile = _fromfile
        return cls

    if cls is None:
        return wrap
    return wrap(cls)


def _asdict(self):
    return TypeDef.dump(self.__class__, self)


def _meta(self):
    return getattr(self, '_meta', None) or {}


@classmethod
def _fromfile(cls, filename, overrides=None):
    try:
        config = Config.fromfile(filename)
    except (KeyError, TypeError) as e:
        raise ValidationError(f'Cannot read config {filename}: {e}') from e
    if overrides:
        config.merge_from_dict(overrides)
    return TypeDef.load(cls, config.asdict().to_dict())


@classmethod
def _fromdict(cls, data):
    return TypeDef.load(cls, data)
