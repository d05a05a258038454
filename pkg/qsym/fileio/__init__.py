from .config import Config, ConfigDict
from .handlers import BaseFileHandler, JsonHandler, YamlHandler
from .io import dump, load

__all__ = [
    'Config', 'ConfigDict',
    'load', 'dump',
    'BaseFileHandler', 'JsonHandler', 'YamlHandler',
]
