from .builtin import RuntimeConfig
from .exception import ValidationError
from .python import BaseConfig, configclass
from .registry import Registry
from .type_def import TypeDef, TypeDefRegistry


__all__ = ['BaseConfig', 'RuntimeConfig', 'Registry', 'TypeDef', 'TypeDefRegistry',
           'ValidationError', 'configclass']
