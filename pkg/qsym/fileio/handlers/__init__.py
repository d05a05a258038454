# Copyright (c) Open-MMLab. All rights reserved.
from .base import BaseFileHandler
from .json_handler import JsonHandler
from .yaml_handler import YamlHandler

__all__ = ['BaseFileHandler', 'JsonHandler', 'YamlHandler']
