# Copyright (c) Open-MMLab. All rights reserved.
from abc import ABCMeta, abstractmethod


class BaseFileHandler(metaclass=ABCMeta):
    """Text-file handler. Files are read and written as UTF-8."""

    encoding = 'utf-8'

    @abstractmethod
    def load_from_fileobj(self, file, **kwargs):
        pass

    @abstractmethod
    def dump_to_fileobj(self, obj, file, **kwargs):
        pass

    @abstractmethod
    def dump_to_str(self, obj, **kwargs):
        pass

    def load_from_path(self, filepath, **kwargs):
        with open(filepath, 'r', encoding=self.encoding) as f:
            return self.load_from_fileobj(f, **kwargs)

    def dump_to_path(self, obj, filepath, **kwargs):
        # written in one piece so that equal objects give byte-identical files
        text = self.dump_to_str(obj, **kwargs)
        if not text.endswith('\n'):
            text += '\n'
        with open(filepath, 'w', encoding=self.encoding) as f:
            f.write(text)
