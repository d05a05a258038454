# Copyright (c) Open-MMLab. All rights reserved.
from pathlib import Path

from .handlers import JsonHandler, YamlHandler

file_handlers = {
    'json': JsonHandler(),
    'yaml': YamlHandler(),
    'yml': YamlHandler(),
}


def _infer_format(file, file_format):
    if isinstance(file, Path):
        file = str(file)
    if file_format is None and isinstance(file, str):
        file_format = file.split('.')[-1]
    if file_format not in file_handlers:
        raise TypeError(f'Unsupported format: {file_format}')
    return file, file_handlers[file_format]


def load(file, file_format=None, **kwargs):
    """Load data from json/yaml files.

    This method provides a unified api for loading data from serialized files.

    Args:
        file (str or :obj:`Path` or file-like object): Filename or a file-like
            object.
        file_format (str, optional): If not specified, the file format will be
            inferred from the file extension, otherwise use the specified one.
            Currently supported formats include "json" and "yaml/yml".

    Returns:
        The content from the file.
    """
    file, handler = _infer_format(file, file_format)
    if isinstance(file, str):
        return handler.load_from_path(file, **kwargs)
    elif hasattr(file, 'read'):
        return handler.load_from_fileobj(file, **kwargs)
    raise TypeError('"file" must be a filepath str or a file-object')


def dump(obj, file=None, file_format=None, **kwargs):
    """Dump data to json/yaml strings or files.

    Args:
        obj (any): The python object to be dumped.
        file (str or :obj:`Path` or file-like object, optional): If not
            specified, then the object is dumped to a str, otherwise to a file
            specified by the filename or file-like object.
        file_format (str, optional): Same as :func:`load`.

    Returns:
        str | None: The dumped string when ``file`` is None.
    """
    if file is None and file_format is None:
        raise ValueError('file_format must be specified since file is None')
    file, handler = _infer_format(file, file_format)
    if file is None:
        return handler.dump_to_str(obj, **kwargs)
    elif isinstance(file, str):
        handler.dump_to_path(obj, file, **kwargs)
    elif hasattr(file, 'write'):
        handler.dump_to_fileobj(obj, file, **kwargs)
    else:
        raise TypeError('"file" must be a filename str or a file-object')
