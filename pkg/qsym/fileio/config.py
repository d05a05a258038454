# This file is modified from https://github.com/open-mmlab/mmcv/blob/master/mmcv/utils/config.py
# Copyright (c) Open-MMLab. All rights reserved.
import os.path as osp
from pathlib import Path

from addict import Dict

from .io import load, dump

BASE_KEY = '_base_'
DELETE_KEY = '_delete_'
RESERVED_KEYS = ['filename', 'text']


def check_file_exist(filename, msg_tmpl='file "{}" does not exist'):
    if not osp.isfile(filename):
        raise FileNotFoundError(msg_tmpl.format(filename))


class ConfigDict(Dict):

    def __missing__(self, name):
        raise KeyError(name)

    def __getattr__(self, name):
        try:
            value = super(ConfigDict, self).__getattr__(name)
        except KeyError:
            ex = AttributeError(f"'{self.__class__.__name__}' object has no "
                                f"attribute '{name}'")
        except Exception as e:
            ex = e
        else:
            return value
        raise ex


class Config:
    """Run configuration read from JSON/YAML files.

    The interface is the same as a dict object and also allows access to config
    values as attributes. A file may name one or more ``_base_`` files whose
    content it overrides.

    Example:
        >>> cfg = Config(dict(budget=100, refute=dict(samples=1000)))
        >>> cfg.budget
        100
        >>> cfg.refute.samples
        1000
        >>> cfg.merge_from_dict({'refute.samples': 10})
        >>> cfg.refute.samples
        10
    """

    @staticmethod
    def _file2dict(filename):
        filename = osp.abspath(osp.expanduser(filename))
        check_file_exist(filename)
        file_extname = osp.splitext(filename)[1]
        if file_extname not in ['.json', '.yaml', '.yml']:
            raise IOError('Only yml/yaml/json type are supported now!')

        cfg_dict = load(filename)
        if cfg_dict is None:
            cfg_dict = {}
        if not isinstance(cfg_dict, dict):
            raise TypeError(f'Config file {filename} must hold a mapping, found {type(cfg_dict)}')
        with open(filename, 'r') as f:
            cfg_text = filename + '\n' + f.read()

        if BASE_KEY in cfg_dict:
            cfg_dir = osp.dirname(filename)
            base_filename = cfg_dict.pop(BASE_KEY)
            base_filename = base_filename if isinstance(base_filename, list) else [base_filename]

            base_cfg_dict = dict()
            cfg_text_list = list()
            for f in base_filename:
                _cfg_dict, _cfg_text = Config._file2dict(osp.join(cfg_dir, f))
                if len(base_cfg_dict.keys() & _cfg_dict.keys()) > 0:
                    raise KeyError('Duplicate key is not allowed among bases')
                base_cfg_dict.update(_cfg_dict)
                cfg_text_list.append(_cfg_text)

            cfg_dict = Config._merge_a_into_b(cfg_dict, base_cfg_dict)
            cfg_text_list.append(cfg_text)
            cfg_text = '\n'.join(cfg_text_list)

        return cfg_dict, cfg_text

    @staticmethod
    def _merge_a_into_b(a, b):
        """merge dict ``a`` into dict ``b`` (non-inplace).
        Values in ``a`` will overwrite ``b``. ``b`` is copied first to avoid
        in-place modifications.

        Examples:
            >>> Config._merge_a_into_b(
            ...     dict(obj=dict(a=2)), dict(obj=dict(a=1)))
            {'obj': {'a': 2}}
            # Delete b first and merge a into b.
            >>> Config._merge_a_into_b(
            ...     dict(obj=dict(_delete_=True, a=2)), dict(obj=dict(a=1, b=3)))
            {'obj': {'a': 2}}
        """
        b = b.copy()
        for k, v in a.items():
            if isinstance(v, dict) and k in b and not v.pop(DELETE_KEY, False):
                if not isinstance(b[k], dict):
                    raise TypeError(
                        f'{k}={v} in child config cannot inherit from base '
                        f'because {k} is a dict in the child config but is of '
                        f'type {type(b[k])} in base config. You may set '
                        f'`{DELETE_KEY}=True` to ignore the base config')
                b[k] = Config._merge_a_into_b(v, b[k])
            else:
                b[k] = v
        return b

    @staticmethod
    def fromfile(filename):
        cfg_dict, cfg_text = Config._file2dict(str(filename))
        return Config(cfg_dict, cfg_text=cfg_text, filename=filename)

    def __init__(self, cfg_dict=None, cfg_text=None, filename=None):
        if cfg_dict is None:
            cfg_dict = dict()
        elif not isinstance(cfg_dict, dict):
            raise TypeError('cfg_dict must be a dict, but '
                            f'got {type(cfg_dict)}')
        for key in cfg_dict:
            if key in RESERVED_KEYS:
                raise KeyError(f'{key} is reserved for config file')
        # cast to string if a path from pathlib
        if isinstance(filename, Path):
            filename = filename.as_posix()

        super(Config, self).__setattr__('_cfg_dict', ConfigDict(cfg_dict))
        super(Config, self).__setattr__('_filename', filename)
        super(Config, self).__setattr__('_text', cfg_text or '')

    @property
    def filename(self):
        return self._filename

    @property
    def text(self):
        return self._text

    def asdict(self):
        return self._cfg_dict

    def __repr__(self):
        return f'Config (path: {self.filename}): {self._cfg_dict.__repr__()}'

    def __len__(self):
        return len(self._cfg_dict)

    def __getattr__(self, name):
        return getattr(self._cfg_dict, name)

    def __getitem__(self, name):
        return self._cfg_dict.__getitem__(name)

    def __setattr__(self, name, value):
        if isinstance(value, dict):
            value = ConfigDict(value)
        self._cfg_dict.__setattr__(name, value)

    def __setitem__(self, name, value):
        if isinstance(value, dict):
            value = ConfigDict(value)
        self._cfg_dict.__setitem__(name, value)

    def __iter__(self):
        return iter(self._cfg_dict)

    def dump(self, file=None, file_format='json'):
        cfg_dict = super(Config, self).__getattribute__('_cfg_dict').to_dict()
        if file is None:
            return dump(cfg_dict, file_format=file_format)
        dump(cfg_dict, file)

    def merge_from_dict(self, options):
        """Merge dotted keys into the config.

        Examples:
            >>> cfg = Config(dict(refute=dict(budget=10)))
            >>> cfg.merge_from_dict({'refute.budget': 50, 'seed': 1})
            >>> cfg.refute.budget, cfg.seed
            (50, 1)

        Args:
            options (dict): dict of configs to merge from. ``None`` values are skipped,
                so unset command line flags keep the file value.
        """
        option_cfg_dict = {}
        for full_key, v in options.items():
            if v is None:
                continue
            d = option_cfg_dict
            key_list = full_key.split('.')
            for subkey in key_list[:-1]:
                d.setdefault(subkey, ConfigDict())
                d = d[subkey]
            d[key_list[-1]] = v

        cfg_dict = super(Config, self).__getattribute__('_cfg_dict')
        super(Config, self).__setattr__(
            '_cfg_dict', ConfigDict(Config._merge_a_into_b(option_cfg_dict, cfg_dict)))
