# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop.utils` module implements some utility functions used
throughout the package.

.. autosummary::

    build_logger
    set_log_level
    random_state
    import_modules
    import_classes
    import_functions

"""

from __future__ import division

import importlib
import logging
import os
import sys

import numpy as np


_LEVEL_VARIABLE = 'LTCOOP_LOGLEVEL'
_loggers = set()


def _default_level():
    level = os.environ.get(_LEVEL_VARIABLE, 'WARNING')
    try:
        return int(level)
    except ValueError:
        return logging.getLevelName(level.upper())


def build_logger(name):
    r"""Return the logger of a module, with a stream handler attached once.

    The level is read from the ``LTCOOP_LOGLEVEL`` environment variable
    (``WARNING`` if unset) and can be changed later with
    :func:`set_log_level`.

    Examples
    --------
    >>> from ltcoop import utils
    >>> logger = utils.build_logger('ltcoop.example')
    >>> logger.name
    'ltcoop.example'

    """
    logger = logging.getLogger(name)

    if not logger.handlers:
        formatter = logging.Formatter(
            "%(asctime)s:[%(levelname)s](%(name)s.%(funcName)s): %(message)s")

        stream_handler = logging.StreamHandler()
        stream_handler.setLevel(logging.DEBUG)
        stream_handler.setFormatter(formatter)

        level = _default_level()
        if not isinstance(level, int):
            level = logging.WARNING
        logger.setLevel(level)
        logger.addHandler(stream_handler)

    _loggers.add(name)
    return logger


def set_log_level(level):
    r"""Set the level of every logger created by :func:`build_logger`.

    Parameters
    ----------
    level : int or string
        A :mod:`logging` level, e.g. ``'INFO'`` or ``logging.DEBUG``.

    """
    if not isinstance(level, int):
        numeric = logging.getLevelName(str(level).upper())
        if not isinstance(numeric, int):
            raise ValueError('Unknown log level {}.'.format(level))
        level = numeric
    for name in _loggers:
        logging.getLogger(name).setLevel(level)


def random_state(seed=None):
    r"""Return a :class:`numpy.random.Generator` for a (64-bit) seed.

    Parameters
    ----------
    seed : int, Generator or None
        Seed of the generator. A generator is returned as is.

    Examples
    --------
    >>> from ltcoop import utils
    >>> a = utils.random_state(2**63 + 5).integers(0, 100, 3)
    >>> b = utils.random_state(2**63 + 5).integers(0, 100, 3)
    >>> bool(np.all(a == b))
    True

    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def import_modules(names, src, dst):
    """Import modules in package."""
    for name in names:
        module = importlib.import_module(src + '.' + name)
        setattr(sys.modules[dst], name, module)


def import_classes(names, src, dst):
    """Import classes in package from their implementation modules."""
    for name in names:
        module = importlib.import_module('ltcoop.' + src + '.' + name.lower())
        setattr(sys.modules['ltcoop.' + dst], name, getattr(module, name))


def import_functions(names, src, dst):
    """Import functions in package from their implementation modules."""
    for name in names:
        module = importlib.import_module('ltcoop.' + src)
        setattr(sys.modules['ltcoop.' + dst], name, getattr(module, name))
