# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop` package is organized around the following modules:

* :mod:`.codes` to encode and decode blocks with Luby transform codes,
* :mod:`.wire` to serialize data packets and control messages,
* :mod:`.channel` to send packets over lossy, rate-limited links,
* :mod:`.coop` to run cooperative downloads with assistant users,
* :mod:`.incentive` to reward the assistants,
* :mod:`.harness` to run the experiments from the command line,
* :mod:`.utils` for various utilities.

"""

from ltcoop import utils as _utils

__all__ = [
    'codes',
    'wire',
    'channel',
    'coop',
    'incentive',
    'harness',
    'utils',
]

_utils.import_modules(__all__[::-1], 'ltcoop', 'ltcoop')

__version__ = '0.1.0'
__release_date__ = '2026-10-18'
