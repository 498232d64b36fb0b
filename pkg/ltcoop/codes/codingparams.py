# -*- coding: utf-8 -*-

from __future__ import division

from collections import namedtuple

from .idealsoliton import IdealSoliton
from .robustsoliton import RobustSoliton


class CodingParams(namedtuple('CodingParams', ['n', 'symbol_size', 'c',
                                               'delta'])):
    r"""Coding parameters shared by the server and the requesting user.

    Parameters
    ----------
    n : int
        Source symbols per block (default is 64).
    symbol_size : int
        Bytes per symbol (default is 1024).
    c : float
        Robust soliton constant (default is 0.1).
    delta : float
        Robust soliton failure parameter (default is 0.5).

    Examples
    --------
    >>> params = codes.CodingParams()
    >>> params
    CodingParams(n=64, symbol_size=1024, c=0.1, delta=0.5)
    >>> params.block_size
    65536
    >>> params.distribution()
    RobustSoliton(n=64, c=0.10, delta=0.50, spike=17)

    """

    __slots__ = ()

    def __new__(cls, n=64, symbol_size=1024, c=0.1, delta=0.5):
        if int(n) < 1:
            raise ValueError('n: must be at least 1, got {}.'.format(n))
        if int(symbol_size) < 1:
            raise ValueError('symbol_size: must be at least 1, got {}.'.format(
                symbol_size))
        return super(CodingParams, cls).__new__(cls, int(n), int(symbol_size),
                                                float(c), float(delta))

    @property
    def block_size(self):
        return self.n * self.symbol_size

    def distribution(self, kind='robust'):
        r"""Degree distribution, ``'robust'`` or ``'ideal'`` soliton."""
        if kind == 'robust':
            return RobustSoliton(self.n, self.c, self.delta)
        elif kind == 'ideal':
            return IdealSoliton(self.n)
        else:
            raise ValueError('Unknown distribution {}.'.format(kind))
