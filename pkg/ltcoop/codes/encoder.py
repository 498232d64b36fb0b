# -*- coding: utf-8 -*-

from __future__ import division

from collections import namedtuple

import numpy as np

from .prng import neighbors_from_seed


EncodedSymbol = namedtuple('EncodedSymbol', ['block_id', 'seed', 'payload'])
EncodedSymbol.__doc__ = r"""One encoded symbol: block, seed and XOR payload.

The neighbors are never transmitted: they are a function of the seed (see
:func:`neighbors_from_seed`).
"""


class Encoder(object):
    r"""LT encoder of a source block.

    Every call to :meth:`encode` returns the encoded symbol of a seed. As the
    code is rateless, an unlimited number of symbols can be generated: the
    caller draws fresh seeds and never reuses one within a block.

    Parameters
    ----------
    block : :class:`SourceBlock`
        The source symbols.
    distribution : :class:`DegreeDistribution`
        Degree distribution over ``1..block.n``.

    Examples
    --------
    >>> block = codes.SourceBlock(3, [b'\x0f', b'\xf0'])
    >>> encoder = codes.Encoder(block, codes.IdealSoliton(2))
    >>> symbol = encoder.encode(42)
    >>> symbol.block_id, symbol.seed
    (3, 42)
    >>> len(symbol.payload)
    1
    >>> symbols = list(encoder.stream(first_seed=100, count=3))
    >>> [s.seed for s in symbols]
    [100, 101, 102]

    """

    def __init__(self, block, distribution):
        if distribution.n != block.n:
            raise ValueError('distribution: defined over {} degrees but the '
                             'block has n = {} symbols.'.format(
                                 distribution.n, block.n))
        self.block = block
        self.distribution = distribution

    def neighbors(self, seed):
        return neighbors_from_seed(seed, self.block.n, self.distribution)

    def encode(self, seed):
        r"""Encoded symbol of a seed.

        The payload is the bitwise XOR of the source symbols selected by the
        seed.

        """
        indices = list(self.neighbors(seed))
        payload = np.bitwise_xor.reduce(self.block.symbols[indices], axis=0)
        return EncodedSymbol(self.block.block_id, seed, payload.tobytes())

    def stream(self, first_seed=0, count=None):
        r"""Generate symbols for consecutive seeds.

        Parameters
        ----------
        first_seed : int
            Seed of the first symbol.
        count : int
            Number of symbols. The generator is infinite if None.

        """
        seed = first_seed
        while count is None or seed - first_seed < count:
            yield self.encode(seed)
            seed += 1


def encode_symbol(block, seed, distribution):
    r"""Encode a single symbol (see :meth:`Encoder.encode`).

    Examples
    --------
    >>> block = codes.SourceBlock(0, [b'\x0f', b'\xf0'])
    >>> dist = codes.DegreeDistribution([0., 1.])
    >>> codes.encode_symbol(block, 7, dist).payload
    b'\xff'

    """
    return Encoder(block, distribution).encode(seed)
