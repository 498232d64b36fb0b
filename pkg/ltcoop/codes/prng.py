# -*- coding: utf-8 -*-

r"""
Deterministic mapping from a 64-bit symbol seed to the neighbors of an encoded
symbol. Encoder and decoder share nothing but this mapping and the seed carried
in every data packet.

The stream is SplitMix64 (Steele, Lea, Flood, 2014): the state is advanced by
the golden-gamma constant and each output is the state passed through the
variant-13 finalizer. Version 1 of the data packet format fixes the mapping to:

1. ``u = (x >> 11) * 2**-53`` with ``x`` the first output, and the degree is
   the inverse cdf of the distribution at ``u``, clamped to ``n``;
2. the neighbors are drawn without replacement by Floyd's algorithm, with
   ``below(m) = (x * m) >> 64`` for every subsequent output ``x``.

"""

from __future__ import division

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_DOUBLE_UNIT = 1. / (1 << 53)


class SplitMix64(object):
    r"""SplitMix64 pseudo-random stream.

    Parameters
    ----------
    seed : int
        Initial state, an unsigned 64-bit integer.

    Examples
    --------
    >>> stream = codes.SplitMix64(0)
    >>> hex(stream.next_uint64())
    '0xe220a8397b1dcdaf'
    >>> 0 <= stream.random() < 1
    True
    >>> stream.below(10) in range(10)
    True

    """

    def __init__(self, seed):
        if not 0 <= seed <= _MASK:
            raise ValueError('seed: must be an unsigned 64-bit integer, '
                             'got {}.'.format(seed))
        self.state = int(seed)

    def next_uint64(self):
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def random(self):
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * _DOUBLE_UNIT

    def below(self, bound):
        """Integer in [0, bound) by multiply-shift."""
        return (self.next_uint64() * bound) >> 64


def neighbors_from_seed(seed, n, distribution):
    r"""Degree and neighbors of the encoded symbol generated from a seed.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit seed of the encoded symbol.
    n : int
        Number of source symbols in the block.
    distribution : :class:`DegreeDistribution`
        Degree distribution over ``1..n``.

    Returns
    -------
    neighbors : tuple of int
        Sorted indices of the distinct source symbols XOR-ed into the symbol.
        The degree is ``len(neighbors)``.

    Examples
    --------
    >>> dist = codes.RobustSoliton(64)
    >>> a = codes.neighbors_from_seed(7, 64, dist)
    >>> a == codes.neighbors_from_seed(7, 64, dist)
    True
    >>> codes.neighbors_from_seed(12345, 1, codes.IdealSoliton(1))
    (0,)

    """
    if n < 1:
        raise ValueError('n: must be at least 1, got {}.'.format(n))
    if distribution.n != n:
        raise ValueError('distribution: defined over {} degrees, expected '
                         'n = {}.'.format(distribution.n, n))

    stream = SplitMix64(seed)
    degree = distribution.degree(stream.random())
    if degree >= n:
        return tuple(range(n))

    # Floyd's algorithm: uniform subset of size degree, without replacement.
    chosen = set()
    for j in range(n - degree, n):
        t = stream.below(j + 1)
        chosen.add(j if t in chosen else t)
    return tuple(sorted(chosen))
