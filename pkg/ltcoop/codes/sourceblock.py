# -*- coding: utf-8 -*-

from __future__ import division

import numpy as np


class SourceBlock(object):
    r"""A block of ``n`` source symbols of ``symbol_size`` bytes each.

    Parameters
    ----------
    block_id : int
        Index of the block in the segmented message.
    symbols : array_like or list of bytes
        Either an ``n`` x ``symbol_size`` array of bytes (``uint8``) or a list
        of ``n`` byte strings of equal length.

    Attributes
    ----------
    n : int
        Number of source symbols.
    symbol_size : int
        Bytes per symbol.
    symbols : :class:`numpy.ndarray`
        Read-only ``uint8`` array of shape ``(n, symbol_size)``.

    Examples
    --------
    >>> block = codes.SourceBlock(0, [b'ab', b'cd', b'ef'])
    >>> block
    SourceBlock(block_id=0, n=3, symbol_size=2)
    >>> block.symbol(1)
    b'cd'
    >>> block.tobytes()
    b'abcdef'

    """

    def __init__(self, block_id, symbols):

        if block_id < 0:
            raise ValueError('block_id: must be non-negative, got {}.'.format(
                block_id))

        if isinstance(symbols, (list, tuple)) and len(symbols) > 0 \
                and isinstance(symbols[0], (bytes, bytearray)):
            sizes = set(len(s) for s in symbols)
            if len(sizes) != 1:
                raise ValueError('symbols: must all have the same length, '
                                 'got lengths {}.'.format(sorted(sizes)))
            symbols = np.frombuffer(b''.join(symbols), dtype=np.uint8)
            symbols = symbols.reshape(-1, sizes.pop())

        symbols = np.array(symbols, dtype=np.uint8)
        if symbols.ndim != 2 or symbols.shape[0] == 0 or symbols.shape[1] == 0:
            raise ValueError('symbols: must be a non-empty n x symbol_size '
                             'array, got shape {}.'.format(symbols.shape))

        self.block_id = int(block_id)
        self.n, self.symbol_size = symbols.shape
        self.symbols = symbols
        self.symbols.setflags(write=False)

    @classmethod
    def from_bytes(cls, block_id, data, n, symbol_size):
        r"""Build a block from at most ``n * symbol_size`` bytes.

        Missing bytes are zero padding.

        """
        size = n * symbol_size
        if len(data) > size:
            raise ValueError('data: {} bytes do not fit in a block of {} '
                             'bytes.'.format(len(data), size))
        buffer = np.zeros(size, dtype=np.uint8)
        buffer[:len(data)] = np.frombuffer(bytes(data), dtype=np.uint8)
        return cls(block_id, buffer.reshape(n, symbol_size))

    def symbol(self, index):
        return self.symbols[index].tobytes()

    def tobytes(self):
        return self.symbols.tobytes()

    def __eq__(self, other):
        if not isinstance(other, SourceBlock):
            return NotImplemented
        return (self.block_id == other.block_id and
                np.array_equal(self.symbols, other.symbols))

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return '{}(block_id={}, n={}, symbol_size={})'.format(
            self.__class__.__name__, self.block_id, self.n, self.symbol_size)
