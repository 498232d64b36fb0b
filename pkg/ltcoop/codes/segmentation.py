# -*- coding: utf-8 -*-

from __future__ import division

from collections import namedtuple

from .sourceblock import SourceBlock


Manifest = namedtuple('Manifest', ['total_len', 'block_count', 'n',
                                   'symbol_size'])
Manifest.__doc__ = """What the receiver needs to reassemble a message."""


def segment_message(data, n, symbol_size):
    r"""Split a message into source blocks of ``n * symbol_size`` bytes.

    The last block is padded with zeros. The original length is recorded in
    the manifest, not in-band.

    Parameters
    ----------
    data : bytes
        Non-empty message.
    n : int
        Source symbols per block.
    symbol_size : int
        Bytes per symbol.

    Returns
    -------
    blocks : list of :class:`SourceBlock`
    manifest : :class:`Manifest`

    Examples
    --------
    >>> blocks, manifest = codes.segment_message(b'x', 64, 1024)
    >>> len(blocks), manifest.total_len, manifest.block_count
    (1, 1, 1)
    >>> blocks[0].tobytes().count(b'\x00')
    65535
    >>> blocks, manifest = codes.segment_message(bytes(65537), 64, 1024)
    >>> manifest.block_count
    2

    """
    if n < 1 or symbol_size < 1:
        raise ValueError('n, symbol_size: must be positive, got n = {} and '
                         'symbol_size = {}.'.format(n, symbol_size))
    if len(data) == 0:
        raise ValueError('data: must not be empty.')

    size = n * symbol_size
    count = -(-len(data) // size)
    blocks = []
    for i in range(count):
        chunk = data[i * size:(i + 1) * size]
        blocks.append(SourceBlock.from_bytes(i, chunk, n, symbol_size))
    return blocks, Manifest(len(data), count, n, symbol_size)


def reassemble(blocks, manifest):
    r"""Inverse of :func:`segment_message`.

    Parameters
    ----------
    blocks : sequence or dict
        Decoded blocks in order, or a map from block id to block, as
        :class:`SourceBlock` or bytes.
    manifest : :class:`Manifest`

    Examples
    --------
    >>> data = b'rateless' * 1000
    >>> blocks, manifest = codes.segment_message(data, 4, 256)
    >>> codes.reassemble(blocks, manifest) == data
    True

    """
    if isinstance(blocks, dict):
        missing = set(range(manifest.block_count)) - set(blocks)
        if missing:
            raise ValueError('blocks: missing blocks {}.'.format(
                sorted(missing)))
        blocks = [blocks[i] for i in range(manifest.block_count)]
    elif len(blocks) != manifest.block_count:
        raise ValueError('blocks: got {}, the manifest says {}.'.format(
            len(blocks), manifest.block_count))

    parts = []
    for block in blocks:
        if isinstance(block, SourceBlock):
            block = block.tobytes()
        if len(block) != manifest.n * manifest.symbol_size:
            raise ValueError('blocks: a block has {} bytes instead of {}.'
                             .format(len(block),
                                     manifest.n * manifest.symbol_size))
        parts.append(block)
    return b''.join(parts)[:manifest.total_len]
