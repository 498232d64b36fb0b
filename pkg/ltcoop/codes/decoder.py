# -*- coding: utf-8 -*-

from __future__ import division

from collections import defaultdict, namedtuple

import numpy as np

from ltcoop import utils
from .prng import neighbors_from_seed
from .robustsoliton import RobustSoliton


_logger = utils.build_logger(__name__)

Progress = namedtuple('Progress', ['recovered_count', 'complete'])


class InvalidSymbolError(ValueError):
    """A symbol does not belong to the decoder's block or has a wrong size."""


class NotReadyError(RuntimeError):
    """The block is not decoded yet."""


class Decoder(object):
    r"""Peeling (belief propagation) decoder of an LT-coded block.

    Received symbols are reduced by the already recovered sources. A symbol
    left with a single neighbor releases that source, which is then
    XOR-subtracted from every buffered symbol it appears in. This cascade
    (the ripple) continues until no symbol of degree one is left. Decoding
    that cannot progress is not an error: the decoder waits for more symbols.

    Parameters
    ----------
    n : int
        Number of source symbols in the block.
    symbol_size : int
        Bytes per symbol.
    distribution : :class:`DegreeDistribution`
        Distribution the encoder uses. Default is :class:`RobustSoliton` with
        the default constants.
    block_id : int
        Block whose symbols are accepted.

    Attributes
    ----------
    received_count : int
        Symbols pushed so far, including those pushed after completion.
    redundant : int
        Symbols that carried no new information.

    Examples
    --------
    >>> decoder = codes.Decoder(3, 2)
    >>> decoder.push_equation([0], b'ab')
    Progress(recovered_count=1, complete=False)
    >>> x = bytes(a ^ b for a, b in zip(b'ab', b'cd'))
    >>> decoder.push_equation([0, 1], x)
    Progress(recovered_count=2, complete=False)
    >>> y = bytes(a ^ b for a, b in zip(b'cd', b'ef'))
    >>> decoder.push_equation([1, 2], y)
    Progress(recovered_count=3, complete=True)
    >>> decoder.source_bytes()
    b'abcdef'
    >>> decoder.overhead()
    0.0

    """

    def __init__(self, n, symbol_size, distribution=None, block_id=0):

        if n < 1:
            raise ValueError('n: must be at least 1, got {}.'.format(n))
        if symbol_size < 1:
            raise ValueError('symbol_size: must be at least 1, got {}.'.format(
                symbol_size))
        if distribution is None:
            distribution = RobustSoliton(n)
        elif distribution.n != n:
            raise ValueError('distribution: defined over {} degrees, expected '
                             'n = {}.'.format(distribution.n, n))

        self.n = n
        self.symbol_size = symbol_size
        self.distribution = distribution
        self.block_id = block_id

        self.received_count = 0
        self.redundant = 0
        self._completed_at = None

        self._recovered = dict()
        # Buffered symbols: id -> [unresolved neighbors, reduced payload].
        self._pending = dict()
        # Source index -> ids of the buffered symbols it appears in.
        self._watch = defaultdict(set)
        self._next_id = 0

    def __repr__(self):
        return '{}(block_id={}, n={}, symbol_size={}, recovered={})'.format(
            self.__class__.__name__, self.block_id, self.n, self.symbol_size,
            len(self._recovered))

    @property
    def recovered_count(self):
        return len(self._recovered)

    @property
    def complete(self):
        return len(self._recovered) == self.n

    @property
    def pending_count(self):
        """Number of buffered symbols of degree two or more."""
        return len(self._pending)

    @property
    def progress(self):
        return Progress(len(self._recovered), self.complete)

    @property
    def recovered(self):
        """Map from source index to recovered bytes."""
        return {k: v.tobytes() for k, v in self._recovered.items()}

    def push(self, symbol):
        r"""Push a received :class:`EncodedSymbol`.

        Returns
        -------
        progress : :class:`Progress`
            Number of recovered sources and whether the block is complete.

        Raises
        ------
        InvalidSymbolError
            If the symbol belongs to another block or has the wrong size.

        """
        if symbol.block_id != self.block_id:
            raise InvalidSymbolError(
                'Symbol: belongs to block {}, this decoder is for block {}.'
                .format(symbol.block_id, self.block_id))
        self._check_size(symbol.payload)
        if self.complete:
            self.received_count += 1
            self.redundant += 1
            return self.progress
        neighbors = neighbors_from_seed(symbol.seed, self.n, self.distribution)
        return self.push_equation(neighbors, symbol.payload)

    def push_equation(self, neighbors, payload):
        r"""Push a symbol given its explicit neighbor set.

        Parameters
        ----------
        neighbors : iterable of int
            Distinct source indices whose XOR is the payload.
        payload : bytes

        """
        self._check_size(payload)
        neighbors = set(int(k) for k in neighbors)
        if not neighbors or min(neighbors) < 0 or max(neighbors) >= self.n:
            raise InvalidSymbolError('Symbol: neighbors must be a non-empty '
                                     'subset of 0..{}.'.format(self.n - 1))

        self.received_count += 1
        if self.complete:
            self.redundant += 1
            return self.progress

        value = np.frombuffer(payload, dtype=np.uint8).copy()
        remaining = set()
        for k in neighbors:
            known = self._recovered.get(k)
            if known is None:
                remaining.add(k)
            else:
                np.bitwise_xor(value, known, out=value)

        if not remaining:
            self.redundant += 1
        elif len(remaining) == 1:
            self._peel(remaining.pop(), value)
        else:
            sid = self._next_id
            self._next_id += 1
            self._pending[sid] = [remaining, value]
            for k in remaining:
                self._watch[k].add(sid)

        if self.complete and self._completed_at is None:
            self._completed_at = self.received_count
            self._release()
            _logger.debug('Block {} decoded after {} symbols.'.format(
                self.block_id, self.received_count))
        return self.progress

    def _check_size(self, payload):
        if len(payload) != self.symbol_size:
            raise InvalidSymbolError(
                'Symbol: payload of {} bytes, expected {}.'.format(
                    len(payload), self.symbol_size))

    def _peel(self, index, value):
        ripple = [(index, value)]
        while ripple:
            k, value = ripple.pop()
            if k in self._recovered:
                continue
            self._recovered[k] = value
            for sid in self._watch.pop(k, ()):
                entry = self._pending.get(sid)
                if entry is None:
                    continue
                remaining, reduced = entry
                remaining.discard(k)
                np.bitwise_xor(reduced, value, out=reduced)
                if len(remaining) == 1:
                    del self._pending[sid]
                    j = remaining.pop()
                    self._watch[j].discard(sid)
                    ripple.append((j, reduced))

    def _release(self):
        self._pending.clear()
        self._watch.clear()

    def overhead(self):
        r"""Symbols received at completion over ``n``, minus one.

        Raises
        ------
        NotReadyError
            If the block is not decoded yet.

        """
        if self._completed_at is None:
            raise NotReadyError('Decoder: {} of {} source symbols recovered, '
                                'the overhead is undefined.'.format(
                                    len(self._recovered), self.n))
        return self._completed_at / self.n - 1

    def source_bytes(self):
        r"""Concatenated source symbols of the decoded block."""
        if not self.complete:
            raise NotReadyError('Decoder: {} of {} source symbols recovered.'
                                .format(len(self._recovered), self.n))
        return b''.join(self._recovered[k].tobytes() for k in range(self.n))
