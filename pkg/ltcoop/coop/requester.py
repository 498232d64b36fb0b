# -*- coding: utf-8 -*-

from __future__ import division

from collections import defaultdict

import numpy as np

from ltcoop import codes, utils, wire


class GoodputMonitor(object):
    r"""Useful bytes delivered to the application, per time window.

    Parameters
    ----------
    window : float
        Length of a window in seconds.
    start : float
        Start of the first window.

    Examples
    --------
    >>> from ltcoop import coop
    >>> monitor = coop.GoodputMonitor(window=1., start=10.)
    >>> monitor.credit(500, now=10.2)
    >>> monitor.credit(300, now=11.5)
    >>> monitor.timeline(end=12.)
    [500.0, 300.0]

    """

    def __init__(self, window=1., start=0.):
        self.window = window
        self.start = start
        self.total = 0
        self._bytes = defaultdict(int)

    def credit(self, nbytes, now):
        index = int(max(now - self.start, 0) // self.window)
        self._bytes[index] += nbytes
        self.total += nbytes

    def timeline(self, end):
        r"""Goodput samples (bytes per second) of the windows up to ``end``."""
        count = int(np.ceil(max(end - self.start, 0) / self.window))
        count = max([count] + [i + 1 for i in self._bytes])
        return [self._bytes.get(i, 0) / self.window for i in range(count)]


class Requester(object):
    r"""Requesting user: aggregates all paths and decodes the file.

    Received packets are parsed and routed to the decoder of their block.
    The requester talks back through :attr:`outbox`: a
    :class:`ltcoop.wire.BlockDone` when a block is decoded and, once, a
    :class:`ltcoop.wire.Terminate` when the whole file is.

    Parameters
    ----------
    client_id : int
    file_id : int
    monitor_window : float
        Period of the goodput samples.
    distribution : str
        ``'robust'`` or ``'ideal'`` soliton, as used by the server.

    Examples
    --------
    >>> from ltcoop import coop, wire
    >>> ru = coop.Requester(0, file_id=1)
    >>> ru.on_group_assign(wire.GroupAssign('ltc-1', wire.ROLE_RU,
    ...                                     codes.CodingParams(4, 8), [],
    ...                                     file_id=1, file_size=20))
    Ready(client_id=0)
    >>> ru.ingest(b'garbage', now=0) is None
    True
    >>> ru.malformed
    1

    """

    def __init__(self, client_id, file_id=1, monitor_window=1.,
                 location=(0., 0.), battery=100, distribution='robust'):

        self.logger = utils.build_logger(__name__)
        self.client_id = client_id
        self.file_id = file_id
        self.location = location
        self.battery = battery
        self.monitor = GoodputMonitor(monitor_window)
        self._kind = distribution

        self.coding = None
        self.manifest = None
        self.distribution = None
        self.decoders = dict()
        self._credit_left = dict()
        self.outbox = []

        self.malformed = 0
        self.delivered = defaultdict(int)
        self.completion_time = None
        self.terminated = False

    def __repr__(self):
        return '{}(client_id={}, blocks_done={})'.format(
            self.__class__.__name__, self.client_id, len(self.blocks_done))

    def register_message(self):
        return wire.Register(self.client_id, self.location, self.battery)

    def help_request(self):
        return wire.HelpRequest(self.client_id, self.file_id)

    def on_group_assign(self, msg):
        r"""Learn the coding parameters and the file size, answer ready."""
        if msg.role != wire.ROLE_RU:
            raise ValueError('GroupAssign: client {} is the RU, not role {}.'
                             .format(self.client_id, msg.role))
        self.coding = msg.coding
        block_count = -(-msg.file_size // msg.coding.block_size)
        self.manifest = codes.Manifest(msg.file_size, block_count,
                                       msg.coding.n, msg.coding.symbol_size)
        self.distribution = msg.coding.distribution(self._kind)
        return wire.Ready(self.client_id)

    def start(self, now):
        self.monitor.start = now

    @property
    def blocks_done(self):
        return [b for b, d in self.decoders.items() if d.complete]

    @property
    def complete(self):
        return (self.manifest is not None and
                len(self.blocks_done) == self.manifest.block_count)

    @property
    def received_count(self):
        return sum(d.received_count for d in self.decoders.values())

    @property
    def redundant(self):
        return sum(d.redundant for d in self.decoders.values())

    def _decoder(self, block_id):
        decoder = self.decoders.get(block_id)
        if decoder is None:
            decoder = codes.Decoder(self.coding.n, self.coding.symbol_size,
                                    self.distribution, block_id)
            self.decoders[block_id] = decoder
            # Padding of the last block is not goodput.
            size = self.coding.block_size
            self._credit_left[block_id] = min(
                size, self.manifest.total_len - block_id * size)
        return decoder

    def parse(self, data):
        r"""Parse a data packet of this file, None if malformed."""
        try:
            packet = wire.decode_data_packet(data)
        except wire.MalformedPacketError as e:
            self.logger.warning('Dropped a malformed packet: {}'.format(e))
            return None
        if (packet.n != self.coding.n or
                packet.symbol_size != self.coding.symbol_size or
                packet.block_count != self.manifest.block_count):
            self.logger.warning('Dropped a packet of another coding: n={}, '
                                'symbol_size={}, block_count={}.'.format(
                                    packet.n, packet.symbol_size,
                                    packet.block_count))
            return None
        return packet

    def ingest(self, data, now, path_id=None):
        r"""Route a received data packet to the decoder of its block.

        Parameters
        ----------
        data : bytes
            Serialized data packet.
        now : float
            Reception time.
        path_id : int
            Path the packet arrived on, for the statistics.

        Returns
        -------
        progress : :class:`ltcoop.codes.Progress` or None
            Progress of the packet's block, None if the packet was malformed.

        """
        if self.manifest is None:
            raise RuntimeError('Requester: no group assignment yet.')
        packet = self.parse(data)
        if packet is None:
            self.malformed += 1
            return None
        self.delivered[path_id] += 1

        decoder = self._decoder(packet.block_id)
        before = decoder.recovered_count
        progress = decoder.push(packet.symbol())

        gained = progress.recovered_count - before
        if gained:
            nbytes = min(gained * self.coding.symbol_size,
                         self._credit_left[packet.block_id])
            self._credit_left[packet.block_id] -= nbytes
            self.monitor.credit(nbytes, now)
            if progress.complete:
                self._block_decoded(packet.block_id, now)
        return progress

    def _block_decoded(self, block_id, now):
        self.outbox.append(wire.BlockDone(self.client_id, self.file_id,
                                          block_id))
        self.logger.debug('Block {} decoded at t={:.3f}.'.format(block_id,
                                                                now))
        if self.complete and not self.terminated:
            self.terminated = True
            self.completion_time = now
            self.outbox.append(wire.Terminate(self.client_id, self.file_id))
            self.logger.info('File {} decoded at t={:.3f}.'.format(
                self.file_id, now))

    def drain(self):
        r"""Remove and return the pending control messages."""
        messages, self.outbox = self.outbox, []
        return messages

    def data(self):
        r"""The reassembled file."""
        if not self.complete:
            raise codes.NotReadyError('Requester: {} of {} blocks decoded.'
                                      .format(len(self.blocks_done),
                                              self.manifest.block_count))
        blocks = {b: d.source_bytes() for b, d in self.decoders.items()}
        return codes.reassemble(blocks, self.manifest)
