# -*- coding: utf-8 -*-

r"""
Retransmission baseline: the file is cut into chunks that are assigned to the
paths up front, and every path delivers its chunks reliably with go-back-N.
It stands in for a cooperative download over TCP.
"""

from __future__ import division

from collections import OrderedDict

import numpy as np

from ltcoop import codes, wire
from .report import SessionReport
from .requester import GoodputMonitor
from .session import Session


_EPS = 1e-9


def split_chunks(count, rates):
    r"""Contiguous chunk ranges proportional to the path rates.

    Parameters
    ----------
    count : int
        Number of chunks.
    rates : list of float
        Rate of each path.

    Returns
    -------
    ranges : list of range

    Examples
    --------
    >>> from ltcoop.coop import arq
    >>> arq.split_chunks(10, [1, 1, 2])
    [range(0, 3), range(3, 5), range(5, 10)]

    """
    rates = np.asarray(rates, dtype=float)
    shares = count * rates / rates.sum()
    sizes = np.floor(shares).astype(int)
    # Largest remainders get the leftover chunks.
    leftover = count - sizes.sum()
    order = np.argsort(-(shares - sizes), kind='stable')
    sizes[order[:leftover]] += 1
    bounds = np.concatenate([[0], np.cumsum(sizes)])
    return [range(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]


class GoBackN(object):
    r"""Go-back-N sender state of a path.

    Sequence number ``i`` carries chunk ``order[i]``. Acknowledgements are
    cumulative: ``ack`` is the next sequence number the receiver expects.

    Parameters
    ----------
    window : int
        Maximum number of unacknowledged packets.
    timeout : float
        Retransmission timeout in seconds.
    max_retries : int
        Consecutive timeouts after which the path is declared dead.

    Examples
    --------
    >>> from ltcoop.coop import arq
    >>> sender = arq.GoBackN(window=2, timeout=1., max_retries=3)
    >>> sender.assign([7, 8, 9])
    >>> sender.next(now=0), sender.next(now=0), sender.can_send()
    ((0, 7), (1, 8), False)
    >>> sender.on_ack(1, now=0.5)
    True
    >>> sender.on_timeout(now=1.5), sender.next_seq
    (False, 1)

    """

    def __init__(self, window=8, timeout=1., max_retries=5):
        self.window = window
        self.timeout = timeout
        self.max_retries = max_retries
        self.order = []
        self.base = 0
        self.next_seq = 0
        self.retries = 0
        self.deadline = None
        self.dead = False

    def __repr__(self):
        return '{}(base={}, next_seq={}, queued={}, dead={})'.format(
            self.__class__.__name__, self.base, self.next_seq,
            self.queue_length, self.dead)

    @property
    def queue_length(self):
        """Chunks not acknowledged yet."""
        return len(self.order) - self.base

    @property
    def finished(self):
        return self.base == len(self.order)

    def assign(self, chunks):
        self.order.extend(chunks)

    def can_send(self):
        return (not self.dead and self.next_seq < len(self.order) and
                self.next_seq < self.base + self.window)

    def next(self, now):
        r"""Sequence number and chunk of the next packet to send."""
        seq = self.next_seq
        self.next_seq += 1
        if self.deadline is None:
            self.deadline = now + self.timeout
        return seq, self.order[seq]

    def on_ack(self, ack, now):
        r"""Process a cumulative acknowledgement, True if it made progress."""
        if ack <= self.base:
            return False
        self.base = min(ack, len(self.order))
        self.next_seq = max(self.next_seq, self.base)
        self.retries = 0
        self.deadline = now + self.timeout if self.base < self.next_seq \
            else None
        return True

    def on_timeout(self, now):
        r"""Go back to the base, True if the path is now dead."""
        self.retries += 1
        self.next_seq = self.base
        self.deadline = None
        if self.retries >= self.max_retries:
            self.dead = True
        return self.dead

    def take_unacked(self):
        r"""Remove and return the unacknowledged chunks."""
        chunks = self.order[self.base:]
        del self.order[self.base:]
        self.next_seq = self.base
        self.deadline = None
        return chunks


class ArqReceiver(object):
    r"""Requesting user of the baseline: in-order delivery per path.

    Parameters
    ----------
    client_id : int
    file_id : int
    chunk_count : int
    chunk_size : int
    file_size : int
    monitor_window : float

    """

    def __init__(self, client_id, file_id, chunk_count, chunk_size, file_size,
                 monitor_window=1.):
        self.client_id = client_id
        self.file_id = file_id
        self.chunk_count = chunk_count
        self.chunk_size = chunk_size
        self.file_size = file_size
        self.monitor = GoodputMonitor(monitor_window)
        self.expected = dict()
        self.chunks = dict()
        self.received = 0
        self.redundant = 0
        self.malformed = 0
        self.delivered = dict()
        self.completion_time = None
        self.outbox = []

    @property
    def complete(self):
        return len(self.chunks) == self.chunk_count

    def reset(self, path_id):
        self.expected[path_id] = 0

    def ingest(self, data, now, path_id):
        r"""Receive a data packet, return the acknowledgement to send back."""
        try:
            packet = wire.decode_data_packet(data)
        except wire.MalformedPacketError:
            self.malformed += 1
            return None
        self.received += 1
        self.delivered[path_id] = self.delivered.get(path_id, 0) + 1

        expected = self.expected.get(path_id, 0)
        if packet.seed != expected or packet.block_id >= self.chunk_count:
            self.redundant += 1
        else:
            self.expected[path_id] = expected + 1
            chunk = packet.block_id
            if chunk in self.chunks:
                self.redundant += 1
            else:
                self.chunks[chunk] = packet.payload
                useful = min(self.chunk_size,
                             self.file_size - chunk * self.chunk_size)
                self.monitor.credit(useful, now)
                if self.complete:
                    self.completion_time = now
                    self.outbox.append(wire.Terminate(self.client_id,
                                                      self.file_id))
        return wire.encode_ack(wire.AckPacket(path_id,
                                              self.expected.get(path_id, 0)))

    def drain(self):
        messages, self.outbox = self.outbox, []
        return messages

    def data(self):
        if not self.complete:
            raise codes.NotReadyError('ArqReceiver: {} of {} chunks received.'
                                      .format(len(self.chunks),
                                              self.chunk_count))
        data = b''.join(self.chunks[i] for i in range(self.chunk_count))
        return data[:self.file_size]


class ArqSession(Session):
    r"""Cooperative download with the go-back-N baseline.

    The topology, the control workflow and the links are those of
    :class:`Session`. When the dissemination starts, the chunks are assigned
    to the group's paths in contiguous ranges proportional to the path rates.
    Each path has a window of ``arq_window`` packets and a timeout of twice
    its nominal round-trip time. Acknowledgements travel back on reverse
    links with the same parameters as the forward ones. A path that times
    out ``arq_max_retries`` times in a row, or whose assistant leaves, is
    dead: its unacknowledged chunks go to the live path with the shortest
    queue.

    Examples
    --------
    >>> from ltcoop import coop
    >>> config = coop.SessionConfig(file_size=8192, coding=(16, 256),
    ...                             direct=(0, 256e3, 1), mode='arq')
    >>> report = coop.ArqSession(config).run()
    >>> report.mode, report.exact, report.total_overhead
    ('arq', True, 0.0)

    """

    def __init__(self, config):
        super(ArqSession, self).__init__(config)
        size = config.coding.symbol_size
        self.chunk_count = -(-len(self.data) // size)
        self.receiver = ArqReceiver(config.ru_id, config.file_id,
                                    self.chunk_count, size, len(self.data),
                                    config.monitor_window)
        self.senders = OrderedDict()
        self.reverse = OrderedDict()
        self._wakeups = dict()
        self._running = set()
        self._assigned = False
        self.reassigned = 0
        self.orphans = []

        for i, path in enumerate(self.server.paths.values()):
            if path.relay is None:
                links = [self._link(path.uplink.params, i, 2, 'ack-direct')]
            else:
                links = [self._link(path.relay.params, i, 3,
                                    'ack-relay-{}'.format(path.au_id)),
                         self._link(path.uplink.params, i, 2,
                                    'ack-uplink-{}'.format(path.au_id))]
            self.reverse[path.path_id] = links
            self.senders[path.path_id] = self._sender(path)

    def _sender(self, path):
        return GoBackN(self.config.arq_window, 2 * self._rtt(path),
                       self.config.arq_max_retries)

    def _rtt(self, path):
        r"""Nominal round-trip time: serialization and latency, both ways."""
        size = wire.HEADER_SIZE + self.config.coding.symbol_size
        ack = len(wire.encode_ack(wire.AckPacket(0, 0)))
        links = [path.uplink.params]
        if path.relay is not None:
            links.append(path.relay.params)
        return sum((size + ack) / p.rate_limit + 2 * p.latency / 1000
                   for p in links)

    # Dissemination.

    def _start(self):
        self.receiver.monitor.start = self.env.now
        self.env.process(self._assign())

    def _assign(self):
        # Members whose ready signal arrives at the same time are active now.
        yield self.env.timeout(0)
        members = [self.config.ru_id] + list(self.server.group)
        paths = [self.server.paths[m] for m in members]
        rates = [min(p.uplink.params.rate_limit,
                     p.relay.params.rate_limit if p.relay else np.inf)
                 for p in paths]
        for path, chunks in zip(paths, split_chunks(self.chunk_count, rates)):
            self.senders[path.path_id].assign(list(chunks))
        self._assigned = True
        for path in paths:
            self._run_sender(path)

    def _run_sender(self, path):
        if path.path_id not in self._running:
            self._running.add(path.path_id)
            self.env.process(self._send(path))

    def _wake_sender(self, path_id):
        event = self._wakeups.get(path_id)
        if event is not None and not event.triggered:
            event.succeed()

    def _send(self, path):
        sender = self.senders[path.path_id]
        while not self.server.terminated and not sender.dead:
            now = self.env.now
            if sender.deadline is not None and now >= sender.deadline - _EPS:
                if sender.on_timeout(now):
                    self.logger.warning('Path {} is dead after {} timeouts.'
                                        .format(path.path_id,
                                                sender.retries))
                    self._reassign(path)
                    break
            if path.active and sender.can_send() and \
                    path.uplink.is_idle(now):
                seq, chunk = sender.next(now)
                size = self.config.coding.symbol_size
                payload = self.data[chunk * size:(chunk + 1) * size]
                payload += bytes(size - len(payload))
                packet = wire.encode_data_packet(wire.DataPacket(
                    chunk, self.chunk_count, 1, seq, payload))
                due = path.uplink.send(packet, now)
                path.sent += 1
                self._schedule(path.uplink, due, self._first_hop(path))

            times = []
            if sender.deadline is not None:
                times.append(sender.deadline)
            if path.active and sender.can_send():
                times.append(path.uplink.idle_at)
            self._wakeups[path.path_id] = event = self.env.event()
            if times:
                delay = max(min(times) - now, 0)
                yield self.env.any_of([self.env.timeout(delay), event])
            else:
                yield event
        self._running.discard(path.path_id)

    def _reassign(self, path):
        sender = self.senders[path.path_id]
        sender.dead = True
        chunks = sender.take_unacked()
        if not chunks:
            return
        live = [p for p in self.server.active_paths()
                if not self.senders[p.path_id].dead and p is not path]
        if not live:
            self.orphans.extend(chunks)
            self.logger.warning('No live path left for {} chunks.'.format(
                len(chunks)))
            return
        target = min(live, key=lambda p: self.senders[p.path_id].queue_length)
        self.senders[target.path_id].assign(chunks)
        self.reassigned += len(chunks)
        self.logger.info('{} chunks of path {} reassigned to path {}.'.format(
            len(chunks), path.path_id, target.path_id))
        self._wake_sender(target.path_id)

    # Reception.

    def _ru_receive(self, packet, path_id):
        ack = self.receiver.ingest(packet, self.env.now, path_id)
        for msg in self.receiver.drain():
            self._control(msg, self._server_receive)
        if ack is None:
            return
        links = self.reverse[path_id]
        due = links[0].send(ack, self.env.now)
        if len(links) == 1:
            self._schedule(links[0], due, self._server_ack)
        else:
            self._schedule(links[0], due,
                           lambda a: self._au_ack(path_id, a))

    def _au_ack(self, path_id, ack):
        if not self.assistants[path_id].active:
            return
        link = self.reverse[path_id][1]
        self._schedule(link, link.send(ack, self.env.now), self._server_ack)

    def _server_ack(self, data):
        ack = wire.decode_ack(data)
        sender = self.senders[ack.path_id]
        if sender.on_ack(ack.ack, self.env.now):
            self._wake_sender(ack.path_id)

    # Churn.

    def _remove(self, au_id):
        active = self.assistants[au_id].active
        super(ArqSession, self)._remove(au_id)
        if active:
            for link in self.reverse[au_id]:
                link.clear(self.env.now)
            self._reassign(self.server.paths[au_id])
            self._wake_sender(au_id)

    def _server_receive(self, msg):
        super(ArqSession, self)._server_receive(msg)
        if not isinstance(msg, wire.Ready) or self.server.start_time is None:
            return
        path = self.server.paths.get(msg.client_id)
        if path is None or not path.active:
            return
        if msg.client_id in self.assistants:
            # A returning assistant gets a fresh sender and the chunks left
            # without a path, if any.
            if self.senders[path.path_id].dead:
                self.senders[path.path_id] = self._sender(path)
                self.receiver.reset(path.path_id)
            if self.orphans:
                self.senders[path.path_id].assign(self.orphans)
                self.reassigned += len(self.orphans)
                self.orphans = []
            if self._assigned:
                self._run_sender(path)
        self._wake_sender(path.path_id)

    # Report.

    def _diagnostic(self):
        return ('Session: aborted at t={:.3f}, {} of {} chunks received, {} '
                'live paths, {} chunks without a path.'.format(
                    self.env.now, len(self.receiver.chunks), self.chunk_count,
                    len([s for s in self.senders.values() if not s.dead]),
                    len(self.orphans)))

    def _delivered(self):
        return self.receiver.delivered

    def _report(self):
        receiver = self.receiver
        start = self.server.start_time
        return SessionReport(
            'arq', len(self.data), receiver.completion_time - start, start,
            receiver.received / self.chunk_count - 1, self._per_path(),
            timeline=receiver.monitor.timeline(receiver.completion_time),
            monitor_window=self.config.monitor_window,
            received=receiver.received, redundant=receiver.redundant,
            malformed=receiver.malformed, reassigned=self.reassigned,
            exact=receiver.data() == self.data,
            terminate_signals=self.server.terminate_count)


def run_arq_baseline(config):
    r"""Run the retransmission baseline on the topology of a configuration.

    Returns
    -------
    report : :class:`SessionReport`

    """
    if config.mode != 'arq':
        config = config.replace(mode='arq')
    return ArqSession(config).run()
