# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop.channel` module implements lossy links: a simulated link on
a virtual clock, which stands in for the cellular and WiFi paths of a
cooperative download, and a loopback datagram transport with the same
interface for smoke tests over real sockets.

Losses are i.i.d. Bernoulli per packet, drawn from a seeded generator, so that
identical seeds produce identical drop sequences.

.. autosummary::

    LinkParams
    LinkStats
    Link
    LoopbackTransport
    BindError

"""

from __future__ import division

import socket
import time
from collections import deque, namedtuple

from ltcoop import utils, wire


_logger = utils.build_logger(__name__)

# Virtual times closer than this are equal.
_EPS = 1e-9


class BindError(OSError):
    """The loopback transport could not bind its socket."""


class LinkParams(namedtuple('LinkParams', ['loss_rate', 'rate_limit',
                                           'latency', 'seed'])):
    r"""Parameters of a directed link.

    Parameters
    ----------
    loss_rate : float
        Probability in :math:`[0, 1]` that a packet is dropped.
    rate_limit : float
        Bytes per second.
    latency : float
        Propagation delay in milliseconds.
    seed : int
        Seed of the loss process.

    Examples
    --------
    >>> channel.LinkParams(0.1, 256e3)
    LinkParams(loss_rate=0.1, rate_limit=256000.0, latency=0.0, seed=None)

    """

    __slots__ = ()

    def __new__(cls, loss_rate=0., rate_limit=256e3, latency=0., seed=None):
        if not 0 <= loss_rate <= 1:
            raise ValueError('loss_rate: must be in [0, 1], got {}.'.format(
                loss_rate))
        if not rate_limit > 0:
            raise ValueError('rate_limit: must be positive, got {}.'.format(
                rate_limit))
        if not latency >= 0:
            raise ValueError('latency: must be non-negative, got {}.'.format(
                latency))
        return super(LinkParams, cls).__new__(
            cls, float(loss_rate), float(rate_limit), float(latency), seed)


LinkStats = namedtuple('LinkStats', ['sent', 'delivered', 'dropped',
                                     'bytes_delivered', 'in_flight'])
LinkStats.__doc__ = r"""Counters of a link.

``sent = delivered + dropped + in_flight`` at all times.
"""


class Link(object):
    r"""Simulated directed link on a virtual clock.

    The link serializes packets one after the other at ``rate_limit``. Each
    packet is then lost with probability ``loss_rate``, or delivered
    ``latency`` milliseconds after its last byte left. A lost packet still
    occupies the link for its serialization time.

    Parameters
    ----------
    params : :class:`LinkParams`
    name : str
        Name for the logs.

    Examples
    --------
    >>> params = channel.LinkParams(0, rate_limit=1000, latency=100)
    >>> link = channel.Link(params)
    >>> link.send(bytes(100), now=0)
    0.2
    >>> link.poll(0.15)
    []
    >>> len(link.poll(0.2))
    1
    >>> link.stats
    LinkStats(sent=1, delivered=1, dropped=0, bytes_delivered=100, in_flight=0)

    """

    def __init__(self, params, name='link'):
        self.params = params
        self.name = name
        self._rng = utils.random_state(params.seed)
        self._queue = deque()
        self.busy_until = 0.
        self._sent = 0
        self._delivered = 0
        self._dropped = 0
        self._bytes_delivered = 0

    def __repr__(self):
        return '{}(name={}, loss_rate={}, rate_limit={}, latency={})'.format(
            self.__class__.__name__, self.name, self.params.loss_rate,
            self.params.rate_limit, self.params.latency)

    def send(self, packet, now):
        r"""Send a packet at virtual time ``now`` (seconds).

        Returns
        -------
        due : float or None
            Delivery time of the packet, None if it was dropped.

        Raises
        ------
        MTUExceededError
            If the packet is larger than 1450 bytes.

        """
        if len(packet) > wire.MTU:
            raise wire.MTUExceededError('Link: a packet of {} bytes exceeds '
                                        'the {}-byte MTU.'.format(
                                            len(packet), wire.MTU))
        start = max(now, self.busy_until)
        self.busy_until = start + len(packet) / self.params.rate_limit
        self._sent += 1
        if self._rng.random() < self.params.loss_rate:
            self._dropped += 1
            return None
        due = self.busy_until + self.params.latency / 1000
        self._queue.append((due, bytes(packet)))
        return due

    def poll(self, now):
        r"""Remove and return the packets due at ``now``, in delivery order."""
        packets = []
        while self._queue and self._queue[0][0] <= now:
            _, packet = self._queue.popleft()
            self._delivered += 1
            self._bytes_delivered += len(packet)
            packets.append(packet)
        return packets

    def clear(self, now):
        r"""Drop every packet in flight (the receiving end left)."""
        count = len(self._queue)
        self._queue.clear()
        self._dropped += count
        if count:
            _logger.debug('{}: dropped {} packets in flight at t={:.3f}.'
                          .format(self.name, count, now))
        return count

    def is_idle(self, now):
        """Whether the link can start serializing a packet at ``now``."""
        return self.busy_until <= now + _EPS

    @property
    def idle_at(self):
        return self.busy_until

    def next_delivery(self):
        return self._queue[0][0] if self._queue else None

    @property
    def stats(self):
        return LinkStats(self._sent, self._delivered, self._dropped,
                         self._bytes_delivered, len(self._queue))


class LoopbackTransport(object):
    r"""Datagram transport over a local UDP socket.

    It offers the :class:`Link` interface on the wall clock: best-effort
    delivery, optional Bernoulli loss and pacing at a rate. One thread may
    send while another receives.

    Parameters
    ----------
    port : int
        Port to bind, 0 for any free port.
    host : str
        Address to bind (default is the loopback interface).
    loss_rate : float
        Probability that :meth:`send` silently drops a datagram.
    rate_limit : float
        Pacing rate in bytes per second, unpaced if None.
    seed : int
        Seed of the loss process.

    Examples
    --------
    >>> a, b = channel.LoopbackTransport(), channel.LoopbackTransport()
    >>> with a, b:
    ...     a.connect(b.address)
    ...     _ = a.send(b'hello')
    ...     b.recv(timeout=1)
    b'hello'
    >>> with channel.LoopbackTransport() as a:
    ...     print(a.recv())
    None

    """

    def __init__(self, port=0, host='127.0.0.1', loss_rate=0.,
                 rate_limit=None, seed=None):
        self._socket = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        try:
            self._socket.bind((host, port))
        except OSError as e:
            self._socket.close()
            raise BindError('Loopback: cannot bind {}:{} ({}).'.format(
                host, port, e))
        self.address = self._socket.getsockname()
        self.loss_rate = loss_rate
        self.rate_limit = rate_limit
        self._rng = utils.random_state(seed)
        self._peer = None
        self._next_send = time.monotonic()
        self._sent = 0
        self._dropped = 0
        self._delivered = 0
        self._bytes_delivered = 0

    def __repr__(self):
        return '{}(address={}:{})'.format(self.__class__.__name__,
                                          *self.address)

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()

    def connect(self, address):
        """Set the default destination of :meth:`send`."""
        self._peer = tuple(address)

    def send(self, packet, now=None, address=None):
        r"""Send a datagram (``now`` is ignored, the clock is the wall clock).

        Returns
        -------
        sent_at : float or None
            Wall-clock time of the emission, None if the datagram was dropped
            by the loss process or the socket buffer.

        """
        if len(packet) > wire.MTU:
            raise wire.MTUExceededError('Loopback: a datagram of {} bytes '
                                        'exceeds the {}-byte MTU.'.format(
                                            len(packet), wire.MTU))
        address = self._peer if address is None else address
        if address is None:
            raise ValueError('Loopback: no destination, call connect() first.')

        if self.rate_limit is not None:
            delay = self._next_send - time.monotonic()
            if delay > 0:
                time.sleep(delay)
            self._next_send = (max(self._next_send, time.monotonic()) +
                               len(packet) / self.rate_limit)

        self._sent += 1
        if self._rng.random() < self.loss_rate:
            self._dropped += 1
            return None
        try:
            self._socket.sendto(packet, address)
        except (BlockingIOError, socket.timeout):
            self._dropped += 1
            return None
        return time.monotonic()

    def is_idle(self, now=None):
        """Whether a datagram can be sent without waiting for the pacing."""
        return self.rate_limit is None or time.monotonic() >= self._next_send

    @property
    def idle_at(self):
        return self._next_send

    def recv(self, timeout=0.):
        r"""Receive a datagram, None if nothing arrives within ``timeout``."""
        self._socket.settimeout(timeout if timeout > 0 else 0.)
        try:
            data, _ = self._socket.recvfrom(65535)
        except (BlockingIOError, socket.timeout, InterruptedError,
                ConnectionRefusedError):
            return None
        self._delivered += 1
        self._bytes_delivered += len(data)
        return data

    def poll(self, now=None):
        """Return every datagram already received."""
        packets = []
        while True:
            data = self.recv()
            if data is None:
                return packets
            packets.append(data)

    @property
    def stats(self):
        """Local counters: sent and dropped by :meth:`send`, delivered by
        :meth:`recv`. Nothing is known of the datagrams in flight."""
        return LinkStats(self._sent, self._delivered, self._dropped,
                         self._bytes_delivered, 0)

    def close(self):
        self._socket.close()
