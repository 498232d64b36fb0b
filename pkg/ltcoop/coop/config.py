# -*- coding: utf-8 -*-

from __future__ import division

import copy
import json
from collections import namedtuple

import numpy as np

from ltcoop import channel, codes, utils, wire


MODES = ('lt', 'arq')


class AssistantPath(namedtuple('AssistantPath', ['au_id', 'uplink', 'relay',
                                                 'active', 'location',
                                                 'battery'])):
    r"""An assistant user and its two links.

    Parameters
    ----------
    au_id : int
        Client id of the assistant.
    uplink : :class:`ltcoop.channel.LinkParams`
        Server to assistant link (cellular).
    relay : :class:`ltcoop.channel.LinkParams`
        Assistant to requesting user link (WiFi).
    active : bool
        Whether the assistant is present at the start. An inactive assistant
        joins with an ``add`` churn event.
    location : (float, float)
        Latitude and longitude sent when registering.
    battery : int
        Battery percentage sent when registering.

    """

    __slots__ = ()

    def __new__(cls, au_id, uplink, relay, active=True, location=(0., 0.),
                battery=100):
        return super(AssistantPath, cls).__new__(
            cls, int(au_id), channel.LinkParams(*uplink),
            channel.LinkParams(*relay), bool(active), tuple(location),
            int(battery))


class ChurnEvent(namedtuple('ChurnEvent', ['time', 'action', 'au_id'])):
    r"""An assistant joins (``'add'``) or leaves (``'remove'``) at a time."""

    __slots__ = ()

    def __new__(cls, time, action, au_id):
        if action not in ('add', 'remove'):
            raise ValueError('action: must be add or remove, got {}.'.format(
                action))
        if time < 0:
            raise ValueError('time: must be non-negative, got {}.'.format(
                time))
        return super(ChurnEvent, cls).__new__(cls, float(time), action,
                                              int(au_id))


class SessionConfig(object):
    r"""Topology, coding and timing of a cooperative session.

    The requesting user (RU) is reached by one direct path from the server and
    by one path per assistant user (AU). Times are in seconds except link
    latencies, in milliseconds.

    Parameters
    ----------
    file_size : int
        Bytes of the synthetic file (default is 1 MiB).
    file_seed : int
        Seed of the synthetic file content.
    coding : :class:`ltcoop.codes.CodingParams`
    direct : :class:`ltcoop.channel.LinkParams`
        Server to RU link.
    assistants : list of :class:`AssistantPath`
    churn : list of :class:`ChurnEvent`
    mode : str
        ``'lt'`` for rateless dissemination or ``'arq'`` for the
        retransmission baseline.
    window : int
        Blocks disseminated concurrently (default is 4).
    monitor_window : float
        Goodput sampling period (default is 1 s).
    control_latency : float
        One-way delay of the control channel in milliseconds.
    register_interval : float
        Period of the client registrations.
    stale_after : float
        A registration older than this is ignored by the server.
    max_time : float
        Virtual time after which the session is aborted.
    seed : int
        Seed of the session: symbol seeds, SSID, and the loss processes of
        the links that have no seed of their own.
    arq_window : int
        Go-back-N window of the baseline.
    arq_max_retries : int
        Consecutive timeouts after which a baseline path is declared dead.
    data : bytes
        File content. Overrides ``file_size`` and ``file_seed``.

    Examples
    --------
    >>> from ltcoop import coop
    >>> config = coop.SessionConfig.from_dict({
    ...     'file_size': 65536,
    ...     'direct': {'rate_limit': 256000, 'latency': 1},
    ...     'assistants': [{'au_id': 1,
    ...                     'uplink': {'rate_limit': 256000, 'latency': 1},
    ...                     'relay': {'rate_limit': 1024000, 'latency': 1}}],
    ... })
    >>> config
    SessionConfig(mode=lt, file_size=65536, assistants=1, n=64, symbol_size=1024)
    >>> config.block_count
    1
    >>> d = config.to_dict()
    >>> coop.SessionConfig.from_dict(d).to_dict() == d
    True

    """

    def __init__(self, file_size=2**20, file_seed=0, coding=None, direct=None,
                 assistants=(), churn=(), mode='lt', window=4,
                 monitor_window=1., control_latency=1., register_interval=5.,
                 stale_after=15., max_time=600., seed=0, ru_id=0, file_id=1,
                 arq_window=8, arq_max_retries=5, data=None):

        self.file_size = int(file_size if data is None else len(data))
        self.file_seed = file_seed
        self.coding = codes.CodingParams(*(coding or ()))
        self.direct = channel.LinkParams(*(direct or ()))
        self.assistants = [AssistantPath(*a) for a in assistants]
        self.churn = sorted((ChurnEvent(*e) for e in churn),
                            key=lambda e: e.time)
        self.mode = mode
        self.window = int(window)
        self.monitor_window = float(monitor_window)
        self.control_latency = float(control_latency)
        self.register_interval = float(register_interval)
        self.stale_after = float(stale_after)
        self.max_time = float(max_time)
        self.seed = seed
        self.ru_id = int(ru_id)
        self.file_id = int(file_id)
        self.arq_window = int(arq_window)
        self.arq_max_retries = int(arq_max_retries)
        self.data = None if data is None else bytes(data)

        self._check()

    def _check(self):
        if self.file_size < 1:
            raise ValueError('file_size: must be positive, got {}.'.format(
                self.file_size))
        if self.coding.symbol_size > wire.MAX_SYMBOL_SIZE:
            raise wire.MTUExceededError(
                'coding: symbol_size {} exceeds the {} bytes left by the '
                'packet header.'.format(self.coding.symbol_size,
                                        wire.MAX_SYMBOL_SIZE))
        if self.mode not in MODES:
            raise ValueError('mode: must be one of {}, got {}.'.format(
                MODES, self.mode))
        ids = [a.au_id for a in self.assistants]
        if len(set(ids)) != len(ids) or self.ru_id in ids:
            raise ValueError('assistants: client ids must be distinct and '
                             'differ from the RU id {}.'.format(self.ru_id))
        for event in self.churn:
            if event.au_id not in ids:
                raise ValueError('churn: unknown assistant {}.'.format(
                    event.au_id))
        for name in ['window', 'arq_window', 'arq_max_retries']:
            if getattr(self, name) < 1:
                raise ValueError('{}: must be at least 1.'.format(name))
        for name in ['monitor_window', 'register_interval', 'stale_after',
                     'max_time']:
            if not getattr(self, name) > 0:
                raise ValueError('{}: must be positive.'.format(name))
        if self.control_latency < 0:
            raise ValueError('control_latency: must be non-negative.')

    def __repr__(self):
        return ('{}(mode={}, file_size={}, assistants={}, n={}, '
                'symbol_size={})'.format(
                    self.__class__.__name__, self.mode, self.file_size,
                    len(self.assistants), self.coding.n,
                    self.coding.symbol_size))

    @property
    def block_count(self):
        return -(-self.file_size // self.coding.block_size)

    def payload(self):
        r"""File content: ``data``, or random bytes from ``file_seed``."""
        if self.data is not None:
            return self.data
        rs = utils.random_state(self.file_seed)
        return rs.integers(0, 256, self.file_size, dtype=np.uint8).tobytes()

    def replace(self, **kwargs):
        r"""Copy with some parameters changed."""
        config = copy.copy(self)
        for key, value in kwargs.items():
            if not hasattr(config, key):
                raise TypeError('Unknown parameter {}.'.format(key))
            setattr(config, key, value)
        return SessionConfig(**config._kwargs())

    def with_loss(self, loss_rate, relays=False, per_user=False):
        r"""Copy with the loss rate set on the server-side links.

        The direct link and the assistants' uplinks get ``loss_rate``. The
        relay links keep theirs unless ``relays`` is True.

        With ``per_user``, ``loss_rate`` is the maximum loss rate of the
        users: the RU and every AU get their own rate, drawn uniformly in
        ``[0, loss_rate]`` from the session seed. The relay of an AU gets the
        rate of that AU.

        Examples
        --------
        >>> from ltcoop import coop
        >>> config = coop.SessionConfig(assistants=[(1, (), ()), (2, (), ())])
        >>> lossy = config.with_loss(0.2, per_user=True)
        >>> rates = [lossy.direct.loss_rate]
        >>> rates += [a.uplink.loss_rate for a in lossy.assistants]
        >>> bool(all(0 <= p <= 0.2 for p in rates)), len(set(rates))
        (True, 3)

        """
        if not 0 <= loss_rate <= 1:
            raise ValueError('loss_rate: must be in [0, 1], got {}.'.format(
                loss_rate))
        if per_user:
            # Links seed their loss with [seed, index, direction].
            seed = None if self.seed is None else [self.seed, 0]
            rs = utils.random_state(seed)
            rates = rs.uniform(0, loss_rate, 1 + len(self.assistants))
            rates = [float(p) for p in rates]
        else:
            rates = [loss_rate] * (1 + len(self.assistants))
        direct = self.direct._replace(loss_rate=rates[0])
        assistants = []
        for a, p in zip(self.assistants, rates[1:]):
            uplink = a.uplink._replace(loss_rate=p)
            relay = a.relay._replace(loss_rate=p) if relays else a.relay
            assistants.append(a._replace(uplink=uplink, relay=relay))
        return self.replace(direct=direct, assistants=assistants)

    def _kwargs(self):
        return dict(file_size=self.file_size, file_seed=self.file_seed,
                    coding=self.coding, direct=self.direct,
                    assistants=self.assistants, churn=self.churn,
                    mode=self.mode, window=self.window,
                    monitor_window=self.monitor_window,
                    control_latency=self.control_latency,
                    register_interval=self.register_interval,
                    stale_after=self.stale_after, max_time=self.max_time,
                    seed=self.seed, ru_id=self.ru_id, file_id=self.file_id,
                    arq_window=self.arq_window,
                    arq_max_retries=self.arq_max_retries, data=self.data)

    def to_dict(self):
        r"""JSON-serializable form (the file content is not included)."""
        d = self._kwargs()
        del d['data']
        d['coding'] = self.coding._asdict()
        d['direct'] = self.direct._asdict()
        d['assistants'] = [dict(a._asdict(), uplink=a.uplink._asdict(),
                                relay=a.relay._asdict(),
                                location=list(a.location))
                           for a in self.assistants]
        d['churn'] = [e._asdict() for e in self.churn]
        return d

    @classmethod
    def from_dict(cls, d):
        r"""Build a configuration from a dictionary (e.g. parsed JSON)."""
        d = dict(d)
        unknown = set(d) - set(cls().__dict__) - {'data'}
        if unknown:
            raise ValueError('Unknown configuration keys {}.'.format(
                sorted(unknown)))
        if 'coding' in d:
            d['coding'] = codes.CodingParams(**d['coding'])
        if 'direct' in d:
            d['direct'] = channel.LinkParams(**d['direct'])
        assistants = []
        for a in d.get('assistants', []):
            a = dict(a)
            a['uplink'] = channel.LinkParams(**a['uplink'])
            a['relay'] = channel.LinkParams(**a['relay'])
            assistants.append(AssistantPath(**a))
        d['assistants'] = assistants
        d['churn'] = [ChurnEvent(**e) for e in d.get('churn', [])]
        return cls(**d)

    @classmethod
    def load(cls, path):
        r"""Read a configuration from a JSON file."""
        with open(path) as f:
            return cls.from_dict(json.load(f))

    def save(self, path):
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)
