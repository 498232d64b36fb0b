# -*- coding: utf-8 -*-

from __future__ import division

from collections import OrderedDict

from ltcoop import codes, utils, wire


_MASK = (1 << 64) - 1


class Path(object):
    r"""A delivery path from the server to the requesting user.

    Parameters
    ----------
    path_id : int
        Client id of the first hop: the RU for the direct path, the AU
        otherwise.
    uplink : link
        Link from the server to the first hop.
    relay : link
        Link from the AU to the RU, None for the direct path.
    au_id : int
        Assistant of the path, None for the direct path.

    """

    def __init__(self, path_id, uplink, relay=None, au_id=None):
        self.path_id = path_id
        self.uplink = uplink
        self.relay = relay
        self.au_id = au_id
        self.active = False
        self.sent = 0

    @property
    def kind(self):
        return 'direct' if self.au_id is None else 'au'

    def __repr__(self):
        return '{}(path_id={}, kind={}, active={}, sent={})'.format(
            self.__class__.__name__, self.path_id, self.kind, self.active,
            self.sent)


class Server(object):
    r"""Server of a cooperative download.

    The server keeps a registry of the clients, forms the group when a
    requesting user (RU) asks for help, and disseminates fresh encoded symbols
    over every active path. It keeps no per-path task: any symbol is as good
    as any other for the RU.

    Blocks are disseminated a few at a time (``window``), in round-robin. A
    block leaves the window when the RU reports it decoded.

    Parameters
    ----------
    data : bytes
        File to disseminate.
    coding : :class:`ltcoop.codes.CodingParams`
    seed : int
        Session seed. Symbol ``k`` of block ``b`` has seed
        ``seed + (b << 32) + k`` modulo :math:`2^{64}`.
    window : int
        Number of blocks disseminated concurrently.
    file_id : int
    stale_after : float
        A client is ignored if its last registration is older.

    Examples
    --------
    >>> from ltcoop import channel, coop, wire
    >>> coding = codes.CodingParams(16, 64)
    >>> server = coop.Server(bytes(range(256)) * 64, coding)
    >>> server.add_path(coop.Path(0, channel.Link(channel.LinkParams())))
    >>> server.register(wire.Register(0, (0, 0), 90), now=0)
    >>> [msg.role for _, msg in server.handle_help(wire.HelpRequest(0, 1), 0)]
    [1]
    >>> server.handle_ready(wire.Ready(0), now=0)
    True
    >>> sent = server.dissemination_step(now=0)
    >>> len(sent[0])
    1

    """

    def __init__(self, data, coding, seed=0, window=4, file_id=1,
                 stale_after=15., distribution=None):

        self.logger = utils.build_logger(__name__)

        self.coding = coding
        self.seed = seed
        self.window = window
        self.file_id = file_id
        self.stale_after = stale_after
        self.distribution = distribution or coding.distribution()

        self.blocks, self.manifest = codes.segment_message(
            data, coding.n, coding.symbol_size)
        self.encoders = [codes.Encoder(block, self.distribution)
                         for block in self.blocks]
        self.next_seed = [0] * len(self.blocks)

        self.registry = dict()
        self.paths = OrderedDict()
        self.ru_id = None
        self.group = []
        self.ssid = None
        self._rng = utils.random_state(seed)

        self.done = set()
        self._active = []
        self._upcoming = 0
        self._cursor = 0
        self._fill_window()

        self.started = False
        self.start_time = None
        self.terminated = False
        self.terminate_count = 0

    def __repr__(self):
        return '{}(blocks={}, paths={}, done={})'.format(
            self.__class__.__name__, len(self.blocks), len(self.paths),
            len(self.done))

    # Registry and grouping.

    def register(self, msg, now):
        self.registry[msg.client_id] = (msg.location, msg.battery, now)

    def is_stale(self, client_id, now):
        entry = self.registry.get(client_id)
        return entry is None or now - entry[2] > self.stale_after

    def nearby(self, client_id, now):
        r"""Registered, non-stale clients that can assist ``client_id``.

        Every registered client counts as nearby: proximity filtering on the
        reported locations is not done.

        """
        return sorted(c for c in self.registry
                      if c != client_id and not self.is_stale(c, now) and
                      c in self.paths)

    def _assign(self, role, peers):
        return wire.GroupAssign(self.ssid, role, self.coding, peers,
                                self.file_id, self.manifest.total_len)

    def handle_help(self, msg, now):
        r"""Form the group of a requesting user.

        Returns
        -------
        messages : list of (int, :class:`ltcoop.wire.GroupAssign`)
            Recipient and message, the RU first.

        """
        if msg.file_id != self.file_id:
            raise ValueError('HelpRequest: unknown file {}.'.format(
                msg.file_id))
        self.ru_id = msg.client_id
        self.group = self.nearby(msg.client_id, now)
        self.ssid = 'ltc-{:08x}'.format(int(self._rng.integers(0, 2**32)))
        self.logger.info('Group {} formed for RU {} with AUs {}.'.format(
            self.ssid, self.ru_id, self.group))
        messages = [(self.ru_id, self._assign(wire.ROLE_RU, self.group))]
        for au_id in self.group:
            messages.append((au_id, self._assign(wire.ROLE_AU, [self.ru_id])))
        return messages

    def join(self, au_id, now):
        r"""Add a late assistant to the group, None if there is no group."""
        if self.ru_id is None or self.terminated or au_id in self.group:
            return None
        if self.is_stale(au_id, now) or au_id not in self.paths:
            return None
        self.group.append(au_id)
        self.logger.info('AU {} joins group {} at t={:.3f}.'.format(
            au_id, self.ssid, now))
        return self._assign(wire.ROLE_AU, [self.ru_id])

    # Paths.

    def add_path(self, path):
        self.paths[path.path_id] = path

    def handle_ready(self, msg, now):
        r"""Activate the path of a group member.

        Returns
        -------
        started : bool
            True if the message started the dissemination (Ready of the RU).

        """
        path = self.paths.get(msg.client_id)
        if path is None:
            return False
        if msg.client_id != self.ru_id and msg.client_id not in self.group:
            return False
        path.active = True
        if msg.client_id == self.ru_id and not self.started:
            self.started = True
            self.start_time = now
            self.logger.info('Dissemination of {} blocks starts at t={:.3f}.'
                             .format(len(self.blocks), now))
            return True
        return False

    def remove_assistant(self, au_id, now):
        r"""An assistant left: stop sending on its path."""
        path = self.paths.get(au_id)
        if path is None or not path.active:
            return False
        path.active = False
        if au_id in self.group:
            self.group.remove(au_id)
        self.logger.warning('AU {} left at t={:.3f}, {} paths left.'.format(
            au_id, now, len(self.active_paths())))
        return True

    def active_paths(self):
        return [p for p in self.paths.values() if p.active]

    # Dissemination.

    def _fill_window(self):
        while len(self._active) < self.window and \
                self._upcoming < len(self.blocks):
            if self._upcoming not in self.done:
                self._active.append(self._upcoming)
            self._upcoming += 1

    def block_done(self, block_id):
        r"""The RU decoded a block: take it out of the window."""
        if block_id in self.done:
            return False
        self.done.add(block_id)
        if block_id in self._active:
            self._active.remove(block_id)
        self._fill_window()
        return True

    @property
    def pending(self):
        """Whether some block still has to be disseminated."""
        return bool(self._active) and not self.terminated

    def symbol_seed(self, block_id, k):
        return (self.seed + (block_id << 32) + k) & _MASK

    def next_packet(self):
        r"""Serialized data packet of the next fresh symbol, None if none."""
        if not self._active:
            return None
        block_id = self._active[self._cursor % len(self._active)]
        self._cursor += 1
        k = self.next_seed[block_id]
        self.next_seed[block_id] += 1
        symbol = self.encoders[block_id].encode(self.symbol_seed(block_id, k))
        packet = wire.DataPacket.from_symbol(symbol, len(self.blocks),
                                             self.coding.n)
        return wire.encode_data_packet(packet)

    def dissemination_step(self, now):
        r"""Send the next fresh symbol on every path that can send.

        A path can send when its uplink is idle: paths thus receive symbols in
        proportion to their rates. No seed is ever reused within a block.

        Returns
        -------
        scheduled : dict
            Path id to the list of ``(packet, due)`` sent on it, where ``due``
            is the delivery time (None if the link dropped the packet).

        """
        scheduled = OrderedDict()
        if not self.started or self.terminated:
            return scheduled
        for path in self.paths.values():
            if not path.active or not path.uplink.is_idle(now):
                continue
            packet = self.next_packet()
            if packet is None:
                break
            due = path.uplink.send(packet, now)
            path.sent += 1
            scheduled.setdefault(path.path_id, []).append((packet, due))
        return scheduled

    def terminate(self, msg, now):
        r"""Accept the terminating signal of the RU (once)."""
        if msg.client_id != self.ru_id or msg.file_id != self.file_id:
            return False
        self.terminate_count += 1
        if self.terminated:
            return False
        self.terminated = True
        self.logger.info('Terminated by RU {} at t={:.3f}.'.format(
            msg.client_id, now))
        return True
