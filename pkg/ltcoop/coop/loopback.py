# -*- coding: utf-8 -*-

r"""
Cooperative session over loopback UDP sockets, on the wall clock.

Every path has its own sockets: the server sends on an uplink socket paced
at the uplink rate, an assistant thread forwards what it receives on a relay
socket paced at the relay rate, and the requesting user (RU) listens on one
socket per path. Per-path receiver threads only read datagrams and put them in
a queue. A single consumer, the calling thread, owns the decoders.

Control messages are exchanged in-process through their wire encoding.
"""

from __future__ import division

import queue
import threading
import time

from ltcoop import channel, utils, wire
from .assistant import Assistant
from .report import PathStats, SessionReport
from .requester import Requester
from .server import Path, Server
from .session import SessionTimeout


_POLL = 0.02


def _transport(params, seed, index, direction):
    if params.seed is None and seed is not None:
        params = params._replace(seed=[seed, index, direction])
    return channel.LoopbackTransport(loss_rate=params.loss_rate,
                                     rate_limit=params.rate_limit,
                                     seed=params.seed)


class _Loopback(object):

    def __init__(self, config):
        self.logger = utils.build_logger(__name__)
        self.config = config
        self.data = config.payload()
        self.lock = threading.Lock()
        self.stop = threading.Event()
        self.inbox = queue.Queue()
        self.threads = []
        self.sockets = []
        self.t0 = time.monotonic()

        self.server = Server(self.data, config.coding, seed=config.seed,
                             window=config.window, file_id=config.file_id,
                             stale_after=config.stale_after)
        self.requester = Requester(config.ru_id, config.file_id,
                                   config.monitor_window)
        self.assistants = dict()
        self.sinks = dict()

        # Direct path: server uplink socket to an RU socket.
        sink = self._open(channel.LoopbackTransport())
        uplink = self._open(_transport(config.direct, config.seed, 0, 0))
        uplink.connect(sink.address)
        self.server.add_path(Path(config.ru_id, uplink))
        self.sinks[config.ru_id] = sink

        for i, a in enumerate(config.assistants):
            au = Assistant(a.au_id, a.location, a.battery)
            au.active = a.active
            self.assistants[a.au_id] = au
            sink = self._open(channel.LoopbackTransport())
            inbound = self._open(channel.LoopbackTransport())
            uplink = self._open(_transport(a.uplink, config.seed, i + 1, 0))
            relay = self._open(_transport(a.relay, config.seed, i + 1, 1))
            uplink.connect(inbound.address)
            relay.connect(sink.address)
            self.server.add_path(Path(a.au_id, uplink, relay, a.au_id))
            self.sinks[a.au_id] = sink
            self._thread(self._forward, au, inbound, relay)

    def _open(self, transport):
        self.sockets.append(transport)
        return transport

    def _thread(self, target, *args):
        thread = threading.Thread(target=target, args=args, daemon=True)
        self.threads.append(thread)

    def now(self):
        return time.monotonic() - self.t0

    # Control.

    def _control(self, msg):
        return wire.decode_ctrl(wire.encode_ctrl(msg))

    def _to_server(self, msg):
        msg = self._control(msg)
        now = self.now()
        with self.lock:
            server = self.server
            if isinstance(msg, wire.Register):
                server.register(msg, now)
                if msg.client_id in self.assistants:
                    assign = server.join(msg.client_id, now)
                    if assign is not None:
                        self._to_client(msg.client_id, assign)
            elif isinstance(msg, wire.HelpRequest):
                for client_id, assign in server.handle_help(msg, now):
                    self._to_client(client_id, assign)
            elif isinstance(msg, wire.Ready):
                if server.handle_ready(msg, now):
                    self.requester.start(now)
            elif isinstance(msg, wire.BlockDone):
                server.block_done(msg.block_id)
            elif isinstance(msg, wire.Terminate):
                server.terminate(msg, now)

    def _to_client(self, client_id, msg):
        msg = self._control(msg)
        if client_id == self.config.ru_id:
            reply = self.requester.on_group_assign(msg)
        else:
            au = self.assistants[client_id]
            if not au.active:
                return
            reply = au.on_group_assign(msg)
        # The lock is held by the caller.
        self.lock.release()
        try:
            self._to_server(reply)
        finally:
            self.lock.acquire()

    # Threads.

    def _disseminate(self):
        server = self.server
        while not self.stop.is_set():
            with self.lock:
                if server.terminated:
                    return
                sent = server.dissemination_step(self.now())
                idle = [p.uplink.idle_at for p in server.active_paths()]
            if not sent:
                wait = min(idle) - time.monotonic() if idle else _POLL
                time.sleep(min(max(wait, 0.0005), _POLL))

    def _forward(self, au, inbound, relay):
        while not self.stop.is_set():
            packet = inbound.recv(timeout=_POLL)
            if packet is not None:
                au.forward(packet, relay, self.now())

    def _receive(self, path_id, sink):
        while not self.stop.is_set():
            packet = sink.recv(timeout=_POLL)
            if packet is not None:
                self.inbox.put((path_id, packet))

    # Churn.

    def _churn(self, event):
        au = self.assistants[event.au_id]
        if event.action == 'remove':
            if au.active:
                au.leave()
                with self.lock:
                    self.server.remove_assistant(event.au_id, self.now())
        elif not au.active:
            au.rejoin()
            self._to_server(au.register_message())

    # Run.

    def run(self, timeout):
        for au in self.assistants.values():
            if au.active:
                self._to_server(au.register_message())
        self._to_server(self.requester.register_message())
        self._to_server(self.requester.help_request())

        for path_id, sink in self.sinks.items():
            self._thread(self._receive, path_id, sink)
        self._thread(self._disseminate)
        for thread in self.threads:
            thread.start()

        churn = list(self.config.churn)
        deadline = time.monotonic() + timeout
        try:
            while not self.server.terminated:
                while churn and self.now() >= churn[0].time:
                    self._churn(churn.pop(0))
                if time.monotonic() > deadline:
                    message = ('Loopback session: aborted after {:.1f}s, {} '
                               'of {} blocks decoded.'.format(
                                   timeout, len(self.requester.blocks_done),
                                   self.server.manifest.block_count))
                    self.logger.warning(message)
                    raise SessionTimeout(message)
                try:
                    path_id, packet = self.inbox.get(timeout=_POLL)
                except queue.Empty:
                    continue
                self.requester.ingest(packet, self.now(), path_id)
                for msg in self.requester.drain():
                    self._to_server(msg)
        finally:
            self.stop.set()
            for thread in self.threads:
                thread.join()
            for transport in self.sockets:
                transport.close()
        return self._report()

    def _report(self):
        requester = self.requester
        start = self.server.start_time
        needed = self.server.manifest.block_count * self.config.coding.n
        per_path = []
        for p in self.server.paths.values():
            if p.sent == 0:
                continue
            forwarded = (p.uplink.stats.sent - p.uplink.stats.dropped
                         if p.relay is None
                         else self.assistants[p.au_id].forwarded)
            per_path.append(PathStats(p.path_id, p.kind, p.sent, forwarded,
                                      requester.delivered.get(p.path_id, 0)))
        return SessionReport(
            'lt', len(self.data), requester.completion_time - start, start,
            requester.received_count / needed - 1, per_path,
            timeline=requester.monitor.timeline(requester.completion_time),
            monitor_window=self.config.monitor_window,
            received=requester.received_count,
            redundant=requester.redundant, malformed=requester.malformed,
            exact=requester.data() == self.data,
            terminate_signals=self.server.terminate_count)


def run_loopback_session(config, timeout=30.):
    r"""Run a rateless cooperative session over loopback UDP sockets.

    The topology, rates and loss rates are those of ``config``, churn events
    are applied on the wall clock. Results depend on the scheduling of the
    host and are not reproducible.

    Parameters
    ----------
    config : :class:`SessionConfig`
    timeout : float
        Wall-clock seconds after which the session is aborted.

    Returns
    -------
    report : :class:`SessionReport`

    Raises
    ------
    SessionTimeout
        If the file is not decoded in time.

    """
    if config.mode != 'lt':
        raise ValueError('mode: the loopback session is rateless only, got '
                         '{}.'.format(config.mode))
    return _Loopback(config).run(timeout)
