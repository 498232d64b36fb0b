# -*- coding: utf-8 -*-

from __future__ import division

from collections import OrderedDict

import simpy

from ltcoop import channel, utils, wire
from .assistant import Assistant
from .report import PathStats, SessionReport
from .requester import Requester
from .server import Path, Server


class SessionTimeout(RuntimeError):
    """The session did not complete before its deadline."""


class Session(object):
    r"""Cooperative download simulated on a virtual clock.

    The session follows the workflow of the protocol: the clients register,
    the requesting user (RU) sends a help request, the server forms the group
    and assigns roles, every member answers ready, the server disseminates
    fresh encoded symbols over all paths, the RU reports decoded blocks and
    finally terminates the session.

    Control messages go through their wire encoding and arrive after the
    control latency. Data packets go through the simulated links of the
    paths. Events are processed by a :mod:`simpy` environment, so that a
    session is deterministic given its configuration.

    Parameters
    ----------
    config : :class:`SessionConfig`

    Examples
    --------
    >>> from ltcoop import coop
    >>> config = coop.SessionConfig(file_size=4096, coding=(16, 256),
    ...                             direct=(0, 256e3, 1))
    >>> report = coop.Session(config).run()
    >>> report.exact, report.paths, report.terminate_signals
    (True, 1, 1)

    """

    def __init__(self, config):

        self.logger = utils.build_logger(__name__)
        self.config = config
        self.env = simpy.Environment()
        self.data = config.payload()

        self.server = Server(self.data, config.coding, seed=config.seed,
                             window=config.window, file_id=config.file_id,
                             stale_after=config.stale_after)
        self.requester = Requester(config.ru_id, config.file_id,
                                   config.monitor_window)
        self.assistants = OrderedDict()
        for a in config.assistants:
            au = Assistant(a.au_id, a.location, a.battery)
            au.active = a.active
            self.assistants[a.au_id] = au

        self.server.add_path(Path(config.ru_id, self._link(
            config.direct, 0, 0, 'direct')))
        for i, a in enumerate(config.assistants):
            uplink = self._link(a.uplink, i + 1, 0,
                                'uplink-{}'.format(a.au_id))
            relay = self._link(a.relay, i + 1, 1, 'relay-{}'.format(a.au_id))
            self.server.add_path(Path(a.au_id, uplink, relay, a.au_id))

        self.done = self.env.event()
        self._wakeup = self.env.event()

    def __repr__(self):
        return '{}(config={})'.format(self.__class__.__name__, self.config)

    def _link(self, params, index, direction, name):
        r"""Link with a loss seed derived from the session seed if unset."""
        if params.seed is None and self.config.seed is not None:
            params = params._replace(seed=[self.config.seed, index, direction])
        return channel.Link(params, name)

    # Control channel.

    def _control(self, msg, handler):
        frame = wire.encode_ctrl(msg)
        self.env.process(self._deliver_control(frame, handler))

    def _deliver_control(self, frame, handler):
        yield self.env.timeout(self.config.control_latency / 1000)
        handler(wire.decode_ctrl(frame))

    def _server_receive(self, msg):
        now = self.env.now
        server = self.server
        if isinstance(msg, wire.Register):
            server.register(msg, now)
            if msg.client_id in self.assistants:
                assign = server.join(msg.client_id, now)
                if assign is not None:
                    self._control(assign, self._client(msg.client_id))
        elif isinstance(msg, wire.HelpRequest):
            for client_id, assign in server.handle_help(msg, now):
                self._control(assign, self._client(client_id))
        elif isinstance(msg, wire.Ready):
            if server.handle_ready(msg, now):
                self.requester.start(now)
                self._start()
            self._wake()
        elif isinstance(msg, wire.BlockDone):
            server.block_done(msg.block_id)
            self._wake()
        elif isinstance(msg, wire.Terminate):
            if server.terminate(msg, now) and not self.done.triggered:
                self.done.succeed()
            self._wake()

    def _client(self, client_id):
        def receive(msg):
            if client_id == self.config.ru_id:
                reply = self.requester.on_group_assign(msg)
            else:
                au = self.assistants[client_id]
                if not au.active:
                    return
                reply = au.on_group_assign(msg)
            self._control(reply, self._server_receive)
        return receive

    def _registration(self, client):
        while True:
            if getattr(client, 'active', True):
                self._control(client.register_message(), self._server_receive)
            yield self.env.timeout(self.config.register_interval)

    def _request(self):
        yield self.env.timeout(self.config.control_latency / 1000)
        self._control(self.requester.help_request(), self._server_receive)

    # Data channel.

    def _wake(self):
        if not self._wakeup.triggered:
            self._wakeup.succeed()

    def _arrive(self, link, due, handler):
        yield self.env.timeout(max(due - self.env.now, 0))
        for packet in link.poll(max(self.env.now, due)):
            handler(packet)

    def _schedule(self, link, due, handler):
        if due is not None:
            self.env.process(self._arrive(link, due, handler))

    def _first_hop(self, path):
        if path.relay is None:
            return lambda packet: self._ru_receive(packet, path.path_id)
        return lambda packet: self._au_receive(path, packet)

    def _au_receive(self, path, packet):
        au = self.assistants[path.au_id]
        due = au.forward(packet, path.relay, self.env.now)
        self._schedule(path.relay, due,
                       lambda p: self._ru_receive(p, path.path_id))

    def _ru_receive(self, packet, path_id):
        self.requester.ingest(packet, self.env.now, path_id)
        for msg in self.requester.drain():
            self._control(msg, self._server_receive)

    def _start(self):
        self.env.process(self._disseminate())

    def _disseminate(self):
        server = self.server
        while not server.terminated:
            now = self.env.now
            for path_id, sent in server.dissemination_step(now).items():
                path = server.paths[path_id]
                for packet, due in sent:
                    self._schedule(path.uplink, due, self._first_hop(path))
            self._wakeup = self.env.event()
            idle = [p.uplink.idle_at for p in server.active_paths()]
            if idle and server.pending:
                delay = max(min(idle) - now, 0)
                yield self.env.any_of([self.env.timeout(delay), self._wakeup])
            else:
                yield self._wakeup

    # Churn.

    def _churn(self):
        for event in self.config.churn:
            yield self.env.timeout(max(event.time - self.env.now, 0))
            if event.action == 'remove':
                self._remove(event.au_id)
            else:
                self._add(event.au_id)

    def _remove(self, au_id):
        now = self.env.now
        au = self.assistants[au_id]
        if not au.active:
            return
        au.leave()
        self.server.remove_assistant(au_id, now)
        path = self.server.paths[au_id]
        path.uplink.clear(now)
        path.relay.clear(now)

    def _add(self, au_id):
        au = self.assistants[au_id]
        if au.active:
            return
        au.rejoin()
        self.logger.info('AU {} back at t={:.3f}.'.format(au_id, self.env.now))
        self._control(au.register_message(), self._server_receive)

    # Run.

    def run(self):
        r"""Run the session to completion.

        Returns
        -------
        report : :class:`SessionReport`

        Raises
        ------
        SessionTimeout
            If the file is not decoded within ``max_time`` (e.g. all paths
            were removed or lose every packet).

        """
        env = self.env
        for au in self.assistants.values():
            env.process(self._registration(au))
        env.process(self._registration(self.requester))
        env.process(self._request())
        env.process(self._churn())

        deadline = env.timeout(self.config.max_time)
        env.run(until=env.any_of([self.done, deadline]))
        if not self.done.triggered:
            message = self._diagnostic()
            self.logger.warning(message)
            raise SessionTimeout(message)
        return self._report()

    def _diagnostic(self):
        manifest = self.server.manifest
        return ('Session: aborted at t={:.3f}, {} of {} blocks decoded, {} '
                'live paths, {} packets delivered to the RU.'.format(
                    self.env.now, len(self.server.done), manifest.block_count,
                    len(self.server.active_paths()),
                    sum(self._delivered().values())))

    def _delivered(self):
        return self.requester.delivered

    def _forwarded(self, path):
        if path.relay is None:
            return path.uplink.stats.delivered
        return self.assistants[path.au_id].forwarded

    def _per_path(self):
        delivered = self._delivered()
        return [PathStats(p.path_id, p.kind, p.sent, self._forwarded(p),
                          delivered.get(p.path_id, 0))
                for p in self.server.paths.values() if p.sent > 0]

    def _report(self):
        requester = self.requester
        start = self.server.start_time
        needed = self.server.manifest.block_count * self.config.coding.n
        return SessionReport(
            'lt', len(self.data), requester.completion_time - start, start,
            requester.received_count / needed - 1, self._per_path(),
            timeline=requester.monitor.timeline(requester.completion_time),
            monitor_window=self.config.monitor_window,
            received=requester.received_count,
            redundant=requester.redundant, malformed=requester.malformed,
            exact=requester.data() == self.data,
            terminate_signals=self.server.terminate_count)


def run_session(config):
    r"""Run a cooperative session, rateless or baseline according to its mode.

    Parameters
    ----------
    config : :class:`SessionConfig`

    Returns
    -------
    report : :class:`SessionReport`

    """
    if config.mode == 'arq':
        from .arq import ArqSession
        return ArqSession(config).run()
    return Session(config).run()
