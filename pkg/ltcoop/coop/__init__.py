# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop.coop` module implements the cooperative download: a server
disseminates encoded symbols to a requesting user (RU) over a direct path and
over one path per assistant user (AU) that relays what it receives.

Configuration
-------------

.. autosummary::

    SessionConfig
    SessionConfig.from_dict
    SessionConfig.load
    SessionConfig.with_loss
    AssistantPath
    ChurnEvent

Roles
-----

.. autosummary::

    Server
    Server.handle_help
    Server.handle_ready
    Server.dissemination_step
    Path
    Assistant
    Requester
    Requester.ingest
    GoodputMonitor

Sessions
--------

A session runs the whole workflow, from the registrations to the terminating
signal, on a virtual clock. The retransmission baseline runs on the same
topology.

.. autosummary::

    run_session
    Session
    SessionTimeout
    run_arq_baseline
    ArqSession
    run_loopback_session

Reports
-------

.. autosummary::

    SessionReport
    PathStats
    write_csv

"""

from ltcoop import utils as _utils

__all__ = [
    'arq',
]

_utils.import_modules(__all__, 'ltcoop.coop', 'ltcoop.coop')

_FUNCTIONS = [
    ('coop.config', ['SessionConfig', 'AssistantPath', 'ChurnEvent']),
    ('coop.server', ['Server', 'Path']),
    ('coop.assistant', ['Assistant']),
    ('coop.requester', ['Requester', 'GoodputMonitor']),
    ('coop.report', ['SessionReport', 'PathStats', 'write_csv', 'COLUMNS']),
    ('coop.session', ['Session', 'SessionTimeout', 'run_session']),
    ('coop.arq', ['ArqSession', 'GoBackN', 'ArqReceiver', 'split_chunks',
                  'run_arq_baseline']),
    ('coop.loopback', ['run_loopback_session']),
]

for _src, _names in _FUNCTIONS:
    _utils.import_functions(_names, _src, 'coop')
    __all__ += _names

del _src, _names
