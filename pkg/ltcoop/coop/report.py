# -*- coding: utf-8 -*-

from __future__ import division

import csv
from collections import namedtuple


PathStats = namedtuple('PathStats', ['path_id', 'kind', 'sent', 'forwarded',
                                     'delivered'])
PathStats.__doc__ = r"""Packets sent by the server, forwarded by the assistant
(equal to ``sent`` minus losses on a direct path) and delivered to the RU."""

COLUMNS = [
    'mode', 'file_size', 'paths', 'completion_time', 'setup_time', 'goodput',
    'total_overhead', 'received', 'redundant', 'malformed', 'reassigned',
    'exact', 'per_path',
]


class SessionReport(object):
    r"""Measurements of a cooperative session.

    Attributes
    ----------
    mode : str
    file_size : int
    completion_time : float
        Seconds from the start of the dissemination to the decoding of the
        whole file.
    setup_time : float
        Seconds from the first registration to the start of the dissemination.
    goodput : float
        ``file_size / completion_time``, in bytes per second.
    total_overhead : float
        Packets received by the RU over packets strictly needed, minus one.
    received, redundant, malformed : int
        Packets received by the RU, of which carried nothing new, and dropped
        as malformed.
    reassigned : int
        Chunks reassigned to another path (retransmission baseline).
    exact : bool
        Whether the reassembled file is identical to the original.
    per_path : list of :class:`PathStats`
    timeline : list of float
        Goodput samples per monitor window, in bytes per second.
    monitor_window : float
    terminate_signals : int
        Terminating signals received by the server.

    Examples
    --------
    >>> from ltcoop import coop
    >>> report = coop.SessionReport('lt', 1000, 2., 0.004, 0.1,
    ...                             [coop.PathStats(0, 'direct', 12, 11, 11)],
    ...                             timeline=[500., 500.])
    >>> report.goodput
    500.0
    >>> report.to_row()['per_path']
    '0:direct:12/11/11'

    """

    def __init__(self, mode, file_size, completion_time, setup_time,
                 total_overhead, per_path, timeline=(), monitor_window=1.,
                 received=0, redundant=0, malformed=0, reassigned=0,
                 exact=True, terminate_signals=1):
        self.mode = mode
        self.file_size = file_size
        self.completion_time = completion_time
        self.setup_time = setup_time
        self.total_overhead = total_overhead
        self.per_path = list(per_path)
        self.timeline = list(timeline)
        self.monitor_window = monitor_window
        self.received = received
        self.redundant = redundant
        self.malformed = malformed
        self.reassigned = reassigned
        self.exact = exact
        self.terminate_signals = terminate_signals

    @property
    def goodput(self):
        return self.file_size / self.completion_time

    @property
    def paths(self):
        return len(self.per_path)

    def __repr__(self):
        return ('{}(mode={}, paths={}, completion_time={:.3f}, '
                'goodput={:.0f}, exact={})'.format(
                    self.__class__.__name__, self.mode, self.paths,
                    self.completion_time, self.goodput, self.exact))

    def to_row(self):
        r"""The report as a CSV row (a dict keyed by :data:`COLUMNS`)."""
        per_path = ' '.join('{}:{}:{}/{}/{}'.format(*p) for p in self.per_path)
        return dict(mode=self.mode, file_size=self.file_size,
                    paths=self.paths, completion_time=self.completion_time,
                    setup_time=self.setup_time, goodput=self.goodput,
                    total_overhead=self.total_overhead,
                    received=self.received, redundant=self.redundant,
                    malformed=self.malformed, reassigned=self.reassigned,
                    exact=self.exact, per_path=per_path)


def write_csv(reports, path, extra=None):
    r"""Write reports as CSV rows, with optional extra leading columns.

    Parameters
    ----------
    reports : list of :class:`SessionReport`
    path : str
    extra : list of dict
        Columns prepended to each row, e.g. the parameters of the run.

    """
    extra = extra or [dict() for _ in reports]
    rows = [dict(e, **r.to_row()) for e, r in zip(extra, reports)]
    fields = list(extra[0].keys()) + COLUMNS if rows else COLUMNS
    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
