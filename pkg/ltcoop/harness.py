# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop.harness` module runs the experiments of the package from the
command line, writes their rows as CSV and checks the expected trends.

Every experiment takes an :class:`ExperimentSpec` and returns an
:class:`ExperimentResult`: the rows, one per cell or per run, and the checks
that failed. The command exits with status 1 if a check failed.

.. autosummary::

    ExperimentSpec
    ExperimentResult
    run_experiment
    run_overhead_matrix
    run_decode_throughput
    run_goodput_vs_aus
    run_churn
    run_loss_sweep
    run_arq_compare
    run_incentive_tables
    run_roundtrip
    write_rows
    main

Examples
--------
>>> from ltcoop import harness
>>> spec = harness.ExperimentSpec('roundtrip', grid={'n': [16],
...                                                 'symbol_size': [32]},
...                               trials=2)
>>> result = harness.run_experiment(spec)
>>> result.rows[0]['exact'], result.failures
(2, [])

"""

from __future__ import division

import argparse
import copy
import csv
import itertools
import json
import sys
import time
from collections import OrderedDict, namedtuple
from concurrent import futures

import numpy as np
from scipy import stats

from ltcoop import codes, coop, incentive, utils


logger = utils.build_logger(__name__)

# Links of the session experiments: cellular uplinks and WiFi relays.
UPLINK = dict(loss_rate=0., rate_limit=256e3, latency=1.)
RELAY = dict(loss_rate=0., rate_limit=1024e3, latency=1.)

_CODEC_GRID = dict(n=[32, 64, 128, 256, 512, 1024],
                   symbol_size=[64, 128, 256, 512, 1024, 1448])

DEFAULTS = OrderedDict([
    ('overhead-matrix', dict(grid=_CODEC_GRID, trials=100)),
    ('decode-throughput', dict(grid=_CODEC_GRID, trials=10)),
    ('goodput-vs-aus', dict(grid=dict(aus=[0, 1, 2, 3, 4]), trials=1)),
    ('churn', dict(grid=dict(aus=[3], leave=[0.3], back=[0.6]), trials=1)),
    ('loss-sweep', dict(grid=dict(loss=[0., 0.05, 0.1, 0.15, 0.2], aus=[0, 4],
                                  per_user=[False, True],
                                  mode=['lt', 'arq']), trials=1)),
    # Large blocks keep the rateless overhead within the comparison band.
    ('arq-compare', dict(grid=dict(loss=[0.], aus=[0, 2, 4], n=[1024],
                                   mode=['lt', 'arq']), trials=1,
                         session=dict(file_size=2**22))),
    ('incentive-tables', dict(grid=dict(users=[20], gamma=[10.],
                                        eps_max=[1, 2, 3, 4, 5],
                                        bidders=[5, 10, 15, 20],
                                        fixed_eps_max=[5]), trials=100)),
    ('roundtrip', dict(grid=_CODEC_GRID, trials=20)),
])

EXPERIMENTS = list(DEFAULTS)

# Acceptance bands.
OVERHEAD_BAND = (0.03, 0.20)
LINEAR_R2 = 0.99
LINEAR_TOLERANCE = 0.1
LOSS_FACTOR = 0.8
ARQ_BAND = (0.85, 1.15)
SPREAD_DROP = 1.25


ExperimentResult = namedtuple('ExperimentResult', ['name', 'rows',
                                                   'failures'])
ExperimentResult.__doc__ = r"""Rows of an experiment (list of dict) and the
descriptions of the checks that failed (list of str)."""


class ExperimentSpec(object):
    r"""An experiment, its parameter grid and its number of trials.

    Parameters
    ----------
    name : str
        One of :data:`EXPERIMENTS`.
    grid : dict
        Parameter lists overriding the defaults of the experiment, e.g.
        ``{'n': [32, 64]}``.
    trials : int
        Blocks per cell for the codec experiments, sessions per cell for the
        session experiments and instances per cell for the incentive tables.
    seed : int
        Every run is reproducible from it.
    output : str
        Path of the CSV file, none is written if None.
    session : dict
        Overrides of the session configurations, as accepted by
        :meth:`ltcoop.coop.SessionConfig.from_dict` (e.g. ``file_size``),
        on top of the defaults of the experiment.
    jobs : int
        Cells run in that many processes.

    Examples
    --------
    >>> from ltcoop import harness
    >>> spec = harness.ExperimentSpec('loss-sweep', grid={'loss': [0, 0.2]})
    >>> spec
    ExperimentSpec(name=loss-sweep, trials=1, seed=0)
    >>> spec.grid['loss'], spec.grid['aus']
    ([0, 0.2], [0, 4])

    """

    def __init__(self, name, grid=None, trials=None, seed=0, output=None,
                 session=None, jobs=1):
        if name not in DEFAULTS:
            raise ValueError('name: unknown experiment {}, must be one of {}.'
                             .format(name, EXPERIMENTS))
        defaults = DEFAULTS[name]
        self.name = name
        self.grid = copy.deepcopy(defaults['grid'])
        for key, values in (grid or {}).items():
            if key not in self.grid:
                raise ValueError('grid: unknown parameter {} for {}.'.format(
                    key, name))
            values = list(values) if isinstance(values, (list, tuple)) \
                else [values]
            if not values:
                raise ValueError('grid: no value for {}.'.format(key))
            self.grid[key] = values
        self.trials = int(defaults['trials'] if trials is None else trials)
        if self.trials < 1:
            raise ValueError('trials: must be at least 1, got {}.'.format(
                self.trials))
        self.seed = seed
        self.output = output
        self.session = dict(defaults.get('session', {}), **(session or {}))
        self.jobs = int(jobs)

    def __repr__(self):
        return '{}(name={}, trials={}, seed={})'.format(
            self.__class__.__name__, self.name, self.trials, self.seed)

    def to_dict(self):
        return dict(name=self.name, grid=self.grid, trials=self.trials,
                    seed=self.seed, output=self.output, session=self.session,
                    jobs=self.jobs)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        unknown = set(d) - {'name', 'grid', 'trials', 'seed', 'output',
                            'session', 'jobs'}
        if unknown:
            raise ValueError('Unknown experiment keys {}.'.format(
                sorted(unknown)))
        return cls(**d)

    @classmethod
    def load(cls, path):
        r"""Read an experiment from a JSON file."""
        with open(path) as f:
            return cls.from_dict(json.load(f))

    def cells(self, *keys):
        r"""Cartesian product of the grid over some parameters."""
        values = itertools.product(*[self.grid[k] for k in keys])
        return [OrderedDict(zip(keys, v)) for v in values]


def _map(func, cells, jobs):
    if jobs > 1 and len(cells) > 1:
        with futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(func, cells))
    return [func(cell) for cell in cells]


# Codec experiments.

def _blocks(n, symbol_size, trials, seed):
    rs = utils.random_state(seed)
    for trial in range(trials):
        symbols = rs.integers(0, 256, (n, symbol_size), dtype=np.uint8)
        yield codes.SourceBlock(trial, symbols), int(rs.integers(0, 2**62))


def _decode(block, distribution, first_seed):
    n, symbol_size = block.symbols.shape
    decoder = codes.Decoder(n, symbol_size, distribution, block.block_id)
    encoder = codes.Encoder(block, distribution)
    elapsed = 0.
    for symbol in encoder.stream(first_seed):
        start = time.perf_counter()
        decoder.push(symbol)
        elapsed += time.perf_counter() - start
        if decoder.complete:
            return decoder, elapsed


def _codec_cell(cell):
    name, n, symbol_size, trials, seed = cell
    distribution = codes.RobustSoliton(n)
    overheads, exact, elapsed = [], 0, 0.
    for block, first_seed in _blocks(n, symbol_size, trials, [seed, n,
                                                              symbol_size]):
        decoder, seconds = _decode(block, distribution, first_seed)
        overheads.append(decoder.overhead())
        exact += decoder.source_bytes() == block.tobytes()
        elapsed += seconds
    row = OrderedDict([('n', n), ('symbol_size', symbol_size),
                       ('trials', trials)])
    if name == 'overhead-matrix':
        row['overhead_mean'] = float(np.mean(overheads))
        row['overhead_std'] = float(np.std(overheads))
    elif name == 'decode-throughput':
        row['seconds'] = elapsed
        row['throughput'] = n * symbol_size * trials / elapsed
    else:
        row['exact'] = exact
    return row


def _codec(spec):
    cells = [(spec.name, c['n'], c['symbol_size'], spec.trials, spec.seed)
             for c in spec.cells('n', 'symbol_size')]
    return _map(_codec_cell, cells, spec.jobs)


def run_overhead_matrix(spec):
    r"""Mean and standard deviation of the decoding overhead per (n, N).

    Each cell decodes ``trials`` random blocks from a lossless stream. The
    overhead is non-negative, and for the largest symbol size it decreases
    strictly with the block size. At ``n = 1024`` it lies in
    :data:`OVERHEAD_BAND`.

    """
    rows = _codec(spec)
    failures = []
    for row in rows:
        if row['overhead_mean'] < 0:
            failures.append('overhead-matrix: negative overhead at n={}, '
                            'N={}.'.format(row['n'], row['symbol_size']))
    column = [r for r in rows
              if r['symbol_size'] == max(spec.grid['symbol_size'])]
    column.sort(key=lambda r: r['n'])
    means = [r['overhead_mean'] for r in column]
    if np.any(np.diff(means) >= 0):
        failures.append('overhead-matrix: overhead not strictly decreasing '
                        'in n at N={}: {}.'.format(column[0]['symbol_size'],
                                                   np.round(means, 4)))
    for row in column:
        low, high = OVERHEAD_BAND
        if row['n'] == 1024 and not low <= row['overhead_mean'] <= high:
            failures.append('overhead-matrix: overhead {:.4f} at n=1024 out '
                            'of [{}, {}].'.format(row['overhead_mean'], low,
                                                  high))
    return ExperimentResult(spec.name, rows, failures)


def run_decode_throughput(spec):
    r"""Decoded bytes per second of wall-clock decoding time per (n, N).

    Only the time spent in the decoder counts. Numbers depend on the machine:
    they are reported, not checked.

    """
    return ExperimentResult(spec.name, _codec(spec), [])


def run_roundtrip(spec):
    r"""Random blocks decoded from a lossless stream are identical."""
    rows = _codec(spec)
    failures = ['roundtrip: {} of {} blocks differ at n={}, N={}.'.format(
        r['trials'] - r['exact'], r['trials'], r['n'], r['symbol_size'])
        for r in rows if r['exact'] != r['trials']]
    return ExperimentResult(spec.name, rows, failures)


# Session experiments.

def topology(aus, session=None, seed=0, loss=0., mode='lt', per_user=False):
    r"""Configuration with a direct path and ``aus`` equal assistant paths.

    Uplinks and the direct link are :data:`UPLINK`, relays are :data:`RELAY`.
    The loss rate applies to the server-side links. With ``per_user``, it is
    the maximum loss rate of the users, see
    :meth:`ltcoop.coop.SessionConfig.with_loss`.

    Examples
    --------
    >>> from ltcoop import harness
    >>> config = harness.topology(2, {'file_size': 65536})
    >>> len(config.assistants), config.direct.rate_limit
    (2, 256000.0)

    """
    d = dict(direct=dict(UPLINK),
             assistants=[dict(au_id=i + 1, uplink=dict(UPLINK),
                              relay=dict(RELAY)) for i in range(aus)])
    d.update(session or {})
    d.update(seed=seed, file_seed=seed, mode=mode)
    config = coop.SessionConfig.from_dict(d)
    return config.with_loss(loss, per_user=per_user) if loss else config


def _session_cell(cell):
    params, config = cell
    row = OrderedDict(params)
    try:
        report = coop.run_session(config)
    except coop.SessionTimeout as e:
        row['error'] = str(e)
        return row
    row.update(report.to_row())
    row['error'] = ''
    return row


def _sessions(spec, cells, configure):
    runs = []
    for cell in cells:
        for trial in range(spec.trials):
            params = OrderedDict(cell, trial=trial)
            runs.append((params, configure(cell, spec.seed + trial)))
    return _map(_session_cell, runs, spec.jobs)


def _failed(rows):
    return ['{}: session failed ({}).'.format(
        ', '.join('{}={}'.format(k, r[k]) for k in r if k != 'error'),
        r['error']) for r in rows if r['error']]


def _mean(rows, key, **where):
    values = [r[key] for r in rows if not r['error'] and
              all(r[k] == v for k, v in where.items())]
    return float(np.mean(values)) if values else 0.


def run_goodput_vs_aus(spec):
    r"""Goodput against the number of equal assistant paths.

    A least-squares line of the goodput against the number of paths fits
    with :math:`R^2 \geq 0.99`, and its value at one path is within 10% of
    the measured goodput of the direct path alone.

    """
    rows = _sessions(spec, spec.cells('aus'), lambda c, seed: topology(
        c['aus'], spec.session, seed))
    failures = _failed(rows)
    if failures or len(spec.grid['aus']) < 2:
        return ExperimentResult(spec.name, rows, failures)

    paths = np.array(spec.grid['aus']) + 1
    goodput = np.array([_mean(rows, 'goodput', aus=a)
                        for a in spec.grid['aus']])
    fit = stats.linregress(paths, goodput)
    if fit.rvalue**2 < LINEAR_R2:
        failures.append('goodput-vs-aus: R^2 = {:.4f} < {}.'.format(
            fit.rvalue**2, LINEAR_R2))
    if 0 in spec.grid['aus']:
        single = goodput[spec.grid['aus'].index(0)]
        fitted = fit.intercept + fit.slope
        if abs(fitted - single) > LINEAR_TOLERANCE * single:
            failures.append('goodput-vs-aus: fitted goodput {:.0f} at one '
                            'path, measured {:.0f}.'.format(fitted, single))
    return ExperimentResult(spec.name, rows, failures)


def run_churn(spec):
    r"""Sessions where an assistant leaves, and leaves then comes back.

    The file is always decoded exactly, and later when an assistant left
    than without churn.

    """
    scenarios = []
    for cell in spec.cells('aus', 'leave', 'back'):
        au = cell['aus']
        scenarios.append(OrderedDict(cell, scenario='steady', churn=[]))
        scenarios.append(OrderedDict(cell, scenario='leave', churn=[
            dict(time=cell['leave'], action='remove', au_id=au)]))
        scenarios.append(OrderedDict(cell, scenario='leave-back', churn=[
            dict(time=cell['leave'], action='remove', au_id=au),
            dict(time=cell['back'], action='add', au_id=au)]))

    def configure(cell, seed):
        session = dict(spec.session, churn=cell['churn'])
        return topology(cell['aus'], session, seed)

    rows = _sessions(spec, scenarios, configure)
    for row in rows:
        row['churn'] = ' '.join('{action}:{au_id}@{time}'.format(**e)
                                for e in row['churn'])
    failures = _failed(rows)
    for row in rows:
        if not row['error'] and row['exact'] is not True:
            failures.append('churn: corrupted file in scenario {}.'.format(
                row['scenario']))
    for cell in spec.cells('aus', 'leave', 'back'):
        for trial in range(spec.trials):
            runs = {r['scenario']: r for r in rows if r['trial'] == trial and
                    all(r[k] == v for k, v in cell.items())}
            steady, leave = runs['steady'], runs['leave']
            if steady['error'] or leave['error']:
                continue
            if not leave['completion_time'] > steady['completion_time']:
                failures.append('churn: completion {:.3f}s with an assistant '
                                'gone, {:.3f}s without churn.'.format(
                                    leave['completion_time'],
                                    steady['completion_time']))
    return ExperimentResult(spec.name, rows, failures)


def run_loss_sweep(spec):
    r"""Rateless and baseline sessions over increasingly lossy links.

    Each loss rate is either shared by all the server-side links, or, with
    ``per_user``, the maximum of the users' own loss rates. The default grid
    runs a single phone (no AU) and a group of four AUs.

    Rateless sessions always complete exactly with a goodput of at least
    :math:`0.8 (1 - p)` times the lossless goodput. At the highest shared
    loss rate, the rateless goodput exceeds the baseline's. A baseline
    session that gives up counts as a zero goodput.

    """
    rows = _sessions(spec, spec.cells('loss', 'aus', 'per_user', 'mode'),
                     lambda c, seed: topology(c['aus'], spec.session, seed,
                                              c['loss'], c['mode'],
                                              c['per_user']))
    failures = _failed([r for r in rows if r['mode'] == 'lt'])
    for r in rows:
        if r['mode'] == 'lt' and not r['error'] and r['exact'] is not True:
            failures.append('loss-sweep: corrupted file at loss {}.'.format(
                r['loss']))
    for aus, per_user in itertools.product(spec.grid['aus'],
                                           spec.grid['per_user']):
        where = dict(aus=aus, per_user=per_user)
        if 'lt' in spec.grid['mode'] and 0 in spec.grid['loss']:
            base = _mean(rows, 'goodput', loss=0, mode='lt', **where)
            for p in spec.grid['loss']:
                goodput = _mean(rows, 'goodput', loss=p, mode='lt', **where)
                if goodput < LOSS_FACTOR * (1 - p) * base:
                    failures.append('loss-sweep: goodput {:.0f} at loss {} '
                                    'with {} AUs, below {} x {:.0f}.'.format(
                                        goodput, p, aus, LOSS_FACTOR,
                                        (1 - p) * base))
        if set(spec.grid['mode']) == {'lt', 'arq'} and not per_user:
            p = max(spec.grid['loss'])
            lt = _mean(rows, 'goodput', loss=p, mode='lt', **where)
            arq = _mean(rows, 'goodput', loss=p, mode='arq', **where)
            if p > 0 and not lt > arq:
                failures.append('loss-sweep: at loss {} with {} AUs, rateless '
                                'goodput {:.0f} does not exceed the baseline '
                                '{:.0f}.'.format(p, aus, lt, arq))
    return ExperimentResult(spec.name, rows, failures)


def run_arq_compare(spec):
    r"""Rateless sessions against the retransmission baseline.

    Sessions use blocks of ``n`` source symbols. On lossless links the
    baseline's goodput over the rateless goodput must lie in
    :data:`ARQ_BAND`. The ratio and whether it is within the band are
    reported in the ``ratio`` and ``within_band`` columns of the lossless
    rows. The baseline sends no redundant packet, so the ratio is about one
    plus the decoding overhead, which is only small for large blocks.

    """
    def configure(cell, seed):
        coding = dict(spec.session.get('coding', {}), n=cell['n'])
        session = dict(spec.session, coding=coding)
        return topology(cell['aus'], session, seed, cell['loss'],
                        cell['mode'])

    rows = _sessions(spec, spec.cells('loss', 'aus', 'n', 'mode'), configure)
    failures = _failed(rows)
    if 0 not in spec.grid['loss'] or set(spec.grid['mode']) != {'lt', 'arq'}:
        return ExperimentResult(spec.name, rows, failures)
    for n, aus in itertools.product(spec.grid['n'], spec.grid['aus']):
        lt = _mean(rows, 'goodput', loss=0, aus=aus, n=n, mode='lt')
        arq = _mean(rows, 'goodput', loss=0, aus=aus, n=n, mode='arq')
        ratio = arq / lt if lt else np.inf
        within = bool(ARQ_BAND[0] <= ratio <= ARQ_BAND[1])
        for r in rows:
            if r['loss'] == 0 and r['aus'] == aus and r['n'] == n:
                r['ratio'] = ratio
                r['within_band'] = within
        if not within:
            failures.append('arq-compare: baseline to rateless goodput ratio '
                            '{:.3f} with {} AUs and n={} out of {}.'.format(
                                ratio, aus, n, ARQ_BAND))
    return ExperimentResult(spec.name, rows, failures)


# Incentive experiment.

def run_incentive_tables(spec):
    r"""Mean server utility and payment over random games.

    Rows come from three tables (column ``table``): the spread of the unit
    costs, the number of participants and the number of bidders. The utility
    and the payment decrease as the costs spread, the utility at the
    narrowest spread exceeds the widest by 25%, and the utility increases
    with the number of bidders with diminishing increments.

    """
    rows, failures = [], []
    for cell in spec.cells('users', 'gamma', 'fixed_eps_max'):
        tables = incentive.monte_carlo(
            users=cell['users'], gamma=cell['gamma'],
            eps_max=spec.grid['eps_max'], bidders=spec.grid['bidders'],
            fixed_eps_max=cell['fixed_eps_max'], trials=spec.trials,
            seed=spec.seed)
        for table, table_rows in tables.items():
            for row in table_rows:
                rows.append(OrderedDict([('table', table),
                                         ('gamma', cell['gamma'])], **row))

        spread = sorted(tables['cost_spread'], key=lambda r: r['eps_max'])
        for key in ['mu', 'payment']:
            if np.any(np.diff([r[key] for r in spread]) > 0):
                failures.append('incentive-tables: mean {} increases with '
                                'eps_max.'.format(key))
        if len(spread) > 1 and \
                spread[0]['mu'] < SPREAD_DROP * spread[-1]['mu']:
            failures.append('incentive-tables: mean mu {:.3f} at eps_max={} '
                            'not {} times {:.3f} at eps_max={}.'.format(
                                spread[0]['mu'], spread[0]['eps_max'],
                                SPREAD_DROP, spread[-1]['mu'],
                                spread[-1]['eps_max']))
        bidders = sorted(tables['bidders'], key=lambda r: r['users'])
        steps = np.diff([r['mu'] for r in bidders])
        if np.any(steps <= 0) or np.any(np.diff(steps) >= 0):
            failures.append('incentive-tables: mean mu against the number of '
                            'bidders is not increasing with diminishing '
                            'increments: {}.'.format(
                                np.round([r['mu'] for r in bidders], 4)))
    return ExperimentResult(spec.name, rows, failures)


_RUNNERS = {
    'overhead-matrix': run_overhead_matrix,
    'decode-throughput': run_decode_throughput,
    'goodput-vs-aus': run_goodput_vs_aus,
    'churn': run_churn,
    'loss-sweep': run_loss_sweep,
    'arq-compare': run_arq_compare,
    'incentive-tables': run_incentive_tables,
    'roundtrip': run_roundtrip,
}


def run_experiment(spec):
    r"""Run an experiment and write its rows if ``spec.output`` is set."""
    logger.info('Running {}.'.format(spec))
    result = _RUNNERS[spec.name](spec)
    for failure in result.failures:
        logger.warning(failure)
    if spec.output is not None:
        write_rows(result.rows, spec.output)
    return result


def write_rows(rows, path):
    r"""Write rows as CSV, columns in order of first appearance."""
    fields = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)


def _format(value):
    if isinstance(value, float):
        return '{:.4g}'.format(value)
    return str(value)


def summary(result, columns=None):
    r"""Human-readable table of the rows and the failed checks."""
    rows = result.rows
    if columns is None:
        columns = [k for k in (rows[0] if rows else [])
                   if k not in ('per_path', 'error', 'churn')]
    lines = ['\t'.join(columns)]
    lines += ['\t'.join(_format(r.get(k, '')) for k in columns)
              for r in rows]
    status = 'ok' if not result.failures else '{} failed check(s)'.format(
        len(result.failures))
    lines.append('{}: {} rows, {}.'.format(result.name, len(rows), status))
    lines += ['  ' + f for f in result.failures]
    return '\n'.join(lines)


def _grid_value(text):
    try:
        return json.loads(text)
    except ValueError:
        return text


def _grid(items):
    grid = dict()
    for item in items:
        key, sep, values = item.partition('=')
        if not sep:
            raise ValueError('grid: expected key=value[,value...], got {}.'
                             .format(item))
        grid[key.replace('-', '_')] = [_grid_value(v)
                                       for v in values.split(',')]
    return grid


def build_parser():
    parser = argparse.ArgumentParser(
        prog='ltcoop', description='Run the experiments of ltcoop.')
    parser.add_argument('experiment', choices=EXPERIMENTS + ['all'],
                        help='experiment to run')
    parser.add_argument('--config', help='JSON file of experiment parameters')
    parser.add_argument('--grid', action='append', default=[],
                        metavar='KEY=V1,V2',
                        help='override a grid parameter (repeatable)')
    parser.add_argument('--trials', type=int, help='trials per cell')
    parser.add_argument('--seed', type=int, help='seed (default 0)')
    parser.add_argument('--file-size', type=int,
                        help='file size of the session experiments')
    parser.add_argument('--output', help='CSV file (or directory for all)')
    parser.add_argument('--jobs', type=int,
                        help='processes running independent cells')
    parser.add_argument('--log-level', default=None,
                        help='DEBUG, INFO, WARNING or ERROR')
    return parser


def main(argv=None):
    r"""Entry point of the ``ltcoop`` command, returns the exit status."""
    args = build_parser().parse_args(argv)
    if args.log_level is not None:
        utils.set_log_level(args.log_level)

    if args.config is not None:
        with open(args.config) as f:
            base = json.load(f)
    else:
        base = dict()
    if args.file_size is not None:
        base.setdefault('session', {})['file_size'] = args.file_size
    base.update({k: v for k, v in [('trials', args.trials),
                                   ('seed', args.seed),
                                   ('jobs', args.jobs)] if v is not None})

    names = EXPERIMENTS if args.experiment == 'all' else [args.experiment]
    status = 0
    for name in names:
        d = dict(base, name=name)
        if args.output is not None:
            d['output'] = (args.output if len(names) == 1 else
                           '{}/{}.csv'.format(args.output, name))
        try:
            if args.grid:
                d['grid'] = dict(d.get('grid', {}), **_grid(args.grid))
            spec = ExperimentSpec.from_dict(d)
        except ValueError as e:
            print('ltcoop: {}'.format(e), file=sys.stderr)
            return 2
        result = run_experiment(spec)
        print(summary(result))
        if result.failures:
            status = 1
    return status


if __name__ == '__main__':
    sys.exit(main())
