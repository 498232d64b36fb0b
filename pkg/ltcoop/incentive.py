# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop.incentive` module rewards the assistant users (AUs) with a
two-stage game. The server, the leader, announces a total reward :math:`R`.
The AUs, the followers, choose how long they serve, :math:`t_i`, and share the
reward in proportion. AU :math:`i` has a unit cost :math:`\epsilon_i` and the
utilities are

.. math:: \mu_i = \frac{t_i}{\sum_j t_j} R - t_i \epsilon_i, \qquad
          \mu = \gamma \log\left(1 + \sum_i \log(1 + t_i)\right) - R.

At the equilibrium of the followers, :math:`t_i = T_i R` for coefficients
:math:`T_i` that only depend on the costs. The leader then maximizes
:math:`\mu` over :math:`R`, a concave problem solved by bisection on its
derivative. Logarithms are natural. See :cite:`fudenberg1991game` for
leader-follower games.

Utilities
---------

.. autosummary::

    au_utility
    server_utility

Equilibrium
-----------

.. autosummary::

    AuBid
    StrategyProfile
    compute_equilibrium
    coefficients
    GameParams
    GameOutcome
    optimal_reward
    ru_payment
    DegenerateGameError
    UndefinedShareError

Experiments
-----------

.. autosummary::

    random_costs
    monte_carlo

"""

from __future__ import division

from collections import OrderedDict, namedtuple

import numpy as np
from scipy import optimize

from ltcoop import utils


logger = utils.build_logger(__name__)


class DegenerateGameError(ValueError):
    """Fewer than two bidders: the followers' game has no equilibrium."""


class UndefinedShareError(ZeroDivisionError):
    """The reward share of an AU is undefined when nobody serves."""


class AuBid(namedtuple('AuBid', ['au_id', 'unit_cost'])):
    r"""Unit cost :math:`\epsilon_i > 0` announced by an assistant."""

    __slots__ = ()

    def __new__(cls, au_id, unit_cost):
        unit_cost = float(unit_cost)
        if not np.isfinite(unit_cost) or unit_cost <= 0:
            raise ValueError('unit_cost: must be positive, got {}.'.format(
                unit_cost))
        return super(AuBid, cls).__new__(cls, au_id, unit_cost)


StrategyProfile = namedtuple('StrategyProfile', ['t', 'K'])
StrategyProfile.__doc__ = r"""Service times ``t`` (in the order of the bids)
and indices ``K`` of the participating AUs, in increasing order."""

GameOutcome = namedtuple('GameOutcome', ['reward', 'profile', 'mu', 'mu_i',
                                         'payment'])
GameOutcome.__doc__ = r"""Optimal reward :math:`R^\star`, equilibrium profile
at that reward, utility of the server, utilities of the AUs and payment of the
requesting user."""


def _costs(bids):
    costs = np.array([b.unit_cost if isinstance(b, AuBid) else b
                      for b in bids], dtype=float)
    if costs.ndim != 1:
        raise ValueError('bids: must be a list of unit costs.')
    if np.any(~np.isfinite(costs)) or np.any(costs <= 0):
        raise ValueError('bids: unit costs must be positive.')
    if costs.size < 2:
        raise DegenerateGameError('bids: at least 2 bidders are needed, got '
                                  '{}.'.format(costs.size))
    return costs


def _times(profile):
    if isinstance(profile, StrategyProfile):
        profile = profile.t
    return np.asarray(profile, dtype=float)


def au_utility(profile, i, R, bids):
    r"""Utility of AU ``i``: its share of the reward minus its cost.

    Parameters
    ----------
    profile : :class:`StrategyProfile` or array_like
        Service times of all the AUs.
    i : int
        Index of the AU.
    R : float
        Total reward.
    bids : list of :class:`AuBid` or float
        Unit costs.

    Raises
    ------
    UndefinedShareError
        If nobody serves.

    Examples
    --------
    >>> from ltcoop import incentive
    >>> incentive.au_utility([1, 1], 0, R=4, bids=[1, 1])
    1.0
    >>> incentive.au_utility([0, 1], 0, R=4, bids=[1, 1])
    0.0

    """
    t = _times(profile)
    costs = _costs(bids)
    total = t.sum()
    if total <= 0:
        raise UndefinedShareError('profile: the share of AU {} is undefined '
                                  'when nobody serves.'.format(i))
    return float(t[i] / total * R - t[i] * costs[i])


def server_utility(profile, R, gamma):
    r"""Utility of the server: value of the service times minus the reward.

    Examples
    --------
    >>> from ltcoop import incentive
    >>> incentive.server_utility([0, 0], R=0, gamma=10)
    0.0
    >>> round(incentive.server_utility([np.e - 1, 0], R=1, gamma=2), 4)
    0.3863

    """
    t = _times(profile)
    if np.any(t < 0):
        raise ValueError('profile: service times must be non-negative.')
    return float(gamma * np.log1p(np.log1p(t).sum()) - R)


def _participants(costs):
    r"""Indices of the participants: the two cheapest, then the next ones as
    long as (|K| - 1) times their cost is below the total cost of K."""
    order = np.argsort(costs, kind='stable')
    K = list(order[:2])
    total = costs[K].sum()
    for i in order[2:]:
        if costs[i] * (len(K) - 1) >= total:
            break
        K.append(i)
        total += costs[i]
    return tuple(sorted(int(k) for k in K))


def coefficients(bids, K=None):
    r"""Coefficients :math:`T_i` of the equilibrium service times.

    At the equilibrium of the followers, :math:`t_i = T_i R` with

    .. math:: T_i = \frac{|K| - 1}{\sum_{j \in K} \epsilon_j}
              \left(1 - \frac{(|K| - 1) \epsilon_i}
              {\sum_{j \in K} \epsilon_j}\right)

    for the participants :math:`i \in K`, and 0 otherwise.

    Parameters
    ----------
    bids : list of :class:`AuBid` or float
    K : sequence of int
        Participants, computed from the costs if None.

    Examples
    --------
    >>> from ltcoop import incentive
    >>> incentive.coefficients([1, 1])
    array([0.25, 0.25])
    >>> incentive.coefficients([1, 1, 10])
    array([0.25, 0.25, 0.  ])

    """
    costs = _costs(bids)
    K = _participants(costs) if K is None else tuple(K)
    if len(K) < 2:
        raise DegenerateGameError('K: at least 2 participants are needed, '
                                  'got {}.'.format(len(K)))
    k = len(K) - 1
    total = costs[list(K)].sum()
    T = np.zeros(costs.size)
    T[list(K)] = k / total * (1 - k * costs[list(K)] / total)
    return T


def compute_equilibrium(bids, R):
    r"""Equilibrium service times of the AUs for a reward.

    The AUs are sorted by cost. The two cheapest participate. The next
    ones join while their cost, times the number of participants minus one,
    is below the total cost of the participants. Participants serve
    :math:`t_i = T_i R`, the others do not serve.

    Parameters
    ----------
    bids : list of :class:`AuBid` or float
        Unit costs. Ties are broken by position.
    R : float
        Total reward, positive.

    Returns
    -------
    profile : :class:`StrategyProfile`
        Service times in the order of ``bids``.

    Examples
    --------
    >>> from ltcoop import incentive
    >>> profile = incentive.compute_equilibrium([1, 1], R=4)
    >>> profile.t
    array([1., 1.])
    >>> incentive.compute_equilibrium([10, 1, 1], R=4).K
    (1, 2)

    """
    if not R > 0:
        raise ValueError('R: the reward must be positive, got {}.'.format(R))
    costs = _costs(bids)
    K = _participants(costs)
    return StrategyProfile(coefficients(costs, K) * R, K)


def _derivative(R, T, gamma):
    X = 1 + np.log1p(T * R).sum()
    return gamma * (T / (1 + T * R)).sum() / X - 1


class GameParams(object):
    r"""A game: the leader's weight and the followers' bids.

    Parameters
    ----------
    gamma : float
        Weight of the service in the server utility, greater than 1.
    bids : list of :class:`AuBid` or float
        At least two bids.
    mu0 : float
        Reservation utility of the server, subtracted from the payment of
        the requesting user.

    Examples
    --------
    >>> from ltcoop import incentive
    >>> game = incentive.GameParams(10, [incentive.AuBid(1, 1.),
    ...                                  incentive.AuBid(2, 1.)])
    >>> game
    GameParams(gamma=10, bids=2, mu0=0)
    >>> outcome = game.solve()
    >>> outcome.profile.K
    (0, 1)

    """

    def __init__(self, gamma, bids, mu0=0.):
        if not gamma > 1:
            raise ValueError('gamma: must be greater than 1, got {}.'.format(
                gamma))
        if mu0 < 0:
            raise ValueError('mu0: must be non-negative, got {}.'.format(mu0))
        self.gamma = gamma
        self.bids = [b if isinstance(b, AuBid) else AuBid(i, b)
                     for i, b in enumerate(bids)]
        _costs(self.bids)
        self.mu0 = mu0

    def __repr__(self):
        return '{}(gamma={:g}, bids={}, mu0={:g})'.format(
            self.__class__.__name__, self.gamma, len(self.bids), self.mu0)

    def solve(self, tol=1e-9):
        return optimal_reward(self.bids, self.gamma, tol, self.mu0)


def optimal_reward(bids, gamma, tol=1e-9, mu0=0.):
    r"""Reward maximizing the server utility, and the resulting outcome.

    The derivative of the server utility in :math:`R`,

    .. math:: \frac{\partial \mu}{\partial R} = \gamma
              \frac{\sum_{i \in K} T_i / (1 + T_i R)}
              {1 + \sum_{i \in K} \log(1 + T_i R)} - 1,

    is decreasing. Its root is found by bisection on :math:`[0, R_{hi}]`,
    where :math:`R_{hi}` starts at 1 and doubles until the derivative is
    negative. If the derivative is not positive at 0, serving is never
    worth its reward: the optimal reward is 0 and nobody serves.

    Parameters
    ----------
    bids : list of :class:`AuBid` or float
    gamma : float
        Greater than 1.
    tol : float
        Absolute tolerance on the reward.
    mu0 : float
        Reservation utility, see :func:`ru_payment`.

    Returns
    -------
    outcome : :class:`GameOutcome`

    Examples
    --------
    >>> from ltcoop import incentive
    >>> outcome = incentive.optimal_reward([1, 1], gamma=10)
    >>> round(outcome.reward, 2), round(outcome.mu, 2)
    (4.21, 4.7)
    >>> bool(np.all(outcome.mu_i >= 0))
    True
    >>> incentive.optimal_reward([50, 50], gamma=1.5).reward
    0.0

    """
    if not gamma > 1:
        raise ValueError('gamma: must be greater than 1, got {}.'.format(
            gamma))
    if not tol > 0:
        raise ValueError('tol: must be positive, got {}.'.format(tol))
    costs = _costs(bids)
    K = _participants(costs)
    T = coefficients(costs, K)

    if _derivative(0, T, gamma) <= 0:
        logger.debug('No profitable participation: the optimal reward is 0.')
        profile = StrategyProfile(np.zeros(costs.size), ())
        outcome = GameOutcome(0., profile, 0., np.zeros(costs.size), 0.)
        return outcome._replace(payment=ru_payment(outcome, mu0))

    hi = 1.
    while _derivative(hi, T, gamma) > 0:
        hi *= 2
    R = optimize.bisect(_derivative, 0, hi, args=(T, gamma), xtol=tol)

    t = T * R
    profile = StrategyProfile(t, K)
    mu = server_utility(t, R, gamma)
    mu_i = t / t.sum() * R - t * costs
    outcome = GameOutcome(float(R), profile, mu, mu_i, 0.)
    return outcome._replace(payment=ru_payment(outcome, mu0))


def ru_payment(outcome, mu0=0.):
    r"""Payment of the requesting user for the cooperative download.

    It is the value of the service to the server, :math:`\mu + R^\star`,
    minus the reservation utility :math:`\mu_0`.

    Examples
    --------
    >>> from ltcoop import incentive
    >>> outcome = incentive.optimal_reward([1, 1], gamma=10)
    >>> bool(np.isclose(incentive.ru_payment(outcome, mu0=outcome.mu),
    ...                 outcome.reward))
    True

    """
    return float(outcome.mu + outcome.reward - mu0)


def random_costs(users, eps_max, size=None, seed=None):
    r"""Unit costs drawn uniformly in :math:`[1, \epsilon_{max}]`.

    Parameters
    ----------
    users : int
        Number of bidders.
    eps_max : float
        Largest cost, at least 1.
    size : int
        Number of instances, a single instance if None.
    seed : int

    Returns
    -------
    costs : ndarray
        Of shape ``(users,)`` or ``(size, users)``.

    """
    if eps_max < 1:
        raise ValueError('eps_max: must be at least 1, got {}.'.format(
            eps_max))
    shape = users if size is None else (size, users)
    return utils.random_state(seed).uniform(1, eps_max, shape)


def _summary(outcomes):
    mu = np.array([o.mu for o in outcomes])
    payment = np.array([o.payment for o in outcomes])
    return OrderedDict([('trials', len(outcomes)),
                        ('mu', mu.mean()), ('mu_std', mu.std()),
                        ('payment', payment.mean()),
                        ('payment_std', payment.std())])


def monte_carlo(users=20, gamma=10., eps_max=(1, 2, 3, 4, 5),
                bidders=(5, 10, 15, 20), fixed_eps_max=5, trials=100,
                mu0=0., seed=0, tol=1e-9):
    r"""Mean utility of the server and payment over random instances.

    The same uniform draws are used for every cell (common random numbers),
    scaled to :math:`[1, \epsilon_{max}]`: cells differ by their parameters
    only.

    Parameters
    ----------
    users : int
        Bidders of the cost-spread table.
    gamma : float
    eps_max : list of float
        Largest unit costs of the cost-spread table.
    bidders : list of int
        Numbers of bidders of the bidders table, with costs up to
        ``fixed_eps_max``.
    fixed_eps_max : float
        Largest unit cost of the participants and bidders tables.
    trials : int
        Instances per cell.
    mu0 : float
    seed : int

    Returns
    -------
    tables : dict of list of dict
        ``'cost_spread'``: one row per ``eps_max`` with ``users`` bidders.
        ``'participants'``: instances with ``users`` bidders and costs up to
        ``fixed_eps_max``, grouped by the number of participants :math:`|K|`.
        ``'bidders'``: one row per number of bidders.
        Every row has the mean and standard deviation of ``mu`` and
        ``payment``.

    Examples
    --------
    >>> from ltcoop import incentive
    >>> tables = incentive.monte_carlo(eps_max=[1, 5], bidders=[5, 20],
    ...                                trials=10)
    >>> [row['eps_max'] for row in tables['cost_spread']]
    [1, 5]
    >>> bool(tables["cost_spread"][0]["mu"] > tables["cost_spread"][1]["mu"])
    True

    """
    if trials < 1:
        raise ValueError('trials: must be at least 1, got {}.'.format(trials))
    width = max([users] + list(bidders))
    draws = utils.random_state(seed).random((trials, width))

    def solve(count, top):
        costs = 1 + draws[:, :count] * (top - 1)
        return [optimal_reward(c, gamma, tol, mu0) for c in costs]

    tables = OrderedDict()
    tables['cost_spread'] = []
    for top in eps_max:
        row = OrderedDict([('eps_max', top), ('users', users)])
        row.update(_summary(solve(users, top)))
        tables['cost_spread'].append(row)

    groups = dict()
    for outcome in solve(users, fixed_eps_max):
        groups.setdefault(len(outcome.profile.K), []).append(outcome)
    tables['participants'] = []
    for size in sorted(groups):
        row = OrderedDict([('eps_max', fixed_eps_max), ('users', users),
                           ('participants', size)])
        row.update(_summary(groups[size]))
        tables['participants'].append(row)

    tables['bidders'] = []
    for count in bidders:
        row = OrderedDict([('eps_max', fixed_eps_max), ('users', count)])
        row.update(_summary(solve(count, fixed_eps_max)))
        tables['bidders'].append(row)

    logger.info('Solved {} games.'.format(
        trials * (len(eps_max) + 1 + len(bidders))))
    return tables
