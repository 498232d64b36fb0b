# -*- coding: utf-8 -*-

from __future__ import division

import numpy as np

from .degreedistribution import DegreeDistribution
from .idealsoliton import IdealSoliton, _check_n


class RobustSoliton(DegreeDistribution):
    r"""Robust soliton distribution.

    The ideal soliton :math:`P` is augmented by a term :math:`\Theta` and
    renormalized,

    .. math:: \Psi(j) = \frac{P(j) + \Theta(j)}{\beta}, \quad
              \beta = \sum_{j=1}^n P(j) + \Theta(j),

    where, with the spike height :math:`R = c \sqrt{n} \ln(n / \delta)` and the
    spike position :math:`s = \lceil n / R \rceil`,

    .. math:: \Theta(j) = \begin{cases}
                  \frac{R}{jn} & j = 1, \dots, s - 1, \\
                  \frac{R \ln(R / \delta)}{n} & j = s, \\
                  0 & j > s.
              \end{cases}

    The first piece keeps degree-one symbols available during peeling, the
    spike makes sure that every source symbol is covered. When
    :math:`s > n`, the spike falls outside the support and is dropped.

    Parameters
    ----------
    n : int
        Number of source symbols per block.
    c : float
        Positive tuning constant of the spike height (default is 0.1).
    delta : float
        Failure-probability parameter in :math:`(0, 1)` (default is 0.5).

    Attributes
    ----------
    spike_height : float
        The quantity :math:`R = c \sqrt{n} \ln(n / \delta)`.
    spike : int
        The spike position :math:`\lceil n / R \rceil` (may exceed ``n``).
    beta : float
        Normalization constant.

    Examples
    --------
    >>> dist = codes.RobustSoliton(64)
    >>> dist
    RobustSoliton(n=64, c=0.10, delta=0.50, spike=17)
    >>> print('{:.4f}'.format(dist.pmf.sum()))
    1.0000
    >>> bool(dist.pmf[0] > codes.IdealSoliton(64).pmf[0])
    True

    """

    def __init__(self, n, c=0.1, delta=0.5):

        n = _check_n(n)
        if not c > 0:
            raise ValueError('c: must be positive, got {}.'.format(c))
        if not 0 < delta < 1:
            raise ValueError('delta: must be in (0, 1), got {}.'.format(delta))

        self.c = float(c)
        self.delta = float(delta)
        self.spike_height = self.c * np.sqrt(n) * np.log(n / self.delta)

        if self.spike_height >= n:
            raise ValueError('c: the spike height R = {:.2f} is not smaller '
                             'than n = {}. Decrease c or increase delta.'
                             .format(self.spike_height, n))

        self.spike = int(np.ceil(n / self.spike_height))

        theta = np.zeros(n)
        last = min(self.spike - 1, n)
        j = np.arange(1, last + 1)
        theta[:last] = self.spike_height / (j * n)
        if self.spike <= n:
            theta[self.spike - 1] = (self.spike_height / n *
                                     np.log(self.spike_height / self.delta))

        unnormalized = IdealSoliton(n).pmf + theta
        self.beta = unnormalized.sum()
        super(RobustSoliton, self).__init__(unnormalized / self.beta)

    def _get_extra_repr(self):
        return dict(c='{:.2f}'.format(self.c),
                    delta='{:.2f}'.format(self.delta),
                    spike=self.spike)
