# -*- coding: utf-8 -*-

from __future__ import division

import numbers

import numpy as np

from .degreedistribution import DegreeDistribution


def _check_n(n):
    if not isinstance(n, numbers.Integral) or n < 1:
        raise ValueError('n: must be a positive integer, got {}.'.format(n))
    return int(n)


class IdealSoliton(DegreeDistribution):
    r"""Ideal soliton distribution.

    The distribution over the degrees of the encoded symbols is

    .. math:: P(1) = \frac{1}{n}, \quad
              P(j) = \frac{1}{j(j-1)}, \ j = 2, \dots, n,

    which sums to one by telescoping. In expectation, the peeling decoder
    releases exactly one source symbol per received symbol. Any fluctuation
    around the expectation stalls the decoder, which is why
    :class:`RobustSoliton` is used in practice.

    Parameters
    ----------
    n : int
        Number of source symbols per block.

    Examples
    --------
    >>> dist = codes.IdealSoliton(4)
    >>> dist
    IdealSoliton(n=4)
    >>> dist.pmf
    array([0.25      , 0.5       , 0.16666667, 0.08333333])
    >>> codes.IdealSoliton(1).pmf
    array([1.])

    """

    def __init__(self, n):
        n = _check_n(n)
        pmf = np.empty(n)
        pmf[0] = 1 / n
        j = np.arange(2, n + 1)
        pmf[1:] = 1 / (j * (j - 1))
        super(IdealSoliton, self).__init__(pmf)

    def _get_extra_repr(self):
        return dict()
