# -*- coding: utf-8 -*-

from __future__ import division

import numpy as np

from ltcoop import utils


class DegreeDistribution(object):
    r"""Base degree distribution class.

    * Instantiate it to use any probability mass function over the degrees.
    * Provide a common interface (and implementation) to the soliton
      distributions.

    Parameters
    ----------
    pmf : array_like
        Probabilities of the degrees :math:`d = 1, \dots, n`. They must be
        non-negative and sum to one (within :math:`10^{-9}`).

    Attributes
    ----------
    n : int
        Number of source symbols, i.e., the largest degree.
    pmf : :class:`numpy.ndarray`
        Probability of degree ``d`` at index ``d - 1``. Read-only.
    cdf : :class:`numpy.ndarray`
        Cumulative distribution, nondecreasing and ending at exactly one.

    Examples
    --------
    >>> dist = codes.DegreeDistribution([0.5, 0.25, 0.25])
    >>> dist
    DegreeDistribution(n=3, mean=1.75)
    >>> dist.degree(0.1), dist.degree(0.6), dist.degree(0.99)
    (1, 2, 3)

    """

    def __init__(self, pmf):

        pmf = np.array(pmf, dtype=float)

        if pmf.ndim != 1 or pmf.size == 0:
            raise ValueError('pmf: must be a non-empty vector.')
        if not np.all(np.isfinite(pmf)):
            raise ValueError('pmf: there is a non-finite probability.')
        if np.any(pmf < 0):
            raise ValueError('pmf: probabilities must be non-negative.')
        if abs(pmf.sum() - 1) > 1e-9:
            raise ValueError('pmf: probabilities sum to {}, not 1.'.format(
                pmf.sum()))

        self.n = pmf.size
        self.pmf = pmf
        self.cdf = np.cumsum(pmf)
        # Inverse-cdf sampling must never fall off the end.
        self.cdf[-1] = 1.
        self.pmf.setflags(write=False)
        self.cdf.setflags(write=False)

    def _get_extra_repr(self):
        return dict(mean='{:.2f}'.format(self.mean()))

    def __repr__(self):
        attrs = {'n': self.n}
        attrs.update(self._get_extra_repr())
        s = ''
        for key, value in attrs.items():
            s += '{}={}, '.format(key, value)
        return '{}({})'.format(self.__class__.__name__, s[:-2])

    def degree(self, u):
        r"""Map a uniform variate to a degree (inverse cdf).

        Parameters
        ----------
        u : float
            A variate in :math:`[0, 1)`.

        Returns
        -------
        degree : int
            The smallest :math:`d` with :math:`\mathrm{cdf}(d) > u`, clamped
            to :attr:`n`.

        """
        degree = int(np.searchsorted(self.cdf, u, side='right')) + 1
        return min(degree, self.n)

    def sample(self, size=None, seed=None):
        r"""Draw degrees at random.

        Parameters
        ----------
        size : int or tuple of ints
            Output shape. A single degree is returned if None.
        seed : int
            Seed for the random number generator (for reproducible draws).

        Returns
        -------
        degrees : int or ndarray

        Examples
        --------
        >>> dist = codes.IdealSoliton(1)
        >>> dist.sample(4, seed=42)
        array([1, 1, 1, 1])

        """
        rs = utils.random_state(seed)
        u = rs.uniform(size=size)
        degrees = np.searchsorted(self.cdf, u, side='right') + 1
        degrees = np.minimum(degrees, self.n)
        if size is None:
            return int(degrees)
        return degrees

    def mean(self):
        r"""Expected degree :math:`\sum_d d \, \mathrm{pmf}(d)`."""
        return float(np.dot(np.arange(1, self.n + 1), self.pmf))
