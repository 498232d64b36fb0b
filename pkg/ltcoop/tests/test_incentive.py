# -*- coding: utf-8 -*-

"""
Test suite for the incentive module of the ltcoop package.

"""

import itertools
import unittest

import numpy as np

from ltcoop import incentive, utils


class TestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        rs = utils.random_state(11)
        cls._instances = [[1., 1.], [1., 2., 3.], [10., 1., 1.],
                          [1., 1., 1., 1., 1.]]
        cls._instances += [list(rs.uniform(1, 5, size)) for size in
                           [2, 3, 5, 10, 20]]

    @classmethod
    def tearDownClass(cls):
        pass

    def test_bids(self):
        self.assertEqual(incentive.AuBid(3, 2).unit_cost, 2.)
        self.assertRaises(ValueError, incentive.AuBid, 1, 0)
        self.assertRaises(ValueError, incentive.AuBid, 1, -1)
        self.assertRaises(ValueError, incentive.AuBid, 1, np.inf)
        bids = [incentive.AuBid(7, 1), incentive.AuBid(9, 1)]
        np.testing.assert_allclose(incentive.coefficients(bids),
                                   incentive.coefficients([1, 1]))

    def test_errors(self):
        self.assertRaises(incentive.DegenerateGameError,
                          incentive.compute_equilibrium, [1.], 1)
        self.assertRaises(incentive.DegenerateGameError,
                          incentive.optimal_reward, [], 10)
        self.assertIsInstance(incentive.DegenerateGameError(), ValueError)
        self.assertRaises(incentive.DegenerateGameError,
                          incentive.coefficients, [1, 1, 1], K=[0])
        self.assertRaises(ValueError, incentive.compute_equilibrium,
                          [1, 1], 0)
        self.assertRaises(ValueError, incentive.compute_equilibrium,
                          [1, 0], 1)
        self.assertRaises(ValueError, incentive.optimal_reward, [1, 1], 1)
        self.assertRaises(ValueError, incentive.optimal_reward, [1, 1], 10,
                          tol=0)
        self.assertRaises(ValueError, incentive.GameParams, 0.5, [1, 1])
        self.assertRaises(ValueError, incentive.GameParams, 10, [1, 1],
                          mu0=-1)
        self.assertRaises(incentive.DegenerateGameError,
                          incentive.GameParams, 10, [1])
        self.assertRaises(incentive.UndefinedShareError,
                          incentive.au_utility, [0, 0], 0, 1, [1, 1])
        self.assertIsInstance(incentive.UndefinedShareError(),
                              ZeroDivisionError)
        self.assertRaises(ValueError, incentive.server_utility, [-1, 1], 1,
                          10)
        self.assertRaises(ValueError, incentive.random_costs, 5, 0.5)
        self.assertRaises(ValueError, incentive.monte_carlo, trials=0)

    def test_participants(self):
        self.assertEqual(incentive.compute_equilibrium([1, 1, 1], 1).K,
                         (0, 1, 2))
        # 10 * 2 is not below 1 + 1 + 1.
        self.assertEqual(incentive.compute_equilibrium([1, 1, 1, 10], 1).K,
                         (0, 1, 2))
        self.assertEqual(incentive.compute_equilibrium([1.5, 1, 2], 1).K,
                         (0, 1, 2))
        # Boundary: 3 * 1 is not below 1 + 2.
        self.assertEqual(incentive.compute_equilibrium([1, 3, 2], 1).K,
                         (0, 2))
        T = incentive.coefficients([1, 3, 2])
        self.assertEqual(T[1], 0)
        self.assertTrue(np.all(T[[0, 2]] > 0))
        # Ties are broken by position.
        self.assertEqual(incentive.compute_equilibrium([2, 1, 1, 1], 1).K,
                         (1, 2, 3))

    def test_equilibrium_best_response(self):
        for costs in self._instances:
            for R in [0.5, 4., 100.]:
                profile = incentive.compute_equilibrium(costs, R)
                t = profile.t
                self.assertTrue(np.all(t >= 0))
                self.assertEqual(len(profile.K), np.count_nonzero(t))
                S = t.sum()
                for i, eps in enumerate(costs):
                    others = S - t[i]
                    if i in profile.K:
                        best = np.sqrt(R * others / eps) - others
                        self.assertLess(abs(t[i] - best), 1e-6 * max(1, R))
                    else:
                        # Entering does not pay.
                        self.assertGreaterEqual(eps, R / others - 1e-9)

    def test_equilibrium_perturbation(self):
        for costs in self._instances:
            R = 5.
            t = incentive.compute_equilibrium(costs, R).t
            for i in range(len(costs)):
                base = incentive.au_utility(t, i, R, costs)
                for step in [1e-4, -1e-4]:
                    moved = t.copy()
                    moved[i] += step
                    if moved[i] < 0:
                        continue
                    self.assertLessEqual(
                        incentive.au_utility(moved, i, R, costs), base + 1e-12)

    def test_permutation(self):
        costs = [4., 1., 2.5, 1.5, 3.]
        reference = incentive.optimal_reward(costs, 10)
        for order in itertools.islice(itertools.permutations(range(5)), 30):
            permuted = [costs[i] for i in order]
            outcome = incentive.optimal_reward(permuted, 10)
            self.assertAlmostEqual(outcome.reward, reference.reward, 8)
            self.assertAlmostEqual(outcome.mu, reference.mu, 8)
            np.testing.assert_allclose(outcome.profile.t,
                                       reference.profile.t[list(order)],
                                       atol=1e-8)

    def test_linear_in_reward(self):
        costs = [1., 2., 2.5]
        t1 = incentive.compute_equilibrium(costs, 1).t
        t7 = incentive.compute_equilibrium(costs, 7).t
        np.testing.assert_allclose(t7, 7 * t1)
        np.testing.assert_allclose(t1, incentive.coefficients(costs))

    def _server_curve(self, costs, gamma, rewards):
        T = incentive.coefficients(costs)
        t = np.outer(rewards, T)
        return gamma * np.log1p(np.log1p(t).sum(axis=1)) - rewards

    def test_optimal_reward_grid(self):
        for costs, gamma in [([1, 1], 10), ([1, 2, 3], 5), ([2, 2, 2, 2], 20),
                             (self._instances[-1], 10)]:
            outcome = incentive.optimal_reward(costs, gamma)
            rewards = np.arange(0, 3 * outcome.reward + 1, 1e-4)
            curve = self._server_curve(costs, gamma, rewards)
            self.assertLess(abs(rewards[np.argmax(curve)] - outcome.reward),
                            1e-3)
            self.assertAlmostEqual(outcome.mu, curve.max(), 6)
            self.assertAlmostEqual(outcome.mu, incentive.server_utility(
                outcome.profile, outcome.reward, gamma))

    def test_concavity(self):
        rewards = np.linspace(0, 50, 5001)
        for costs in self._instances:
            curve = self._server_curve(costs, 10, rewards)
            self.assertTrue(np.all(np.diff(curve, 2) <= 1e-12))

    def test_outcome(self):
        outcome = incentive.GameParams(10, [1] * 20).solve()
        # The server gains about 12 with 20 equal bidders.
        self.assertAlmostEqual(outcome.mu, 12.09, delta=0.1)
        self.assertEqual(len(outcome.profile.K), 20)
        self.assertTrue(np.all(outcome.mu_i >= -1e-12))
        self.assertAlmostEqual(outcome.payment, outcome.mu + outcome.reward)
        paid = incentive.optimal_reward([1] * 20, 10, mu0=2.)
        self.assertAlmostEqual(paid.payment, outcome.payment - 2.)
        self.assertAlmostEqual(incentive.ru_payment(outcome, 1.),
                               outcome.payment - 1.)

    def test_no_participation(self):
        outcome = incentive.optimal_reward([50, 50], 1.5)
        self.assertEqual(outcome.reward, 0.)
        self.assertEqual(outcome.mu, 0.)
        self.assertEqual(outcome.profile.K, ())
        np.testing.assert_array_equal(outcome.profile.t, [0, 0])

    def test_random_costs(self):
        costs = incentive.random_costs(20, 3, size=100, seed=1)
        self.assertEqual(costs.shape, (100, 20))
        self.assertTrue(np.all((costs >= 1) & (costs <= 3)))
        self.assertEqual(incentive.random_costs(5, 3).shape, (5,))
        np.testing.assert_array_equal(incentive.random_costs(5, 3, seed=4),
                                      incentive.random_costs(5, 3, seed=4))
        np.testing.assert_array_equal(incentive.random_costs(5, 1), np.ones(5))

    def test_monte_carlo(self):
        tables = incentive.monte_carlo(users=10, eps_max=[1, 3, 5],
                                       bidders=[3, 6, 12], trials=20, seed=2)
        self.assertEqual(list(tables), ['cost_spread', 'participants',
                                        'bidders'])
        spread = tables['cost_spread']
        mu = [row['mu'] for row in spread]
        payment = [row['payment'] for row in spread]
        self.assertTrue(np.all(np.diff(mu) < 0), mu)
        self.assertTrue(np.all(np.diff(payment) < 0), payment)
        # All costs equal to 1: no spread.
        self.assertAlmostEqual(spread[0]['mu_std'], 0)
        groups = tables['participants']
        self.assertEqual(sum(row['trials'] for row in groups), 20)
        self.assertTrue(all(2 <= row['participants'] <= 10 for row in groups))
        mu = [row['mu'] for row in tables['bidders']]
        self.assertTrue(np.all(np.diff(mu) > 0), mu)
        again = incentive.monte_carlo(users=10, eps_max=[1, 3, 5],
                                      bidders=[3, 6, 12], trials=20, seed=2)
        self.assertEqual(again, tables)


suite = unittest.TestLoader().loadTestsFromTestCase(TestCase)
