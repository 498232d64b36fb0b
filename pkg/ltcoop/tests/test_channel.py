# -*- coding: utf-8 -*-

"""
Test suite for the channel module of the ltcoop package.

"""

import unittest

import numpy as np

from ltcoop import channel, wire


class TestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls._packet = bytes(1000)

    @classmethod
    def tearDownClass(cls):
        pass

    def test_link_params(self):
        params = channel.LinkParams(0, 1000, 5, seed=1)
        self.assertIsInstance(params.loss_rate, float)
        self.assertEqual(params.rate_limit, 1000.)
        self.assertRaises(ValueError, channel.LinkParams, -0.1)
        self.assertRaises(ValueError, channel.LinkParams, 1.1)
        self.assertRaises(ValueError, channel.LinkParams, 0, 0)
        self.assertRaises(ValueError, channel.LinkParams, 0, 1e3, -1)
        self.assertEqual(params._replace(seed=2).seed, 2)

    def test_link_timing(self):
        link = channel.Link(channel.LinkParams(0, rate_limit=1e4, latency=10))
        self.assertTrue(link.is_idle(0))
        # Back-to-back packets are serialized.
        dues = [link.send(self._packet, now=0) for _ in range(3)]
        np.testing.assert_allclose(dues, [0.11, 0.21, 0.31])
        self.assertFalse(link.is_idle(0.2))
        self.assertTrue(link.is_idle(0.3))
        self.assertAlmostEqual(link.idle_at, 0.3)
        self.assertAlmostEqual(link.next_delivery(), 0.11)
        self.assertEqual(len(link.poll(0.1)), 0)
        self.assertEqual(len(link.poll(0.25)), 2)
        self.assertEqual(len(link.poll(1)), 1)
        self.assertIsNone(link.next_delivery())
        # An idle link starts at the current time.
        self.assertAlmostEqual(link.send(self._packet, now=2), 2.11)

    def test_link_mtu(self):
        link = channel.Link(channel.LinkParams())
        link.send(bytes(wire.MTU), 0)
        self.assertRaises(wire.MTUExceededError, link.send,
                          bytes(wire.MTU + 1), 0)
        self.assertEqual(link.stats.sent, 1)

    def test_link_loss(self):
        p, count = 0.1, 20000
        link = channel.Link(channel.LinkParams(p, rate_limit=1e9, seed=42))
        for i in range(count):
            link.send(self._packet, now=i)
        stats = link.stats
        sigma = np.sqrt(count * p * (1 - p))
        self.assertLess(abs(stats.dropped - count * p), 4 * sigma)
        # Dropped packets occupy the link too.
        self.assertAlmostEqual(link.idle_at, count - 1 + 1e-6)

    def test_link_seeded(self):
        def drops(seed):
            link = channel.Link(channel.LinkParams(0.3, 1e6, seed=seed))
            return [link.send(self._packet, now=i) is None
                    for i in range(200)]
        self.assertEqual(drops(7), drops(7))
        self.assertNotEqual(drops(7), drops(8))

    def test_link_extremes(self):
        link = channel.Link(channel.LinkParams(1, 1e6, seed=0))
        self.assertTrue(all(link.send(self._packet, i) is None
                            for i in range(100)))
        self.assertEqual(link.poll(1e3), [])
        link = channel.Link(channel.LinkParams(0, 1e6, seed=0))
        self.assertTrue(all(link.send(self._packet, i) is not None
                            for i in range(100)))

    def test_link_conservation(self):
        link = channel.Link(channel.LinkParams(0.2, 1e4, 1, seed=3))
        rs = np.random.default_rng(0)
        now = 0.
        for _ in range(500):
            now += rs.exponential(0.05)
            link.send(bytes(int(rs.integers(1, wire.MTU))), now)
            link.poll(now)
            stats = link.stats
            self.assertEqual(stats.sent, stats.delivered + stats.dropped +
                             stats.in_flight)
        self.assertGreater(link.stats.in_flight, 0)
        dropped = link.stats.dropped
        cleared = link.clear(now)
        stats = link.stats
        self.assertEqual(stats.in_flight, 0)
        self.assertEqual(stats.dropped, dropped + cleared)
        self.assertEqual(stats.sent, stats.delivered + stats.dropped)

    def test_link_order(self):
        link = channel.Link(channel.LinkParams(0, 1e5, 3))
        sent = [bytes([i]) * (i + 1) for i in range(50)]
        for i, packet in enumerate(sent):
            link.send(packet, now=i * 1e-4)
        self.assertEqual(link.poll(10), sent)

    def test_loopback(self):
        with channel.LoopbackTransport() as a, \
                channel.LoopbackTransport() as b:
            self.assertRaises(ValueError, a.send, b'x')
            a.connect(b.address)
            for i in range(10):
                self.assertIsNotNone(a.send(bytes([i]) * 100))
            received = []
            while len(received) < 10:
                data = b.recv(timeout=1)
                self.assertIsNotNone(data)
                received.append(data)
            self.assertEqual(sorted(received),
                             [bytes([i]) * 100 for i in range(10)])
            self.assertEqual(b.stats.delivered, 10)
            self.assertEqual(b.stats.bytes_delivered, 1000)
            self.assertEqual(a.stats.sent, 10)
            self.assertIsNone(b.recv())
            self.assertRaises(wire.MTUExceededError, a.send,
                              bytes(wire.MTU + 1))

    def test_loopback_loss_and_pacing(self):
        with channel.LoopbackTransport(loss_rate=1, seed=0) as a, \
                channel.LoopbackTransport() as b:
            a.connect(b.address)
            self.assertIsNone(a.send(b'x'))
            self.assertEqual(a.stats.dropped, 1)
            self.assertIsNone(b.recv(timeout=0.05))
        with channel.LoopbackTransport(rate_limit=1e4) as a, \
                channel.LoopbackTransport() as b:
            a.connect(b.address)
            first = a.send(self._packet)
            last = [a.send(self._packet) for _ in range(3)][-1]
            # Four packets of 1000 bytes at 10 kB/s.
            self.assertGreaterEqual(last - first, 0.29)
            self.assertFalse(a.is_idle())
            received = [b.recv(timeout=1) for _ in range(4)]
            self.assertNotIn(None, received)
            self.assertEqual(b.poll(), [])

    def test_bind_error(self):
        with channel.LoopbackTransport() as a:
            self.assertRaises(channel.BindError, channel.LoopbackTransport,
                              a.address[1])
        self.assertIsInstance(channel.BindError(), OSError)


suite = unittest.TestLoader().loadTestsFromTestCase(TestCase)
