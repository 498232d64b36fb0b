# -*- coding: utf-8 -*-

"""
Test suite for the codes module of the ltcoop package.

"""

import math
import unittest

import numpy as np
from scipy import stats

from ltcoop import codes, utils


def _gf2_solve(n, equations):
    r"""Rank and, if full, solution of XOR equations (bitmask, value)."""
    basis = dict()
    for mask, value in equations:
        while mask:
            top = mask.bit_length() - 1
            if top not in basis:
                basis[top] = (mask, value)
                break
            m, v = basis[top]
            mask ^= m
            value ^= v
    if len(basis) < n:
        return len(basis), None
    solution = dict()
    for top in range(n):
        mask, value = basis[top]
        for bit in range(top):
            if mask >> bit & 1:
                value ^= solution[bit]
        solution[top] = value
    return n, solution


class TestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls._rs = utils.random_state(42)

    @classmethod
    def tearDownClass(cls):
        pass

    def test_degree_distribution(self):
        dist = codes.DegreeDistribution([0.5, 0.5])
        self.assertEqual(dist.degree(0.), 1)
        self.assertEqual(dist.degree(0.5), 2)
        self.assertEqual(dist.degree(1 - 2**-53), 2)
        self.assertEqual(dist.mean(), 1.5)
        np.testing.assert_equal(dist.cdf, [0.5, 1.])
        self.assertRaises(ValueError, codes.DegreeDistribution, [0.5, 0.6])
        self.assertRaises(ValueError, codes.DegreeDistribution, [1.5, -0.5])
        self.assertRaises(ValueError, codes.DegreeDistribution, [])
        self.assertRaises(ValueError, codes.DegreeDistribution, [[1.]])
        self.assertRaises(ValueError, codes.DegreeDistribution, [np.nan, 1])
        with self.assertRaises(ValueError):
            dist.pmf[0] = 1

    def test_sample(self):
        dist = codes.RobustSoliton(32)
        degrees = dist.sample(1000, seed=1)
        self.assertEqual(degrees.shape, (1000,))
        self.assertTrue(np.all((degrees >= 1) & (degrees <= 32)))
        np.testing.assert_equal(degrees, dist.sample(1000, seed=1))
        self.assertIsInstance(dist.sample(seed=1), int)

    def test_ideal_soliton(self):
        dist = codes.IdealSoliton(5)
        np.testing.assert_allclose(dist.pmf, [1/5, 1/2, 1/6, 1/12, 1/20])
        np.testing.assert_equal(codes.IdealSoliton(1).pmf, [1.])
        self.assertRaises(ValueError, codes.IdealSoliton, 0)
        self.assertRaises(ValueError, codes.IdealSoliton, 2.5)

    def test_soliton_normalization(self):
        for n in range(1, 2049):
            ideal = codes.IdealSoliton(n)
            robust = codes.RobustSoliton(n)
            self.assertAlmostEqual(ideal.pmf.sum(), 1, delta=1e-9)
            self.assertAlmostEqual(robust.pmf.sum(), 1, delta=1e-9)
            self.assertEqual(robust.cdf[-1], 1)
            self.assertTrue(np.all(robust.pmf >= 0))

    def test_robust_soliton_formula(self):
        n, c, delta = 10, 0.1, 0.5
        R = c * math.sqrt(n) * math.log(n / delta)
        spike = int(math.ceil(n / R))
        rho = [1 / n] + [1 / (d * (d - 1)) for d in range(2, n + 1)]
        tau = []
        for d in range(1, n + 1):
            if d < spike:
                tau.append(R / (d * n))
            elif d == spike:
                tau.append(R * math.log(R / delta) / n)
            else:
                tau.append(0)
        beta = sum(rho) + sum(tau)
        expected = [(r + t) / beta for r, t in zip(rho, tau)]

        dist = codes.RobustSoliton(n, c, delta)
        np.testing.assert_allclose(dist.pmf, expected, rtol=0, atol=1e-12)
        self.assertEqual(dist.spike, spike)
        self.assertAlmostEqual(dist.spike_height, R, places=12)
        self.assertAlmostEqual(dist.beta, beta, places=12)

    def test_robust_soliton_invalid(self):
        self.assertRaises(ValueError, codes.RobustSoliton, 64, c=0)
        self.assertRaises(ValueError, codes.RobustSoliton, 64, delta=0)
        self.assertRaises(ValueError, codes.RobustSoliton, 64, delta=1)
        # Spike height 10 * 4 * log(32) is larger than n.
        self.assertRaises(ValueError, codes.RobustSoliton, 16, c=10)

    def test_robust_soliton_spike_outside(self):
        # For n = 1 the spike position exceeds n: only the first term stays.
        dist = codes.RobustSoliton(1)
        self.assertGreater(dist.spike, 1)
        np.testing.assert_equal(dist.pmf, [1.])

    def test_splitmix(self):
        stream = codes.SplitMix64(0)
        self.assertEqual(stream.next_uint64(), 0xe220a8397b1dcdaf)
        a, b = codes.SplitMix64(2**64 - 1), codes.SplitMix64(2**64 - 1)
        self.assertEqual([a.next_uint64() for _ in range(5)],
                         [b.next_uint64() for _ in range(5)])
        values = [codes.SplitMix64(s).random() for s in range(1000)]
        self.assertTrue(all(0 <= v < 1 for v in values))
        values = [codes.SplitMix64(s).below(7) for s in range(1000)]
        self.assertEqual(set(values), set(range(7)))
        self.assertRaises(ValueError, codes.SplitMix64, -1)
        self.assertRaises(ValueError, codes.SplitMix64, 2**64)

    def test_neighbors_from_seed(self):
        n = 64
        dist = codes.RobustSoliton(n)
        for seed in range(500):
            neighbors = codes.neighbors_from_seed(seed, n, dist)
            self.assertGreaterEqual(len(neighbors), 1)
            self.assertEqual(len(set(neighbors)), len(neighbors))
            self.assertEqual(list(neighbors), sorted(neighbors))
            self.assertTrue(all(0 <= k < n for k in neighbors))
            self.assertEqual(neighbors,
                             codes.neighbors_from_seed(seed, n, dist))
        # Degree n covers the whole block.
        full = codes.DegreeDistribution([0, 0, 0, 1])
        self.assertEqual(codes.neighbors_from_seed(3, 4, full), (0, 1, 2, 3))
        self.assertRaises(ValueError, codes.neighbors_from_seed, 0, 0, dist)
        self.assertRaises(ValueError, codes.neighbors_from_seed, 0, 32, dist)

    def test_neighbors_uniform(self):
        # Every source symbol is equally likely to be a neighbor.
        n = 16
        dist = codes.DegreeDistribution(np.eye(n)[2])
        counts = np.zeros(n)
        for seed in range(8000):
            counts[list(codes.neighbors_from_seed(seed, n, dist))] += 1
        _, p = stats.chisquare(counts)
        self.assertGreater(p, 1e-3)

    def test_degree_chi_square(self):
        # Degrees derived from the seeds follow the distribution.
        n, trials = 64, 100000
        dist = codes.RobustSoliton(n)
        degrees = [len(codes.neighbors_from_seed(seed, n, dist))
                   for seed in range(trials)]
        observed = np.bincount(degrees, minlength=n + 1)[1:].astype(float)
        expected = dist.pmf * trials
        keep = expected >= 5
        observed = np.append(observed[keep], observed[~keep].sum())
        expected = np.append(expected[keep], expected[~keep].sum())
        if expected[-1] == 0:
            observed, expected = observed[:-1], expected[:-1]
        _, p = stats.chisquare(observed, expected)
        self.assertGreater(p, 1e-3)

    def test_source_block(self):
        block = codes.SourceBlock(3, [b'ab', b'cd'])
        self.assertEqual(block.n, 2)
        self.assertEqual(block.symbol_size, 2)
        self.assertEqual(block.symbol(1), b'cd')
        self.assertEqual(block.tobytes(), b'abcd')
        self.assertEqual(block, codes.SourceBlock(3, np.array(
            [[97, 98], [99, 100]], dtype=np.uint8)))
        self.assertNotEqual(block, codes.SourceBlock(4, [b'ab', b'cd']))
        padded = codes.SourceBlock.from_bytes(0, b'abc', 2, 2)
        self.assertEqual(padded.tobytes(), b'abc\x00')
        self.assertRaises(ValueError, codes.SourceBlock, 0, [b'a', b'bc'])
        self.assertRaises(ValueError, codes.SourceBlock, -1, [b'a'])
        self.assertRaises(ValueError, codes.SourceBlock, 0, np.zeros(3))
        self.assertRaises(ValueError, codes.SourceBlock.from_bytes, 0,
                          b'abcde', 2, 2)

    def test_encoder(self):
        n, size = 32, 16
        symbols = self._rs.integers(0, 256, (n, size), dtype=np.uint8)
        block = codes.SourceBlock(5, symbols)
        dist = codes.RobustSoliton(n)
        encoder = codes.Encoder(block, dist)
        for seed in range(100):
            symbol = encoder.encode(seed)
            self.assertEqual(symbol.block_id, 5)
            self.assertEqual(symbol.seed, seed)
            expected = np.zeros(size, dtype=np.uint8)
            for k in codes.neighbors_from_seed(seed, n, dist):
                expected ^= symbols[k]
            self.assertEqual(symbol.payload, expected.tobytes())
            self.assertEqual(symbol, codes.encode_symbol(block, seed, dist))
        self.assertRaises(ValueError, codes.Encoder, block,
                          codes.RobustSoliton(16))

    def test_roundtrip(self):
        for n, size in [(1, 8), (2, 3), (32, 64), (64, 1024), (256, 128)]:
            for kind in ['robust', 'ideal']:
                symbols = self._rs.integers(0, 256, (n, size), dtype=np.uint8)
                block = codes.SourceBlock(0, symbols)
                dist = codes.CodingParams(n, size).distribution(kind)
                decoder = codes.Decoder(n, size, dist)
                for symbol in codes.Encoder(block, dist).stream(1000):
                    progress = decoder.push(symbol)
                    if progress.complete:
                        break
                self.assertEqual(decoder.source_bytes(), block.tobytes())
                self.assertGreaterEqual(decoder.overhead(), 0)
                self.assertEqual(decoder.recovered_count, n)

    def test_decoder_errors(self):
        dist = codes.RobustSoliton(4)
        decoder = codes.Decoder(4, 2, dist, block_id=1)
        block = codes.SourceBlock(0, [b'ab', b'cd', b'ef', b'gh'])
        symbol = codes.encode_symbol(block, 0, dist)
        self.assertRaises(codes.InvalidSymbolError, decoder.push, symbol)
        symbol = codes.EncodedSymbol(1, 0, b'abc')
        self.assertRaises(codes.InvalidSymbolError, decoder.push, symbol)
        self.assertRaises(codes.InvalidSymbolError, decoder.push_equation,
                          [4], b'ab')
        self.assertRaises(codes.InvalidSymbolError, decoder.push_equation,
                          [], b'ab')
        self.assertRaises(codes.NotReadyError, decoder.overhead)
        self.assertRaises(codes.NotReadyError, decoder.source_bytes)
        self.assertEqual(decoder.received_count, 0)
        self.assertRaises(ValueError, codes.Decoder, 0, 2)
        self.assertRaises(ValueError, codes.Decoder, 4, 0)
        self.assertRaises(ValueError, codes.Decoder, 8, 2, dist)
        self.assertIsInstance(codes.InvalidSymbolError('x'), ValueError)
        self.assertIsInstance(codes.NotReadyError('x'), RuntimeError)

    def test_decoder_redundant(self):
        decoder = codes.Decoder(2, 1)
        decoder.push_equation([0], b'\x01')
        decoder.push_equation([0], b'\x01')
        self.assertEqual(decoder.redundant, 1)
        self.assertEqual(decoder.pending_count, 0)
        decoder.push_equation([0, 1], b'\x03')
        self.assertTrue(decoder.complete)
        self.assertEqual(decoder.overhead(), 0.5)
        decoder.push_equation([1], b'\x02')
        self.assertEqual(decoder.received_count, 4)
        self.assertEqual(decoder.redundant, 2)
        # The overhead is fixed at completion.
        self.assertEqual(decoder.overhead(), 0.5)
        self.assertEqual(decoder.recovered, {0: b'\x01', 1: b'\x02'})

    def test_peeling_cascade(self):
        # Degree-2 symbols only resolve once a degree-1 symbol arrives.
        decoder = codes.Decoder(3, 1)
        decoder.push_equation([1, 2], b'\x06')
        decoder.push_equation([0, 1], b'\x03')
        self.assertEqual(decoder.recovered_count, 0)
        self.assertEqual(decoder.pending_count, 2)
        progress = decoder.push_equation([2], b'\x04')
        self.assertEqual(progress, codes.Progress(3, True))
        self.assertEqual(decoder.source_bytes(), b'\x01\x02\x04')

    def test_peeling_against_elimination(self):
        rs = utils.random_state(7)
        for _ in range(10000):
            n = int(rs.integers(1, 9))
            sources = [int(v) for v in rs.integers(0, 2**16, n)]
            decoder = codes.Decoder(n, 2)
            equations = []
            for _ in range(int(rs.integers(1, 2 * n + 1))):
                mask = int(rs.integers(1, 2**n))
                neighbors = [k for k in range(n) if mask >> k & 1]
                value = 0
                for k in neighbors:
                    value ^= sources[k]
                equations.append((mask, value))
                decoder.push_equation(neighbors, value.to_bytes(2, 'big'))
            rank, solution = _gf2_solve(n, equations)
            if decoder.complete:
                self.assertEqual(rank, n)
                recovered = decoder.recovered
                for k in range(n):
                    self.assertEqual(recovered[k],
                                     solution[k].to_bytes(2, 'big'))
                    self.assertEqual(solution[k], sources[k])
            if rank < n:
                self.assertFalse(decoder.complete)

    def test_segmentation(self):
        data = bytes(range(256)) * 10 + b'tail'
        blocks, manifest = codes.segment_message(data, 4, 100)
        self.assertEqual(manifest, codes.Manifest(len(data), 7, 4, 100))
        self.assertEqual([b.block_id for b in blocks], list(range(7)))
        self.assertEqual(codes.reassemble(blocks, manifest), data)
        as_dict = {b.block_id: b.tobytes() for b in reversed(blocks)}
        self.assertEqual(codes.reassemble(as_dict, manifest), data)
        blocks, manifest = codes.segment_message(bytes(800), 4, 100)
        self.assertEqual(manifest.block_count, 2)
        self.assertRaises(ValueError, codes.segment_message, b'', 4, 100)
        self.assertRaises(ValueError, codes.segment_message, b'x', 0, 100)
        self.assertRaises(ValueError, codes.segment_message, b'x', 4, 0)

    def test_segmentation_sizes(self):
        # Real file sizes at the default coding parameters.
        data = b'\xff' * 9877389
        blocks, manifest = codes.segment_message(data, 64, 1024)
        self.assertEqual(manifest.block_count, 151)
        self.assertEqual(len(blocks), 151)
        # The last block is padded with 151 * 65536 - 9877389 zeros.
        self.assertEqual(blocks[-1].tobytes(),
                         b'\xff' * (65536 - 18547) + bytes(18547))
        self.assertEqual(codes.reassemble(blocks, manifest), data)
        data = bytes(range(256)) * 256
        blocks, manifest = codes.segment_message(data, 64, 1024)
        self.assertEqual(manifest, codes.Manifest(65536, 1, 64, 1024))
        self.assertEqual(blocks[0].tobytes(), data)
        self.assertEqual(codes.reassemble(blocks, manifest), data)

    def test_coding_params(self):
        params = codes.CodingParams(16, 128)
        self.assertEqual(params.block_size, 2048)
        self.assertIsInstance(params.distribution(), codes.RobustSoliton)
        self.assertIsInstance(params.distribution('ideal'),
                              codes.IdealSoliton)
        self.assertRaises(ValueError, params.distribution, 'uniform')
        self.assertRaises(ValueError, codes.CodingParams, 0)
        self.assertRaises(ValueError, codes.CodingParams, 16, 0)


suite = unittest.TestLoader().loadTestsFromTestCase(TestCase)
