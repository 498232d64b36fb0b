# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop.codes` module implements Luby transform (LT) codes: degree
distributions, a rateless encoder and a peeling decoder, as well as the
segmentation of a message into fixed-size source blocks. See
:cite:`luby2002lt` and :cite:`mackay2005fountain`.

Degree distributions
--------------------

The :class:`DegreeDistribution` base class wraps any probability mass function
over the degrees ``1..n``:

.. autosummary::

    DegreeDistribution.degree
    DegreeDistribution.sample
    DegreeDistribution.mean

Derived classes implement the soliton distributions.

.. autosummary::

    IdealSoliton
    RobustSoliton

Encoding
--------

An encoded symbol is identified by its block and a 64-bit seed. The degree and
the neighbors are derived from the seed by a deterministic stream, the same on
both ends of the channel.

.. autosummary::

    SplitMix64
    neighbors_from_seed
    EncodedSymbol
    Encoder
    encode_symbol

Decoding
--------

.. autosummary::

    Decoder
    Decoder.push
    Decoder.push_equation
    Decoder.overhead
    Decoder.source_bytes
    Progress
    InvalidSymbolError
    NotReadyError

Segmentation
------------

.. autosummary::

    CodingParams
    SourceBlock
    Manifest
    segment_message
    reassemble

"""

from ltcoop import utils as _utils

_DISTRIBUTIONS = [
    'DegreeDistribution',
    'IdealSoliton',
    'RobustSoliton',
]
_CODEC = [
    'SourceBlock',
    'Encoder',
    'Decoder',
    'CodingParams',
]

__all__ = _DISTRIBUTIONS + _CODEC

_utils.import_classes(_DISTRIBUTIONS, 'codes', 'codes')
_utils.import_classes(_CODEC, 'codes', 'codes')
_utils.import_functions(['SplitMix64', 'neighbors_from_seed'],
                        'codes.prng', 'codes')
_utils.import_functions(['EncodedSymbol', 'encode_symbol'],
                        'codes.encoder', 'codes')
_utils.import_functions(['Progress', 'InvalidSymbolError', 'NotReadyError'],
                        'codes.decoder', 'codes')
_utils.import_functions(['Manifest', 'segment_message', 'reassemble'],
                        'codes.segmentation', 'codes')

__all__ += [
    'SplitMix64',
    'neighbors_from_seed',
    'EncodedSymbol',
    'encode_symbol',
    'Progress',
    'InvalidSymbolError',
    'NotReadyError',
    'Manifest',
    'segment_message',
    'reassemble',
]
