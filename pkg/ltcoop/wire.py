# -*- coding: utf-8 -*-

r"""
The :mod:`ltcoop.wire` module serializes the packets of the data channel and
the messages of the control channel. All multi-byte integers are big-endian.
The byte layouts are documented in the protocol reference.

Data channel
------------

A data packet carries one encoded symbol behind a fixed 25-byte header. The
whole packet never exceeds the 1450-byte application payload budget.

.. autosummary::

    DataPacket
    encode_data_packet
    decode_data_packet
    AckPacket
    encode_ack
    decode_ack

Control channel
---------------

Control messages are framed by a 2-byte length prefix followed by a tag byte
that determines the body.

.. autosummary::

    Register
    HelpRequest
    GroupAssign
    Ready
    Terminate
    BlockDone
    encode_ctrl
    decode_ctrl
    split_frames

Errors
------

.. autosummary::

    MTUExceededError
    MalformedPacketError
    MalformedMessageError

"""

from __future__ import division

import struct
from collections import namedtuple

from ltcoop import codes


MTU = 1450
MAGIC = b'LTCO'
ACK_MAGIC = b'LTCA'
# Version 1 fixes the seed to neighbors mapping of codes.neighbors_from_seed.
VERSION = 1

_HEADER = struct.Struct('>4sBIIHHQ')
HEADER_SIZE = _HEADER.size
MAX_SYMBOL_SIZE = MTU - HEADER_SIZE

ROLE_AU = 0
ROLE_RU = 1


class MTUExceededError(ValueError):
    """A packet would exceed the 1450-byte budget."""


class MalformedPacketError(ValueError):
    """Bytes that are not a valid data or acknowledgement packet."""


class MalformedMessageError(ValueError):
    """Bytes that are not a valid control frame."""


class DataPacket(namedtuple('DataPacket', ['block_id', 'block_count', 'n',
                                           'seed', 'payload', 'version'])):
    r"""Data packet: one encoded symbol and what is needed to decode it.

    Parameters
    ----------
    block_id : int
        Block of the symbol, smaller than ``block_count``.
    block_count : int
        Number of blocks of the file.
    n : int
        Source symbols per block.
    seed : int
        64-bit seed of the symbol.
    payload : bytes
        XOR payload, ``symbol_size`` bytes.
    version : int
        Format version (default is the current :data:`VERSION`).

    Examples
    --------
    >>> packet = wire.DataPacket(0, 1, 64, 2**64 - 1, bytes(1024))
    >>> packet.symbol_size
    1024
    >>> len(wire.encode_data_packet(packet))
    1049
    >>> wire.decode_data_packet(wire.encode_data_packet(packet)) == packet
    True

    """

    __slots__ = ()

    def __new__(cls, block_id, block_count, n, seed, payload, version=VERSION):
        return super(DataPacket, cls).__new__(
            cls, block_id, block_count, n, seed, bytes(payload), version)

    @property
    def symbol_size(self):
        return len(self.payload)

    @classmethod
    def from_symbol(cls, symbol, block_count, n):
        return cls(symbol.block_id, block_count, n, symbol.seed,
                   symbol.payload)

    def symbol(self):
        """The carried :class:`ltcoop.codes.EncodedSymbol`."""
        return codes.EncodedSymbol(self.block_id, self.seed, self.payload)


def encode_data_packet(packet):
    r"""Serialize a :class:`DataPacket`.

    Raises
    ------
    MTUExceededError
        If the payload is larger than 1425 bytes.

    Examples
    --------
    >>> len(wire.encode_data_packet(wire.DataPacket(0, 1, 1, 0, bytes(1425))))
    1450
    >>> wire.encode_data_packet(wire.DataPacket(0, 1, 1, 0, bytes(1426)))
    Traceback (most recent call last):
      ...
    ltcoop.wire.MTUExceededError: DataPacket: a payload of 1426 bytes exceeds the 1425 bytes left by the header.

    """
    size = len(packet.payload)
    if size > MAX_SYMBOL_SIZE:
        raise MTUExceededError('DataPacket: a payload of {} bytes exceeds the '
                               '{} bytes left by the header.'.format(
                                   size, MAX_SYMBOL_SIZE))
    if size == 0:
        raise ValueError('DataPacket: the payload is empty.')
    if packet.n < 1:
        raise ValueError('DataPacket: n must be positive, got {}.'.format(
            packet.n))
    if packet.version != VERSION:
        raise ValueError('DataPacket: unsupported version {}.'.format(
            packet.version))
    if not 0 <= packet.block_id < packet.block_count:
        raise ValueError('DataPacket: block_id {} not in [0, {}).'.format(
            packet.block_id, packet.block_count))
    try:
        header = _HEADER.pack(MAGIC, packet.version, packet.block_id,
                              packet.block_count, packet.n, size, packet.seed)
    except struct.error as e:
        raise ValueError('DataPacket: a field is out of range ({}).'.format(e))
    return header + packet.payload


def decode_data_packet(data):
    r"""Parse a :class:`DataPacket`.

    Raises
    ------
    MalformedPacketError
        On a short buffer, a bad magic, version or length, or inconsistent
        fields.

    Examples
    --------
    >>> wire.decode_data_packet(b'LTCO')
    Traceback (most recent call last):
      ...
    ltcoop.wire.MalformedPacketError: DataPacket: 4 bytes, shorter than the 25-byte header.

    """
    data = bytes(data)
    if len(data) < HEADER_SIZE:
        raise MalformedPacketError('DataPacket: {} bytes, shorter than the '
                                   '{}-byte header.'.format(len(data),
                                                            HEADER_SIZE))
    magic, version, block_id, block_count, n, size, seed = \
        _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise MalformedPacketError('DataPacket: bad magic {!r}.'.format(magic))
    if version != VERSION:
        raise MalformedPacketError('DataPacket: unsupported version {}.'
                                   .format(version))
    if len(data) != HEADER_SIZE + size:
        raise MalformedPacketError('DataPacket: {} bytes, the header '
                                   'announces {}.'.format(
                                       len(data), HEADER_SIZE + size))
    if size == 0 or n == 0:
        raise MalformedPacketError('DataPacket: n and symbol_size must be '
                                   'positive.')
    if block_id >= block_count:
        raise MalformedPacketError('DataPacket: block_id {} not in [0, {}).'
                                   .format(block_id, block_count))
    return DataPacket(block_id, block_count, n, seed, data[HEADER_SIZE:],
                      version)


AckPacket = namedtuple('AckPacket', ['path_id', 'ack'])
AckPacket.__doc__ = r"""Cumulative acknowledgement of the ARQ baseline.

``ack`` is the next sequence number expected on path ``path_id``.
"""

_ACK = struct.Struct('>4sBHI')


def encode_ack(packet):
    r"""Serialize an :class:`AckPacket`.

    Examples
    --------
    >>> wire.decode_ack(wire.encode_ack(wire.AckPacket(2, 17)))
    AckPacket(path_id=2, ack=17)

    """
    try:
        return _ACK.pack(ACK_MAGIC, VERSION, packet.path_id, packet.ack)
    except struct.error as e:
        raise ValueError('AckPacket: a field is out of range ({}).'.format(e))


def decode_ack(data):
    data = bytes(data)
    if len(data) != _ACK.size:
        raise MalformedPacketError('AckPacket: {} bytes instead of {}.'.format(
            len(data), _ACK.size))
    magic, version, path_id, ack = _ACK.unpack(data)
    if magic != ACK_MAGIC or version != VERSION:
        raise MalformedPacketError('AckPacket: bad magic or version.')
    return AckPacket(path_id, ack)


class Register(namedtuple('Register', ['client_id', 'location', 'battery'])):
    r"""Periodic registration of a client: location (lat, lon) and battery.

    Examples
    --------
    >>> msg = wire.Register(7, [22.3, 114.2], 80)
    >>> msg
    Register(client_id=7, location=(22.3, 114.2), battery=80)
    >>> wire.decode_ctrl(wire.encode_ctrl(msg)) == msg
    True

    """

    __slots__ = ()

    def __new__(cls, client_id, location, battery):
        lat, lon = location
        return super(Register, cls).__new__(
            cls, client_id, (float(lat), float(lon)), battery)


HelpRequest = namedtuple('HelpRequest', ['client_id', 'file_id'])
HelpRequest.__doc__ = """A requesting user asks for a cooperative download."""

Ready = namedtuple('Ready', ['client_id'])
Ready.__doc__ = """A group member is ready to receive."""

Terminate = namedtuple('Terminate', ['client_id', 'file_id'])
Terminate.__doc__ = """The requesting user decoded the whole file."""

BlockDone = namedtuple('BlockDone', ['client_id', 'file_id', 'block_id'])
BlockDone.__doc__ = """The requesting user decoded a block."""


class GroupAssign(namedtuple('GroupAssign', ['ssid', 'role', 'coding',
                                             'peers', 'file_id',
                                             'file_size'])):
    r"""Group formation: SSID, role, coding parameters and peers.

    Parameters
    ----------
    ssid : str
        Randomly generated network name of the group.
    role : int
        :data:`ROLE_AU` or :data:`ROLE_RU`.
    coding : :class:`ltcoop.codes.CodingParams`
    peers : list of int
        Client ids of the other members.
    file_id : int
    file_size : int
        Bytes of the file, for the requesting user to truncate the padding.

    Examples
    --------
    >>> msg = wire.GroupAssign('ltc-4f2a', wire.ROLE_RU, codes.CodingParams(),
    ...                        [1, 2, 3, 4, 5], file_id=9, file_size=10**6)
    >>> msg.peers
    (1, 2, 3, 4, 5)
    >>> wire.decode_ctrl(wire.encode_ctrl(msg)) == msg
    True

    """

    __slots__ = ()

    def __new__(cls, ssid, role, coding, peers, file_id=0, file_size=0):
        return super(GroupAssign, cls).__new__(
            cls, ssid, role, codes.CodingParams(*coding), tuple(peers),
            file_id, file_size)


def _pack_register(msg):
    if not 0 <= msg.battery <= 100:
        raise ValueError('Register: battery must be a percentage, got {}.'
                         .format(msg.battery))
    return struct.pack('>IddB', msg.client_id, msg.location[0],
                       msg.location[1], msg.battery)


def _unpack_register(body):
    client_id, lat, lon, battery = struct.unpack('>IddB', body)
    if battery > 100:
        raise ValueError('Register: battery {} above 100%.'.format(battery))
    return Register(client_id, (lat, lon), battery)


def _pack_group(msg):
    ssid = msg.ssid.encode('utf-8')
    if msg.role not in (ROLE_AU, ROLE_RU):
        raise ValueError('GroupAssign: unknown role {}.'.format(msg.role))
    parts = [struct.pack('>B', len(ssid)), ssid,
             struct.pack('>B', msg.role),
             struct.pack('>HHdd', *msg.coding),
             struct.pack('>IQ', msg.file_id, msg.file_size),
             struct.pack('>H', len(msg.peers))]
    parts.extend(struct.pack('>I', peer) for peer in msg.peers)
    return b''.join(parts)


def _unpack_group(body):
    length, = struct.unpack_from('>B', body, 0)
    offset = 1 + length
    ssid = body[1:offset].decode('utf-8')
    if len(ssid.encode('utf-8')) != length:
        raise ValueError('GroupAssign: truncated SSID.')
    role, = struct.unpack_from('>B', body, offset)
    if role not in (ROLE_AU, ROLE_RU):
        raise ValueError('GroupAssign: unknown role {}.'.format(role))
    coding = struct.unpack_from('>HHdd', body, offset + 1)
    file_id, file_size = struct.unpack_from('>IQ', body, offset + 21)
    count, = struct.unpack_from('>H', body, offset + 33)
    offset += 35
    if len(body) != offset + 4 * count:
        raise ValueError('GroupAssign: {} peers announced, {} bytes left.'
                         .format(count, len(body) - offset))
    peers = struct.unpack_from('>{}I'.format(count), body, offset)
    return GroupAssign(ssid, role, coding, peers, file_id, file_size)


def _pair(fmt, cls):
    def pack(msg):
        return struct.pack(fmt, *msg)

    def unpack(body):
        return cls(*struct.unpack(fmt, body))
    return pack, unpack


# tag -> (message class, pack, unpack)
_CODECS = {
    0x01: (Register, _pack_register, _unpack_register),
    0x02: (HelpRequest,) + _pair('>II', HelpRequest),
    0x03: (GroupAssign, _pack_group, _unpack_group),
    0x04: (Ready,) + _pair('>I', Ready),
    0x05: (Terminate,) + _pair('>II', Terminate),
    0x06: (BlockDone,) + _pair('>III', BlockDone),
}
_TAGS = {cls: tag for tag, (cls, _, _) in _CODECS.items()}
_LENGTH = struct.Struct('>H')


def encode_ctrl(msg):
    r"""Serialize a control message into a length-prefixed frame.

    Examples
    --------
    >>> wire.encode_ctrl(wire.Ready(1))
    b'\x00\x05\x04\x00\x00\x00\x01'

    """
    try:
        tag = _TAGS[type(msg)]
    except KeyError:
        raise TypeError('{} is not a control message.'.format(
            type(msg).__name__))
    try:
        body = _CODECS[tag][1](msg)
    except struct.error as e:
        raise ValueError('{}: a field is out of range ({}).'.format(
            type(msg).__name__, e))
    if 1 + len(body) > 0xFFFF:
        raise ValueError('{}: frame of {} bytes is too long.'.format(
            type(msg).__name__, 1 + len(body)))
    return _LENGTH.pack(1 + len(body)) + struct.pack('>B', tag) + body


def decode_ctrl(frame):
    r"""Parse one length-prefixed control frame.

    Raises
    ------
    MalformedMessageError
        On an unknown tag, a length mismatch or an invalid body.

    Examples
    --------
    >>> wire.decode_ctrl(b'\x00\x01\xff')
    Traceback (most recent call last):
      ...
    ltcoop.wire.MalformedMessageError: Control frame: unknown tag 0xff.

    """
    frame = bytes(frame)
    if len(frame) < 3:
        raise MalformedMessageError('Control frame: {} bytes is too short.'
                                    .format(len(frame)))
    length, = _LENGTH.unpack_from(frame)
    if length != len(frame) - 2:
        raise MalformedMessageError('Control frame: length prefix {}, got {} '
                                    'bytes.'.format(length, len(frame) - 2))
    tag = frame[2]
    if tag not in _CODECS:
        raise MalformedMessageError('Control frame: unknown tag {:#04x}.'
                                    .format(tag))
    try:
        return _CODECS[tag][2](frame[3:])
    except (struct.error, UnicodeDecodeError, ValueError, TypeError) as e:
        raise MalformedMessageError('Control frame: invalid {} body ({}).'
                                    .format(_CODECS[tag][0].__name__, e))


def split_frames(buffer):
    r"""Split a byte stream into complete control messages.

    Returns
    -------
    messages : list
        Decoded messages, in stream order.
    rest : bytes
        Trailing bytes of an incomplete frame.

    Raises
    ------
    MalformedMessageError
        On a zero length prefix or a complete frame that does not decode.

    Examples
    --------
    >>> stream = b''.join(wire.encode_ctrl(wire.Ready(i)) for i in [1, 2])
    >>> messages, rest = wire.split_frames(stream[:-1])
    >>> messages, len(rest)
    ([Ready(client_id=1)], 6)

    """
    buffer = bytes(buffer)
    messages = []
    offset = 0
    while len(buffer) - offset >= 2:
        length, = _LENGTH.unpack_from(buffer, offset)
        if length == 0:
            raise MalformedMessageError('Control frame: zero length prefix '
                                        'at offset {}.'.format(offset))
        end = offset + 2 + length
        if end > len(buffer):
            break
        messages.append(decode_ctrl(buffer[offset:end]))
        offset = end
    return messages, buffer[offset:]
