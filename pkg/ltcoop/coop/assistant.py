# -*- coding: utf-8 -*-

from ltcoop import utils, wire


class Assistant(object):
    r"""Assistant user: relays the symbols it downloads to the requesting user.

    The assistant does not decode: packets are forwarded verbatim on its relay
    link.

    Parameters
    ----------
    client_id : int
    location : (float, float)
    battery : int

    Examples
    --------
    >>> from ltcoop import channel, coop, wire
    >>> au = coop.Assistant(3)
    >>> au.on_group_assign(wire.GroupAssign('ltc-1', wire.ROLE_AU,
    ...                                     codes.CodingParams(), [0]))
    Ready(client_id=3)
    >>> relay = channel.Link(channel.LinkParams(rate_limit=1e6))
    >>> au.forward(b'packet', relay, now=0) is not None
    True
    >>> au.forwarded
    1

    """

    def __init__(self, client_id, location=(0., 0.), battery=100):
        self.logger = utils.build_logger(__name__)
        self.client_id = client_id
        self.location = location
        self.battery = battery
        self.active = True
        self.group = None
        self.forwarded = 0

    def __repr__(self):
        return '{}(client_id={}, active={}, forwarded={})'.format(
            self.__class__.__name__, self.client_id, self.active,
            self.forwarded)

    def register_message(self):
        return wire.Register(self.client_id, self.location, self.battery)

    def on_group_assign(self, msg):
        r"""Join the group and answer with a ready signal."""
        if msg.role != wire.ROLE_AU:
            raise ValueError('GroupAssign: client {} is an assistant, not '
                             'role {}.'.format(self.client_id, msg.role))
        self.group = msg
        self.logger.debug('AU {} joins {} to help {}.'.format(
            self.client_id, msg.ssid, msg.peers))
        return wire.Ready(self.client_id)

    def forward(self, packet, relay, now):
        r"""Relay a packet to the requesting user.

        Returns
        -------
        due : float or None
            Delivery time at the RU, None if dropped or if the assistant left.

        """
        if not self.active:
            return None
        self.forwarded += 1
        return relay.send(packet, now)

    def leave(self):
        self.active = False
        self.group = None

    def rejoin(self):
        self.active = True
