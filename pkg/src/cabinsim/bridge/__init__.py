from .protocol import (
    MESSAGE_TYPES,
    Envelope,
    FrameDecoder,
    MalformedFrame,
    NonMonotonicSeq,
    ProtocolError,
    UnknownType,
    decode,
    encode,
)
from .session import SimSession, SessionConfig
from .server import BridgeServer

__all__ = [
    "MESSAGE_TYPES",
    "Envelope",
    "FrameDecoder",
    "MalformedFrame",
    "NonMonotonicSeq",
    "ProtocolError",
    "UnknownType",
    "decode",
    "encode",
    "SimSession",
    "SessionConfig",
    "BridgeServer",
]
