from .messages import PROTOCOL_VERSION, WireError, decode_frame, encode
from .session import BROADCAST, Session

__all__ = [
    "BROADCAST",
    "PROTOCOL_VERSION",
    "Session",
    "WireError",
    "decode_frame",
    "encode",
]
