"""Minimal server-side WebSocket (RFC 6455) adapter for browser clients.

Only what the cockpit needs: the opening handshake, masked client text
frames (with fragmentation), unmasked server text frames, and close/ping
handling. Written in-repo because no WebSocket library is available in the
target environment; the payloads on top are the exact same JSON envelopes
as the TCP line protocol.
"""

from __future__ import annotations

import base64
import hashlib
import socket
import struct

WS_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"

OP_CONT = 0x0
OP_TEXT = 0x1
OP_BINARY = 0x2
OP_CLOSE = 0x8
OP_PING = 0x9
OP_PONG = 0xA

MAX_FRAME_BYTES = 16 * 1024 * 1024


class HandshakeFailed(Exception):
    pass


class ConnectionClosed(Exception):
    pass


def accept_key(client_key: str) -> str:
    digest = hashlib.sha1((client_key + WS_GUID).encode("ascii")).digest()
    return base64.b64encode(digest).decode("ascii")


def _read_http_request(rfile) -> dict[str, str]:
    request_line = rfile.readline(8192)
    if not request_line:
        raise HandshakeFailed("empty request")
    parts = request_line.decode("latin-1").split()
    if len(parts) < 3 or parts[0] != "GET":
        raise HandshakeFailed(f"not a GET request: {request_line!r}")
    headers: dict[str, str] = {}
    while True:
        line = rfile.readline(8192)
        if line in (b"\r\n", b"\n", b""):
            break
        name, _, value = line.decode("latin-1").partition(":")
        headers[name.strip().lower()] = value.strip()
    return headers


class WebSocketConnection:
    """One accepted browser connection; send/recv of whole text messages."""

    def __init__(self, sock: socket.socket):
        self.sock = sock
        self._rfile = sock.makefile("rb")
        self._closed = False

    def handshake(self) -> None:
        headers = _read_http_request(self._rfile)
        if "websocket" not in headers.get("upgrade", "").lower():
            raise HandshakeFailed("missing Upgrade: websocket")
        key = headers.get("sec-websocket-key")
        if not key:
            raise HandshakeFailed("missing Sec-WebSocket-Key")
        response = (
            "HTTP/1.1 101 Switching Protocols\r\n"
            "Upgrade: websocket\r\n"
            "Connection: Upgrade\r\n"
            f"Sec-WebSocket-Accept: {accept_key(key)}\r\n"
            "\r\n"
        )
        self.sock.sendall(response.encode("latin-1"))

    def _read_exact(self, n: int) -> bytes:
        buf = self._rfile.read(n)
        if buf is None or len(buf) < n:
            raise ConnectionClosed("socket closed mid-frame")
        return buf

    def _read_frame(self) -> tuple[int, bool, bytes]:
        head = self._read_exact(2)
        fin = bool(head[0] & 0x80)
        opcode = head[0] & 0x0F
        masked = bool(head[1] & 0x80)
        length = head[1] & 0x7F
        if length == 126:
            length = struct.unpack(">H", self._read_exact(2))[0]
        elif length == 127:
            length = struct.unpack(">Q", self._read_exact(8))[0]
        if length > MAX_FRAME_BYTES:
            raise ConnectionClosed(f"frame too large ({length} bytes)")
        mask = self._read_exact(4) if masked else b""
        payload = self._read_exact(length) if length else b""
        if masked:
            payload = bytes(b ^ mask[i % 4] for i, b in enumerate(payload))
        return opcode, fin, payload

    def recv_text(self) -> str:
        """Next complete text message; replies to pings, raises on close."""
        message = bytearray()
        in_message = False
        while True:
            opcode, fin, payload = self._read_frame()
            if opcode == OP_PING:
                self._send_frame(OP_PONG, payload)
                continue
            if opcode == OP_PONG:
                continue
            if opcode == OP_CLOSE:
                self._send_close()
                raise ConnectionClosed("peer sent close")
            if opcode == OP_TEXT:
                message = bytearray(payload)
                in_message = True
            elif opcode == OP_CONT and in_message:
                message.extend(payload)
            else:
                raise ConnectionClosed(f"unsupported opcode {opcode}")
            if fin and in_message:
                return message.decode("utf-8")

    def _send_frame(self, opcode: int, payload: bytes) -> None:
        header = bytearray([0x80 | opcode])
        n = len(payload)
        if n < 126:
            header.append(n)
        elif n < 2 ** 16:
            header.append(126)
            header.extend(struct.pack(">H", n))
        else:
            header.append(127)
            header.extend(struct.pack(">Q", n))
        self.sock.sendall(bytes(header) + payload)

    def send_text(self, text: str) -> None:
        if self._closed:
            raise ConnectionClosed("connection already closed")
        self._send_frame(OP_TEXT, text.encode("utf-8"))

    def _send_close(self) -> None:
        if not self._closed:
            try:
                self._send_frame(OP_CLOSE, b"")
            except OSError:
                pass
            self._closed = True

    def close(self) -> None:
        self._send_close()
        try:
            self.sock.close()
        except OSError:
            pass
