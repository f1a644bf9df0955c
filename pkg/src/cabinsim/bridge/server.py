"""Network front end: line-framed TCP plus a WebSocket mirror of the same schema.

Layout: one reader thread per connection feeds a single inbound queue; the
simulation loop thread drains that queue, owns the session, and fans out
broadcasts through per-client bounded send queues (a stalled client drops
its own messages, never the tick). Nothing but the loop thread touches the
session or the world.
"""

from __future__ import annotations

import queue
import socket
import threading
import time

from .protocol import Envelope, FrameDecoder, ProtocolError, encode
from .session import SimSession
from .websocket import ConnectionClosed, HandshakeFailed, WebSocketConnection

ROLES = ("driver_io", "ui", "gaze_source", "observer")
HANDSHAKE_TIMEOUT = 5.0     # [s] from accept to a valid hello
STALE_TIMEOUT = 5.0         # [s] of client silence before disconnect
HEARTBEAT_INTERVAL = 1.0    # [s]
SEND_QUEUE_MESSAGES = 256
MAX_LINE_BYTES = 1 << 20

CONTROL_ROLES = {"driver_io", "ui"}
UI_ROLES = {"ui", "observer"}


class _LineTransport:
    def __init__(self, sock: socket.socket):
        self.sock = sock
        self._buf = b""

    def readline(self) -> bytes | None:
        while b"\n" not in self._buf:
            if len(self._buf) > MAX_LINE_BYTES:
                junk, self._buf = self._buf, b""
                return junk  # oversized garbage; will fail decode and be dropped
            try:
                chunk = self.sock.recv(65536)
            except OSError:
                return None
            if not chunk:
                return None
            self._buf += chunk
        line, self._buf = self._buf.split(b"\n", 1)
        return line

    def send_text(self, text: str) -> None:
        self.sock.sendall(text.encode("utf-8") + b"\n")

    def close(self) -> None:
        try:
            self.sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        try:
            self.sock.close()
        except OSError:
            pass


class _WsTransport:
    def __init__(self, ws: WebSocketConnection):
        self.ws = ws

    def readline(self) -> str | None:
        try:
            return self.ws.recv_text()
        except (ConnectionClosed, OSError):
            return None

    def send_text(self, text: str) -> None:
        self.ws.send_text(text)

    def close(self) -> None:
        try:
            self.ws.sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self.ws.close()


class _Client:
    _next_id = 0
    _id_lock = threading.Lock()

    def __init__(self, transport):
        with _Client._id_lock:
            _Client._next_id += 1
            self.id = _Client._next_id
        self.transport = transport
        self.role: str | None = None
        self.decoder = FrameDecoder()
        self.last_rx = time.monotonic()
        self.alive = True
        self.decode_errors = 0
        self.dropped_sends = 0
        self._sendq: queue.Queue = queue.Queue(maxsize=SEND_QUEUE_MESSAGES)
        self._writer: threading.Thread | None = None
        self._out_seq = 0

    def start_writer(self) -> None:
        self._writer = threading.Thread(target=self._write_loop,
                                        name=f"client-{self.id}-writer", daemon=True)
        self._writer.start()

    def enqueue(self, mtype: str, payload: dict) -> None:
        try:
            self._sendq.put_nowait((mtype, payload))
        except queue.Full:
            self.dropped_sends += 1

    def _write_loop(self) -> None:
        while self.alive:
            try:
                item = self._sendq.get(timeout=0.2)
            except queue.Empty:
                continue
            if item is None:
                break
            mtype, payload = item
            self._out_seq += 1
            env = Envelope(type=mtype, seq=self._out_seq,
                           t_mono=time.monotonic(), payload=payload)
            try:
                self.transport.send_text(encode(env).decode("utf-8").rstrip("\n"))
            except OSError:
                self.alive = False

    def kill(self) -> None:
        self.alive = False
        try:
            self._sendq.put_nowait(None)
        except queue.Full:
            pass
        self.transport.close()


class BridgeServer:
    def __init__(self, session: SimSession, host: str = "127.0.0.1", port: int = 7654,
                 ws_port: int | None = 7655, ui_hz: float = 20.0,
                 headless_fast: bool = False):
        self.session = session
        self.host = host
        self.port = port
        self.ws_port = ws_port
        self.ui_hz = ui_hz
        self.headless_fast = headless_fast

        self._inbound: queue.SimpleQueue = queue.SimpleQueue()
        self._clients: dict[int, _Client] = {}
        self._clients_lock = threading.Lock()
        self._stop = threading.Event()
        self._threads: list[threading.Thread] = []
        self._listeners: list[socket.socket] = []
        self.tcp_address: tuple[str, int] | None = None
        self.ws_address: tuple[str, int] | None = None

    # ------------------------------------------------------------ lifecycle

    def start(self) -> None:
        tcp = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        tcp.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        tcp.bind((self.host, self.port))
        tcp.listen(16)
        self.tcp_address = tcp.getsockname()
        self._listeners.append(tcp)
        self._spawn(self._accept_loop, tcp, False, name="tcp-accept")

        if self.ws_port is not None:
            ws = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
            ws.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
            ws.bind((self.host, self.ws_port))
            ws.listen(16)
            self.ws_address = ws.getsockname()
            self._listeners.append(ws)
            self._spawn(self._accept_loop, ws, True, name="ws-accept")

    def _spawn(self, fn, *args, name: str) -> None:
        t = threading.Thread(target=fn, args=args, name=name, daemon=True)
        t.start()
        self._threads.append(t)

    def run(self) -> None:
        """Drive the simulation loop on the calling thread until the session ends."""
        self._loop()

    def stop(self) -> None:
        self._stop.set()

    # ----------------------------------------------------------- accepting

    def _accept_loop(self, listener: socket.socket, is_ws: bool) -> None:
        while not self._stop.is_set():
            try:
                sock, _ = listener.accept()
            except OSError:
                return
            threading.Thread(target=self._handle_connection, args=(sock, is_ws),
                             name="client-reader", daemon=True).start()

    def _handle_connection(self, sock: socket.socket, is_ws: bool) -> None:
        sock.settimeout(HANDSHAKE_TIMEOUT)
        try:
            if is_ws:
                ws = WebSocketConnection(sock)
                ws.handshake()
                transport = _WsTransport(ws)
            else:
                transport = _LineTransport(sock)
        except (HandshakeFailed, OSError):
            sock.close()
            return

        client = _Client(transport)
        try:
            line = transport.readline()
            if line is None:
                transport.close()
                return
            hello = client.decoder.decode(line)
            if hello.type != "hello":
                transport.close()
                return
            role = str(hello.payload.get("role", "")).lower()
            if role not in ROLES:
                transport.close()
                return
        except (ProtocolError, OSError):
            transport.close()
            return

        sock.settimeout(None)
        with self._clients_lock:
            if role == "driver_io" and any(
                    c.role == "driver_io" and c.alive for c in self._clients.values()):
                client.start_writer()
                client.enqueue("session_end", {"reason": "role_conflict",
                                               "error": "driver_io already connected"})
                time.sleep(0.05)  # let the writer flush the rejection
                client.kill()
                return
            client.role = role
            self._clients[client.id] = client
        client.start_writer()
        client.last_rx = time.monotonic()
        self._read_loop(client)

    def _read_loop(self, client: _Client) -> None:
        while client.alive and not self._stop.is_set():
            line = client.transport.readline()
            if line is None:
                break
            client.last_rx = time.monotonic()
            try:
                env = client.decoder.decode(line)
            except ProtocolError:
                client.decode_errors += 1
                continue
            self._inbound.put((client.id, client.role, env))
        client.alive = False

    # ------------------------------------------------------------- routing

    def _drain_inbound(self) -> None:
        while True:
            try:
                _, role, env = self._inbound.get_nowait()
            except queue.Empty:
                return
            self._route(role, env)

    def _route(self, role: str, env: Envelope) -> None:
        session = self.session
        if env.type == "control_input" and role in CONTROL_ROLES:
            session.offer_control_input(env.payload)
        elif env.type == "touch_event" and role in CONTROL_ROLES:
            session.offer_touch(env.payload)
        elif env.type == "gaze_sample" and role == "gaze_source":
            session.offer_gaze(env.payload)
        elif env.type == "request_explanation" and role in CONTROL_ROLES:
            session.offer_request(env.payload)
        # heartbeat and anything else: presence only

    # ------------------------------------------------------------ broadcast

    def _broadcast(self, mtype: str, payload: dict, roles=None) -> None:
        with self._clients_lock:
            targets = [c for c in self._clients.values()
                       if c.alive and (roles is None or c.role in roles)]
        for c in targets:
            c.enqueue(mtype, payload)

    def _sweep_clients(self) -> None:
        now = time.monotonic()
        with self._clients_lock:
            stale = [c for c in self._clients.values()
                     if not c.alive or now - c.last_rx > STALE_TIMEOUT]
            for c in stale:
                del self._clients[c.id]
        for c in stale:
            c.kill()

    # ----------------------------------------------------------------- loop

    def _loop(self) -> None:
        session = self.session
        dt = session.config.dt
        ui_every = max(1, round(1.0 / (self.ui_hz * dt)))
        start_tick = session.world.tick
        t0 = time.perf_counter()
        last_heartbeat = t0
        last_sweep = t0

        while not self._stop.is_set() and not session.ended:
            if not self.headless_fast:
                target = t0 + (session.world.tick - start_tick) * dt
                delay = target - time.perf_counter()
                if delay > 0:
                    time.sleep(delay)

            self._drain_inbound()
            out = session.tick()

            self._broadcast("force_feedback", {"torque": out.torque},
                            roles={"driver_io"})
            for mtype, payload in session.drain_outbound():
                if mtype == "session_end":
                    self._broadcast(mtype, payload)
                else:
                    self._broadcast(mtype, payload, roles=UI_ROLES)
            if session.world.tick % ui_every == 0:
                self._broadcast("ui_state", session.ui_state(), roles=UI_ROLES)

            now = time.perf_counter()
            if now - last_heartbeat >= HEARTBEAT_INTERVAL:
                last_heartbeat = now
                self._broadcast("heartbeat", {})
            if now - last_sweep >= 1.0:
                last_sweep = now
                self._sweep_clients()

        if not session.ended:
            session.close("shutdown")
            for mtype, payload in session.drain_outbound():
                self._broadcast(mtype, payload)
        self._shutdown()

    def _shutdown(self) -> None:
        self._stop.set()
        time.sleep(0.05)  # give writers a beat to flush session_end
        for listener in self._listeners:
            try:
                listener.close()
            except OSError:
                pass
        with self._clients_lock:
            clients = list(self._clients.values())
            self._clients.clear()
        for c in clients:
            c.kill()
