"""Command-line entry points: run, align, analyze, synth-gaze, scenarios."""

from __future__ import annotations

import argparse
import functools
import http.server
import json
import sys
import threading
from pathlib import Path

import numpy as np

from . import __version__
from .alignment import (
    AlignmentError,
    PointCorrespondences,
    estimate_rigid,
)
from .analysis import export_timeseries
from .bridge import BridgeServer, SessionConfig, SimSession
from .scenario import TEMPLATE_NAMES, bundled_scenario, load_scenario, serialize_scenario
from .sim import ControlInput
from .telemetry import (
    EventMarker,
    GazeSample,
    SessionEnd,
    SessionHeader,
    SessionWriter,
    SynthGazeConfig,
    VehicleSample,
    replay,
    synth_gaze,
)

ALIGN_RMS_THRESHOLD = 0.01  # [m] exit code 2 above this


def _parse_endpoint(value: str, default_host: str = "127.0.0.1") -> tuple[str, int]:
    if ":" in value:
        host, _, port = value.rpartition(":")
        return host or default_host, int(port)
    return default_host, int(value)


def _resolve_scenario(value: str):
    if value in TEMPLATE_NAMES:
        return bundled_scenario(value)
    return load_scenario(Path(value).read_text())


def _load_gaze_replay(path: str) -> list[GazeSample]:
    return [r for r in replay(path) if isinstance(r, GazeSample)]


def _load_input_trace(path: str) -> list[ControlInput]:
    return [r.input for r in replay(path) if isinstance(r, VehicleSample)]


def _serve_static(directory: Path, port: int) -> threading.Thread:
    handler = functools.partial(http.server.SimpleHTTPRequestHandler,
                                directory=str(directory))
    httpd = http.server.ThreadingHTTPServer(("127.0.0.1", port), handler)
    t = threading.Thread(target=httpd.serve_forever, daemon=True)
    t.start()
    print(f"serving cockpit UI from {directory} at http://127.0.0.1:{port}/")
    return t


def cmd_run(args) -> int:
    script = _resolve_scenario(args.scenario)

    gaze_mode, gaze_replay = "live", []
    if args.gaze == "synthetic":
        gaze_mode = "synthetic"
    elif args.gaze.startswith("replay:"):
        gaze_mode = "replay"
        gaze_replay = _load_gaze_replay(args.gaze.split(":", 1)[1])
    elif args.gaze != "live":
        print(f"unknown --gaze mode {args.gaze!r}", file=sys.stderr)
        return 1

    input_trace = None
    if args.inputs is not None:
        if not args.inputs.startswith("replay:"):
            print("--inputs expects replay:<session file>", file=sys.stderr)
            return 1
        input_trace = _load_input_trace(args.inputs.split(":", 1)[1])

    config = SessionConfig(
        seed=args.seed,
        autopilot=args.autopilot and input_trace is None,
        duration_s=args.duration,
        gaze_mode=gaze_mode,
        gaze_config=SynthGazeConfig(seed=args.seed) if gaze_mode == "synthetic" else None,
        gaze_replay=gaze_replay,
        input_trace=input_trace,
    )
    session = SimSession(script, args.log, config)

    host, port = _parse_endpoint(args.listen)
    ws_host, ws_port = _parse_endpoint(args.ws_listen)
    server = BridgeServer(session, host=host, port=port, ws_port=ws_port,
                          headless_fast=args.headless_fast)
    if args.serve_ui:
        _serve_static(Path(args.ui_dir), args.serve_ui)
    server.start()
    print(f"scenario {script.id!r} ({script.policy.agent_name}), "
          f"listening on {server.tcp_address} / ws {server.ws_address}")
    try:
        server.run()
    except KeyboardInterrupt:
        server.stop()
        session.close("interrupted")
    print(f"session ended ({session.end_reason}) after {session.world.time:.2f} s "
          f"/ {session.world.tick} ticks; log in {args.log}")
    return 0


def cmd_align(args) -> int:
    doc = json.loads(Path(args.pairs).read_text())
    try:
        corr = PointCorrespondences(model_points=np.asarray(doc["model"], dtype=float),
                                    tracked_points=np.asarray(doc["tracked"], dtype=float))
        transform, report = estimate_rigid(corr)
    except (KeyError, ValueError, AlignmentError) as e:
        print(f"alignment failed: {e}", file=sys.stderr)
        return 1
    out = {
        "rotation": [[float(v) for v in row] for row in transform.rotation],
        "translation": [float(v) for v in transform.translation],
        "rms_residual": report.rms_residual,
        "max_residual": report.max_residual,
        "n_points": report.n_points,
    }
    print(json.dumps(out, indent=2))
    return 2 if report.rms_residual > ALIGN_RMS_THRESHOLD else 0


def cmd_analyze(args) -> int:
    paths = export_timeseries(args.session, args.out,
                              baseline_s=args.baseline_s, window_s=args.window_s,
                              request_window_s=args.request_window_s)
    print(Path(paths["summary"]).read_text(), end="")
    return 0


def cmd_synth_gaze(args) -> int:
    config_doc = json.loads(Path(args.config).read_text())
    config = SynthGazeConfig(**config_doc)
    events_doc = json.loads(Path(args.events).read_text())

    markers = []
    amplitudes = []
    for ev in events_doc:
        markers.append(EventMarker(
            t=float(ev["t"]), event_id=str(ev.get("event_id", f"e{len(markers) + 1}")),
            kind=str(ev.get("kind", "custom")),
            safety_critical=bool(ev.get("safety_critical", True)),
            explanation_issued=bool(ev.get("explanation_issued", False))))
        amplitudes.append(float(ev.get("amplitude", config.response_amplitude)))

    duration = args.duration
    if duration is None:
        last = max((m.t for m in markers), default=0.0)
        duration = last + config.response_latency + config.response_duration + 10.0

    samples = synth_gaze(config, markers, duration, amplitudes=amplitudes)
    header = SessionHeader(seed=config.seed, scenario_id="synth-gaze",
                           start_wall="", version=__version__)
    writer = SessionWriter(Path(args.out), header)
    merged = sorted(
        [(m.t, 0, m) for m in markers] + [(g.t, 1, g) for g in samples],
        key=lambda item: (item[0], item[1]))
    for _, _, rec in merged:
        writer.record(rec)
    end_t = max(duration, merged[-1][0] if merged else 0.0)
    writer.record(SessionEnd(t=end_t, reason="synth_complete"))
    writer.close()
    print(f"wrote {len(samples)} gaze samples and {len(markers)} markers to {args.out}")
    return 0


def cmd_scenarios(args) -> int:
    if args.export_dir:
        out = Path(args.export_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name in TEMPLATE_NAMES:
            path = out / f"{name}.json"
            path.write_text(serialize_scenario(bundled_scenario(name)) + "\n")
            print(path)
    else:
        for name in TEMPLATE_NAMES:
            s = bundled_scenario(name)
            print(f"{name}: agent {s.policy.agent_name!r}, policy {s.policy.variant.value}, "
                  f"{len(s.events)} events, route {len(s.route)} waypoints")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cabinsim",
                                     description="Headless driving-sim backbone")
    parser.add_argument("--version", action="version", version=f"cabinsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario session with the network bridge")
    run.add_argument("--scenario", required=True,
                     help=f"scenario JSON file or template name {TEMPLATE_NAMES}")
    run.add_argument("--log", required=True, help="session log directory")
    run.add_argument("--autopilot", action="store_true",
                     help="drive automatically along the scenario route")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--headless-fast", action="store_true",
                     help="run as fast as possible instead of wall-clock pacing")
    run.add_argument("--gaze", default="live",
                     help="gaze source: live | synthetic | replay:<session file>")
    run.add_argument("--inputs", default=None,
                     help="control source: replay:<session file> (overrides --autopilot)")
    run.add_argument("--duration", type=float, default=120.0,
                     help="end the session after this many simulated seconds")
    run.add_argument("--listen", default="127.0.0.1:7654", help="TCP endpoint")
    run.add_argument("--ws-listen", default="127.0.0.1:7655", help="WebSocket endpoint")
    run.add_argument("--serve-ui", type=int, default=None, metavar="PORT",
                     help="also serve the cockpit UI bundle over HTTP")
    run.add_argument("--ui-dir", default="frontend/dist")
    run.set_defaults(fn=cmd_run)

    align = sub.add_parser("align", help="rigid cabin-model registration from point pairs")
    align.add_argument("--pairs", required=True,
                       help='JSON file {"model": [[x,y,z],...], "tracked": [[x,y,z],...]}')
    align.set_defaults(fn=cmd_align)

    analyze = sub.add_parser("analyze", help="post-hoc analysis of a recorded session")
    analyze.add_argument("--session", required=True, help="session directory or file")
    analyze.add_argument("--baseline-s", type=float, default=2.0)
    analyze.add_argument("--window-s", type=float, default=5.0)
    analyze.add_argument("--request-window-s", type=float, default=10.0)
    analyze.add_argument("--out", required=True, help="output directory for CSV/JSON")
    analyze.set_defaults(fn=cmd_analyze)

    synth = sub.add_parser("synth-gaze", help="generate a synthetic gaze session")
    synth.add_argument("--config", required=True, help="SynthGazeConfig JSON file")
    synth.add_argument("--events", required=True, help="JSON list of event markers")
    synth.add_argument("--out", required=True, help="output session .jsonl path")
    synth.add_argument("--duration", type=float, default=None)
    synth.set_defaults(fn=cmd_synth_gaze)

    scen = sub.add_parser("scenarios", help="list or export the bundled templates")
    scen.add_argument("--export-dir", default=None)
    scen.set_defaults(fn=cmd_scenarios)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
