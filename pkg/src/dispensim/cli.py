"""Command-line entry points: batch scenario runs and the live bridge."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .controller import DEFAULT_FLOW_K_MS_PER_L
from .scenario import (
    RunConfig,
    ScenarioError,
    liters_to_ul,
    parse_scenario,
    run_scenario,
)
from .simulation import DEFAULT_TICK_MS, FirmwarePinFault
from .transcript import format_transcript

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INVARIANT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dispensim",
        description="Deterministic fuel dispenser simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario script and print a transcript")
    run_p.add_argument("--scenario", required=True, type=Path, help="scenario file")
    run_p.add_argument("--tick-ms", type=int, default=DEFAULT_TICK_MS)
    run_p.add_argument("--until-ms", type=int, default=None)
    run_p.add_argument("--flow-k", type=int, default=DEFAULT_FLOW_K_MS_PER_L)
    run_p.add_argument("--tank-l", default="10", help="initial tank volume in liters")
    run_p.add_argument("--format", choices=("text", "structured"), default="text")
    run_p.add_argument("--out", type=Path, default=None, help="write here; default stdout")

    serve_p = sub.add_parser("serve", help="serve the live bridge over HTTP/WebSocket")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--tick-ms", type=int, default=DEFAULT_TICK_MS)
    serve_p.add_argument("--flow-k", type=int, default=DEFAULT_FLOW_K_MS_PER_L)
    serve_p.add_argument("--tank-l", default="10", help="initial tank volume in liters")
    serve_p.add_argument("--timescale", type=float, default=1.0)
    serve_p.add_argument(
        "--static", type=Path, default=None, help="directory to serve at / (panel build)"
    )
    return parser


def _fail(message: str, code: int) -> int:
    print(f"dispensim: {message}", file=sys.stderr)
    return code


def _common_values(args: argparse.Namespace) -> tuple[int, int, int]:
    if args.tick_ms < 1:
        raise ValueError("--tick-ms must be >= 1")
    if args.flow_k < 1:
        raise ValueError("--flow-k must be >= 1")
    try:
        tank_ul = liters_to_ul(args.tank_l)
    except ValueError:
        raise ValueError(f"bad --tank-l value {args.tank_l!r}")
    return args.tick_ms, args.flow_k, tank_ul


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        tick_ms, flow_k, tank_ul = _common_values(args)
        if args.until_ms is not None and args.until_ms < 0:
            raise ValueError("--until-ms must be >= 0")
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT_ERROR)

    try:
        text = args.scenario.read_text(encoding="utf-8")
    except OSError as exc:
        return _fail(f"cannot read scenario: {exc}", EXIT_INPUT_ERROR)

    try:
        scenario = parse_scenario(text)
    except ScenarioError as exc:
        return _fail(str(exc), EXIT_INPUT_ERROR)

    config = RunConfig(
        tick_ms=tick_ms, until_ms=args.until_ms, flow_k=flow_k, tank_ul=tank_ul
    )
    try:
        transcript = run_scenario(scenario, config)
    except FirmwarePinFault as exc:
        return _fail(f"invariant violation: {exc}", EXIT_INVARIANT)

    data = format_transcript(transcript, args.format)
    if args.out is not None:
        args.out.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    try:
        tick_ms, flow_k, tank_ul = _common_values(args)
        if not 0.1 <= args.timescale <= 100:
            raise ValueError("--timescale must be in [0.1, 100]")
        static_dir: Optional[Path] = args.static
        if static_dir is not None and not static_dir.is_dir():
            raise ValueError(f"--static is not a directory: {static_dir}")
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT_ERROR)

    import uvicorn

    from .service import BridgeSettings, create_app

    settings = BridgeSettings(
        tick_ms=tick_ms, flow_k=flow_k, tank_ul=tank_ul, timescale=args.timescale
    )
    app = create_app(settings, static_dir=static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
