"""Command-line entry points and the live session service.

Subcommands:

  run    --scenario FILE [--trace OUT.csv]
         Execute a scenario; write the trace CSV (stdout if no --trace).
         Exit 0 on success, 1 on parse/semantic errors (message with line
         number on stderr), 2 on runtime errors.

  verify --trace GOT.csv --expected WANT.csv [--tol 1e-9]
         Compare two traces: numeric columns within tolerance, booleans
         and identifiers exactly. Exit 0 iff all cells match, 1 on any
         mismatch (each reported as row/column/got/want), 2 if the column
         sets differ.

  serve  --scenario FILE [--host H] [--port N] [--tick-ms N]
         [--record FILE] [--max-ticks N]
         Run a live closed-loop session over a TCP stream of
         newline-delimited JSON messages. One client per session; the
         engine ticks at the configured period, consuming the latest
         `input` message (absent input: move 0, calmness persists) and
         pushing one `state` message per tick.

  gateway --upstream HOST:PORT [--host H] [--port N]
         Bridge browser WebSocket clients to a running serve instance:
         each WebSocket connection gets its own TCP connection upstream,
         text frames map 1:1 to protocol lines. Needs the `websockets`
         package (the `gateway` extra).

Wire protocol (UTF-8, one JSON object per line, discriminated by "kind"):
  client -> engine:  {"kind": "input", "move": m, "calmness": c}
                     {"kind": "reset"} | {"kind": "pause"} | {"kind": "resume"}
  engine -> client:  {"kind": "state", ...trace row fields..., "trainee_position": x}
                     {"kind": "error", "message": text}

The tick clock lives here, not in the engine, so the engine stays a pure
deterministic function of its inputs.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import math
import sys
from pathlib import Path

from .core import DomainError
from .engine import Engine, TickInput, run as run_scenario
from .scenario import (
    MODE_CLOSED_LOOP,
    Scenario,
    ScenarioError,
    TimedEvent,
    load_scenario,
)
from .trace import (
    ColumnMismatch,
    TraceRow,
    compare_traces,
    read_trace_csv,
    trace_to_csv,
    write_trace_csv,
)

STATE_FIELDS = TraceRow.__dataclass_fields__  # state messages mirror trace rows


# ---------------------------------------------------------------------------
# live session


class Session:
    """One live closed-loop session: an engine plus the trainee's mailbox.

    Transport-free so it can be driven directly in tests; the asyncio
    service below feeds it decoded messages and pulls state dicts.
    """

    def __init__(self, scenario: Scenario, record_path: str | Path | None = None):
        if scenario.mode != MODE_CLOSED_LOOP:
            raise ScenarioError("serve requires a closed_loop scenario")
        self.engine = Engine(scenario)
        self.pending: TickInput | None = None
        self.paused = False
        self.trainee_position = scenario.initial_distance
        self.ticks_emitted = 0
        self._record_fh = open(record_path, "w", encoding="utf-8") if record_path else None

    def close(self) -> None:
        if self._record_fh is not None:
            self._record_fh.close()
            self._record_fh = None

    def handle_message(self, obj: object) -> dict | None:
        """Apply one client message; returns an error reply or None."""
        if not isinstance(obj, dict):
            return {"kind": "error", "message": "message must be a JSON object"}
        kind = obj.get("kind")
        if kind == "input":
            try:
                move = float(obj.get("move", 0.0))
                if not math.isfinite(move):
                    raise DomainError(f"move must be finite, got {move!r}")
                calmness = obj.get("calmness")
                if calmness is not None:
                    calmness = float(calmness)
                self.pending = TickInput(move=move, calmness=calmness)
            except (TypeError, ValueError, DomainError) as exc:
                return {"kind": "error", "message": f"bad input: {exc}"}
            return None
        if kind == "reset":
            self.engine.reset()
            self.pending = None
            self.paused = False
            self.trainee_position = self.engine.scenario.initial_distance
            return None
        if kind == "pause":
            self.paused = True
            return None
        if kind == "resume":
            self.paused = False
            return None
        return {"kind": "error", "message": f"unknown message kind: {kind!r}"}

    def handle_line(self, line: str) -> dict | None:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            return {"kind": "error", "message": f"bad JSON: {exc}"}
        return self.handle_message(obj)

    def advance(self) -> dict | None:
        """Run one tick if not paused; returns the state message to push.

        The reported trainee_position is the position at the start of the
        tick, consistent with the row's distance; the consumed move takes
        effect afterwards.
        """
        if self.paused:
            return None
        live, self.pending = self.pending, None
        position = self.trainee_position
        row = self.engine.tick(live)
        if live is not None:
            self.trainee_position += live.move
            self._record(row.tick, live)
        self.ticks_emitted += 1
        state = {"kind": "state"}
        for name in STATE_FIELDS:
            state[name] = getattr(row, name)
        state["trainee_position"] = position
        return state

    def _record(self, tick: int, live: TickInput) -> None:
        if self._record_fh is None:
            return
        entry = {"tick": tick, "move": live.move, "calmness": live.calmness}
        self._record_fh.write(json.dumps(entry, sort_keys=True) + "\n")
        self._record_fh.flush()


def input_log_to_events(log_lines: list[str]) -> tuple[TimedEvent, ...]:
    """Translate a recorded input log into equivalent scenario events.

    Each consumed input {tick, move, calmness} becomes a trainee_move
    event (if move is nonzero) and a set_calmness event (if calmness was
    given) at that tick, so replaying the scenario reproduces the session.
    """
    events: list[TimedEvent] = []
    for line in log_lines:
        if not line.strip():
            continue
        entry = json.loads(line)
        if entry.get("move"):
            events.append(TimedEvent(entry["tick"], "trainee_move", float(entry["move"])))
        if entry.get("calmness") is not None:
            events.append(
                TimedEvent(entry["tick"], "set_calmness", float(entry["calmness"]))
            )
    return tuple(sorted(events, key=lambda e: e.tick))


def encode_message(obj: dict) -> bytes:
    return (json.dumps(obj, sort_keys=True) + "\n").encode("utf-8")


async def start_service(
    scenario: Scenario,
    host: str,
    port: int,
    tick_ms: float,
    record_path: str | Path | None = None,
    max_ticks: int | None = None,
) -> asyncio.AbstractServer:
    """Start the session service; returns the listening server.

    One client is served at a time; a second concurrent connection is
    refused with an error message. Each accepted connection gets a fresh
    session, disposed on disconnect.
    """
    busy = False

    async def handle(reader: asyncio.StreamReader, writer: asyncio.StreamWriter):
        nonlocal busy
        if busy:
            writer.write(encode_message({"kind": "error", "message": "session in use"}))
            try:
                await writer.drain()
            except ConnectionError:
                pass
            writer.close()
            return
        busy = True
        session = Session(scenario, record_path)
        stop = asyncio.Event()

        async def intake():
            while not stop.is_set():
                line = await reader.readline()
                if not line:
                    stop.set()
                    return
                reply = session.handle_line(line.decode("utf-8", "replace"))
                if reply is not None:
                    writer.write(encode_message(reply))
                    await writer.drain()

        async def ticker():
            period = tick_ms / 1000.0
            while not stop.is_set():
                state = session.advance()
                if state is not None:
                    writer.write(encode_message(state))
                    await writer.drain()
                    if max_ticks is not None and session.ticks_emitted >= max_ticks:
                        stop.set()
                        return
                await asyncio.sleep(period)

        tasks = [asyncio.ensure_future(intake()), asyncio.ensure_future(ticker())]
        try:
            await stop.wait()
        except asyncio.CancelledError:
            pass
        finally:
            for task in tasks:
                task.cancel()
            await asyncio.gather(*tasks, return_exceptions=True)
            session.close()
            writer.close()
            busy = False

    return await asyncio.start_server(handle, host, port)


# ---------------------------------------------------------------------------
# WebSocket gateway (browser bridge)


async def start_gateway(
    host: str, port: int, upstream_host: str, upstream_port: int
):
    """Start a WebSocket endpoint that pipes frames to the TCP service.

    One upstream TCP connection per WebSocket client; the service's
    one-client-per-session rule still applies upstream. Returns the
    websockets server object.
    """
    from websockets.asyncio.server import serve as ws_serve

    async def bridge(websocket):
        try:
            reader, writer = await asyncio.open_connection(upstream_host, upstream_port)
        except OSError as exc:
            await websocket.send(
                json.dumps({"kind": "error", "message": f"upstream unreachable: {exc}"})
            )
            await websocket.close()
            return

        async def ws_to_tcp():
            async for message in websocket:
                if isinstance(message, bytes):
                    message = message.decode("utf-8", "replace")
                writer.write((message.rstrip("\n") + "\n").encode("utf-8"))
                await writer.drain()

        async def tcp_to_ws():
            while True:
                line = await reader.readline()
                if not line:
                    return
                await websocket.send(line.decode("utf-8").rstrip("\n"))

        pumps = [asyncio.ensure_future(ws_to_tcp()), asyncio.ensure_future(tcp_to_ws())]
        try:
            await asyncio.wait(pumps, return_when=asyncio.FIRST_COMPLETED)
        finally:
            for pump in pumps:
                pump.cancel()
            await asyncio.gather(*pumps, return_exceptions=True)
            writer.close()
            await websocket.close()

    return await ws_serve(bridge, host, port)


# ---------------------------------------------------------------------------
# CLI commands


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def cmd_run(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except OSError as exc:
        return _fail(f"{args.scenario}: {exc.strerror or exc}", 1)
    except ScenarioError as exc:
        return _fail(f"{args.scenario}: {exc}", 1)
    try:
        rows = run_scenario(scenario)
    except (ScenarioError, DomainError) as exc:
        return _fail(f"{args.scenario}: runtime error: {exc}", 2)
    if args.trace:
        write_trace_csv(rows, args.trace)
    else:
        sys.stdout.write(trace_to_csv(rows))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        got = read_trace_csv(args.trace)
        want = read_trace_csv(args.expected)
    except OSError as exc:
        return _fail(f"{exc.filename}: {exc.strerror}", 2)
    except ValueError as exc:
        return _fail(str(exc), 2)
    try:
        mismatches = compare_traces(got, want, args.tol)
    except ColumnMismatch as exc:
        return _fail(str(exc), 2)
    if not mismatches:
        print(f"OK: {len(got[1])} rows match within {args.tol:g}")
        return 0
    for m in mismatches[:50]:
        print(f"row {m.row} column {m.column}: got {m.got}, want {m.want}")
    if len(mismatches) > 50:
        print(f"... and {len(mismatches) - 50} more mismatches")
    return 1


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except OSError as exc:
        return _fail(f"{args.scenario}: {exc.strerror or exc}", 1)
    except ScenarioError as exc:
        return _fail(f"{args.scenario}: {exc}", 1)
    if scenario.mode != MODE_CLOSED_LOOP:
        return _fail(f"{args.scenario}: serve requires a closed_loop scenario", 1)

    async def serve_forever():
        server = await start_service(
            scenario,
            args.host,
            args.port,
            args.tick_ms,
            record_path=args.record,
            max_ticks=args.max_ticks,
        )
        bound = server.sockets[0].getsockname()
        print(f"serving {scenario.name} on {bound[0]}:{bound[1]}", file=sys.stderr)
        async with server:
            await server.serve_forever()

    try:
        asyncio.run(serve_forever())
    except KeyboardInterrupt:
        pass
    return 0


def cmd_gateway(args: argparse.Namespace) -> int:
    try:
        import websockets  # noqa: F401
    except ImportError:
        return _fail(
            "the gateway needs the 'websockets' package (pip install reflexsim[gateway])",
            1,
        )
    host, _, port = args.upstream.rpartition(":")
    if not host or not port.isdigit():
        return _fail(f"--upstream must be HOST:PORT, got {args.upstream!r}", 1)

    async def gateway_forever():
        server = await start_gateway(args.host, args.port, host, int(port))
        print(
            f"gateway on ws://{args.host}:{args.port} -> {args.upstream}",
            file=sys.stderr,
        )
        await server.serve_forever()

    try:
        asyncio.run(gateway_forever())
    except KeyboardInterrupt:
        pass
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="reflexsim",
        description="Virtual-character reflex simulation: run, verify and serve scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario and write its trace CSV")
    p_run.add_argument("--scenario", required=True, help="scenario file (.scn)")
    p_run.add_argument("--trace", help="output CSV path (stdout if omitted)")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="compare a trace against an expected CSV")
    p_verify.add_argument("--trace", required=True, help="trace CSV to check")
    p_verify.add_argument("--expected", required=True, help="golden CSV")
    p_verify.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")
    p_verify.set_defaults(func=cmd_verify)

    p_serve = sub.add_parser("serve", help="run a live trainee session over TCP")
    p_serve.add_argument("--scenario", required=True, help="closed_loop scenario file")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=7877)
    p_serve.add_argument("--tick-ms", type=float, default=100.0, dest="tick_ms")
    p_serve.add_argument("--record", help="append consumed inputs to this NDJSON log")
    p_serve.add_argument(
        "--max-ticks", type=int, default=None, dest="max_ticks",
        help="stop the session after this many ticks",
    )
    p_serve.set_defaults(func=cmd_serve)

    p_gateway = sub.add_parser(
        "gateway", help="bridge browser WebSocket clients to a serve instance"
    )
    p_gateway.add_argument(
        "--upstream", required=True, help="HOST:PORT of the running serve instance"
    )
    p_gateway.add_argument("--host", default="127.0.0.1")
    p_gateway.add_argument("--port", type=int, default=7878)
    p_gateway.set_defaults(func=cmd_gateway)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
