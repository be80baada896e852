"""Scenario file parsing, validation and canonical serialization.

The format is line-oriented, UTF-8, with `#` comments and blank lines
ignored. Top-level directives, then optional indented blocks:

    scenario <name>
    mode replay|closed_loop
    duration <ticks>
    initial_distance <meters>        # optional, default 4.0
    vc:
      personality <P> <A> <D>
      initial_pad <P> <A> <D>
      sd_default <meters>
      cultural_distance <meters>
    emotion:
      decay_rate <x>        arousal_gain <x>
      dominance_gain <x>    deviation_scale <x>     # one key per line
    body:
      lean_max <x>   lean_over_max <x>   walk_gain <x>
      creep_gain <x>   min_distance <x>             # one key per line
    events:
      at <tick> set_distance <m>       # replay only
      at <tick> set_pad <P> <A> <D>    # replay only
      at <tick> trainee_move <m>
      at <tick> set_calmness <x>
      at <tick> set_blocked true|false
      at <tick> set_phase <id>
    rules:
      when phase=<id> [tick>=<n>] set <node> gain=<g> sd_default=<m> pad_offset=<P> <A> <D>

`scenario`, `mode` and `duration` are required; everything else has
defaults. Unknown keys are errors. Every parse error carries the 1-based
line (and usually column) of the offending text; a file with any error
yields no Scenario. Parsed events are canonically sorted by tick, and
serialize_scenario emits a form that parses back to the identical value.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .body import BodyConfig
from .cognition import CognitiveRule, RuleCondition
from .core import DomainError, PadState, Personality, TorsoReflexParams
from .emotion import EmotionConfig
from .reflex import TORSO_NODE, NodeBias

MODE_REPLAY = "replay"
MODE_CLOSED_LOOP = "closed_loop"

EVENT_KINDS = (
    "set_distance",
    "set_pad",
    "trainee_move",
    "set_calmness",
    "set_blocked",
    "set_phase",
)
REPLAY_ONLY_KINDS = frozenset({"set_distance", "set_pad"})

DEFAULT_INITIAL_DISTANCE = 4.0
DEFAULT_PHASE = "default"

_IDENT = re.compile(r"^[A-Za-z0-9_.\-]+$")


class ScenarioError(Exception):
    """Scenario failure; parse errors carry a 1-based line number."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        if line is None:
            super().__init__(message)
        else:
            where = f"line {line}" if col is None else f"line {line}, col {col}"
            super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class VcConfig:
    personality: Personality
    initial_pad: PadState
    torso_params: TorsoReflexParams


@dataclass(frozen=True)
class TimedEvent:
    tick: int
    kind: str
    value: object  # float | PadState | bool | str, per kind


@dataclass(frozen=True)
class Scenario:
    name: str
    mode: str
    duration: int
    vc: VcConfig
    emotion_cfg: EmotionConfig
    body_cfg: BodyConfig
    events: tuple[TimedEvent, ...]
    rules: tuple[CognitiveRule, ...]
    initial_distance: float = DEFAULT_INITIAL_DISTANCE


# ---------------------------------------------------------------------------
# parsing


def _tokenize(raw: str) -> list[tuple[str, int]]:
    """Split a line into (token, 1-based column) pairs."""
    tokens = []
    i = 0
    while i < len(raw):
        if raw[i].isspace():
            i += 1
            continue
        start = i
        while i < len(raw) and not raw[i].isspace():
            i += 1
        tokens.append((raw[start:i], start + 1))
    return tokens


class _Cursor:
    """Token stream over one line, with located errors."""

    def __init__(self, tokens: list[tuple[str, int]], line: int, raw: str):
        self.tokens = tokens
        self.line = line
        self.raw = raw
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if not self.done() else None

    def take(self, expected: str) -> tuple[str, int]:
        if self.done():
            raise ScenarioError(
                f"expected {expected}, got end of line", self.line, len(self.raw) + 1
            )
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def end(self) -> None:
        if not self.done():
            tok, col = self.tokens[self.pos]
            raise ScenarioError(f"unexpected token {tok!r}", self.line, col)

    def number(self, what: str) -> tuple[float, int]:
        tok, col = self.take(f"number ({what})")
        try:
            value = float(tok)
        except ValueError:
            raise ScenarioError(f"expected number for {what}, got {tok!r}", self.line, col)
        if not math.isfinite(value):
            raise ScenarioError(f"{what} must be finite, got {tok!r}", self.line, col)
        return value, col

    def integer(self, what: str) -> tuple[int, int]:
        tok, col = self.take(f"integer ({what})")
        try:
            value = int(tok, 10)
        except ValueError:
            raise ScenarioError(
                f"expected integer for {what}, got {tok!r}", self.line, col
            )
        return value, col

    def identifier(self, what: str) -> tuple[str, int]:
        tok, col = self.take(what)
        if not _IDENT.match(tok):
            raise ScenarioError(f"invalid {what}: {tok!r}", self.line, col)
        return tok, col

    def pad_triple(self, what: str) -> tuple[PadState, int]:
        components = []
        first_col = None
        for name in ("pleasure", "arousal", "dominance"):
            value, col = self.number(f"{what} {name}")
            if first_col is None:
                first_col = col
            if not -1.0 <= value <= 1.0:
                raise ScenarioError(
                    f"{what} {name} must be in [-1, 1], got {value:g}", self.line, col
                )
            components.append(value)
        return PadState(*components), first_col or 1


_SCALAR_CONSTRAINTS = {
    # (block, key): (predicate, description)
    ("vc", "sd_default"): (lambda v: v > 0.0, "> 0"),
    ("vc", "cultural_distance"): (lambda v: v >= 0.0, ">= 0"),
    ("emotion", "decay_rate"): (lambda v: 0.0 <= v <= 1.0, "in [0, 1]"),
    ("emotion", "arousal_gain"): (lambda v: v >= 0.0, ">= 0"),
    ("emotion", "dominance_gain"): (lambda v: v >= 0.0, ">= 0"),
    ("emotion", "deviation_scale"): (lambda v: v > 0.0, "> 0"),
    ("body", "lean_max"): (lambda v: v > 0.0, "> 0"),
    ("body", "lean_over_max"): (lambda v: v > 0.0, "> 0"),
    ("body", "walk_gain"): (lambda v: v >= 0.0, ">= 0"),
    ("body", "creep_gain"): (lambda v: v >= 0.0, ">= 0"),
    ("body", "min_distance"): (lambda v: v >= 0.0, ">= 0"),
}

_PAD_KEYS = frozenset({("vc", "personality"), ("vc", "initial_pad")})

_BLOCK_KEYS = {
    "vc": ("personality", "initial_pad", "sd_default", "cultural_distance"),
    "emotion": ("decay_rate", "arousal_gain", "dominance_gain", "deviation_scale"),
    "body": ("lean_max", "lean_over_max", "walk_gain", "creep_gain", "min_distance"),
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.directives: dict[str, tuple[object, int]] = {}
        self.block_values: dict[tuple[str, str], tuple[object, int]] = {}
        self.blocks_seen: dict[str, int] = {}
        self.events: list[tuple[TimedEvent, int]] = []
        self.rules: list[tuple[CognitiveRule, int]] = []
        self.saw_any_directive = False

    # -- line dispatch ------------------------------------------------------

    def parse(self) -> Scenario:
        block: str | None = None
        for lineno, raw in enumerate(self.text.splitlines(), start=1):
            content = raw.split("#", 1)[0]
            if not content.strip():
                continue
            indented = content[0].isspace()
            cur = _Cursor(_tokenize(content), lineno, content)
            if indented:
                if block is None:
                    tok, col = cur.tokens[0]
                    raise ScenarioError(
                        f"indented line outside any block, starting {tok!r}",
                        lineno,
                        col,
                    )
                self._block_line(block, cur)
            else:
                block = self._top_line(cur)
        return self._build()

    def _top_line(self, cur: _Cursor) -> str | None:
        tok, col = cur.take("directive")
        if tok.endswith(":"):
            name = tok[:-1]
            if name not in ("vc", "emotion", "body", "events", "rules"):
                raise ScenarioError(f"unknown block {name!r}", cur.line, col)
            cur.end()
            if name in self.blocks_seen:
                raise ScenarioError(
                    f"duplicate block {name!r} (first at line {self.blocks_seen[name]})",
                    cur.line,
                    col,
                )
            self.blocks_seen[name] = cur.line
            return name

        if not self.saw_any_directive and tok != "scenario":
            raise ScenarioError(
                "file must start with a 'scenario <name>' header", cur.line, col
            )
        self.saw_any_directive = True

        if tok == "scenario":
            name, _ = cur.identifier("scenario name")
            cur.end()
            self._set_directive("scenario", name, cur.line, col)
        elif tok == "mode":
            mode, mcol = cur.identifier("mode")
            if mode not in (MODE_REPLAY, MODE_CLOSED_LOOP):
                raise ScenarioError(
                    f"mode must be replay or closed_loop, got {mode!r}", cur.line, mcol
                )
            cur.end()
            self._set_directive("mode", mode, cur.line, col)
        elif tok == "duration":
            ticks, tcol = cur.integer("duration")
            if ticks < 0:
                raise ScenarioError(f"duration must be >= 0, got {ticks}", cur.line, tcol)
            cur.end()
            self._set_directive("duration", ticks, cur.line, col)
        elif tok == "initial_distance":
            value, vcol = cur.number("initial_distance")
            if value < 0.0:
                raise ScenarioError(
                    f"initial_distance must be >= 0, got {value:g}", cur.line, vcol
                )
            cur.end()
            self._set_directive("initial_distance", value, cur.line, col)
        else:
            raise ScenarioError(f"unknown directive {tok!r}", cur.line, col)
        return None

    def _set_directive(self, name: str, value: object, line: int, col: int) -> None:
        if name in self.directives:
            raise ScenarioError(
                f"duplicate directive {name!r} (first at line {self.directives[name][1]})",
                line,
                col,
            )
        self.directives[name] = (value, line)

    def _block_line(self, block: str, cur: _Cursor) -> None:
        if block == "events":
            self._event_line(cur)
        elif block == "rules":
            self._rule_line(cur)
        else:
            self._config_line(block, cur)

    def _config_line(self, block: str, cur: _Cursor) -> None:
        key, col = cur.take("key")
        if key not in _BLOCK_KEYS[block]:
            raise ScenarioError(f"unknown key {key!r} in block {block!r}", cur.line, col)
        if (block, key) in self.block_values:
            raise ScenarioError(f"duplicate key {key!r} in block {block!r}", cur.line, col)
        if (block, key) in _PAD_KEYS:
            value, _ = cur.pad_triple(key)
        else:
            number, ncol = cur.number(key)
            predicate, description = _SCALAR_CONSTRAINTS[(block, key)]
            if not predicate(number):
                raise ScenarioError(
                    f"{key} must be {description}, got {number:g}", cur.line, ncol
                )
            value = number
        cur.end()
        self.block_values[(block, key)] = (value, cur.line)

    def _event_line(self, cur: _Cursor) -> None:
        tok, col = cur.take("'at'")
        if tok != "at":
            raise ScenarioError(f"expected 'at', got {tok!r}", cur.line, col)
        tick, tcol = cur.integer("event tick")
        if tick < 0:
            raise ScenarioError(f"event tick must be >= 0, got {tick}", cur.line, tcol)
        kind, kcol = cur.take("event kind")
        if kind == "set_distance":
            value, vcol = cur.number("distance")
            if value < 0.0:
                raise ScenarioError(
                    f"distance must be >= 0, got {value:g}", cur.line, vcol
                )
        elif kind == "set_pad":
            value, _ = cur.pad_triple("pad")
        elif kind == "trainee_move":
            value, _ = cur.number("displacement")
        elif kind == "set_calmness":
            value, vcol = cur.number("calmness")
            if not 0.0 <= value <= 1.0:
                raise ScenarioError(
                    f"calmness must be in [0, 1], got {value:g}", cur.line, vcol
                )
        elif kind == "set_blocked":
            word, wcol = cur.take("true|false")
            if word not in ("true", "false"):
                raise ScenarioError(
                    f"set_blocked takes true or false, got {word!r}", cur.line, wcol
                )
            value = word == "true"
        elif kind == "set_phase":
            value, _ = cur.identifier("phase")
        else:
            raise ScenarioError(f"unknown event kind {kind!r}", cur.line, kcol)
        cur.end()
        for existing, eline in self.events:
            if existing.tick == tick and existing.kind == kind:
                raise ScenarioError(
                    f"duplicate event ({kind} at tick {tick}), first at line {eline}",
                    cur.line,
                    col,
                )
        self.events.append((TimedEvent(tick, kind, value), cur.line))

    def _rule_line(self, cur: _Cursor) -> None:
        tok, col = cur.take("'when'")
        if tok != "when":
            raise ScenarioError(f"expected 'when', got {tok!r}", cur.line, col)

        phase: str | None = None
        min_tick: int | None = None
        while cur.peek() != "set":
            tok, col = cur.take("condition or 'set'")
            if tok.startswith("phase="):
                if phase is not None:
                    raise ScenarioError("duplicate phase= condition", cur.line, col)
                phase = tok[len("phase=") :]
                if not _IDENT.match(phase):
                    raise ScenarioError(f"invalid phase {phase!r}", cur.line, col)
            elif tok.startswith("tick>="):
                if min_tick is not None:
                    raise ScenarioError("duplicate tick>= condition", cur.line, col)
                try:
                    min_tick = int(tok[len("tick>=") :], 10)
                except ValueError:
                    raise ScenarioError(f"invalid tick bound in {tok!r}", cur.line, col)
            else:
                raise ScenarioError(
                    f"expected phase=<id>, tick>=<n> or 'set', got {tok!r}",
                    cur.line,
                    col,
                )
        if phase is None:
            raise ScenarioError("rule needs a phase=<id> condition", cur.line, col)

        cur.take("'set'")
        node, _ = cur.identifier("target node")

        gain: float | None = None
        override: float | None = None
        offset: PadState | None = None
        while not cur.done():
            tok, col = cur.take("bias assignment")
            if tok.startswith("gain="):
                if gain is not None:
                    raise ScenarioError("duplicate gain=", cur.line, col)
                gain = self._assigned_number(tok, "gain", cur, col)
                if gain < 0.0:
                    raise ScenarioError(f"gain must be >= 0, got {gain:g}", cur.line, col)
            elif tok.startswith("sd_default="):
                if override is not None:
                    raise ScenarioError("duplicate sd_default=", cur.line, col)
                override = self._assigned_number(tok, "sd_default", cur, col)
                if override <= 0.0:
                    raise ScenarioError(
                        f"sd_default must be > 0, got {override:g}", cur.line, col
                    )
            elif tok.startswith("pad_offset="):
                if offset is not None:
                    raise ScenarioError("duplicate pad_offset=", cur.line, col)
                first = self._assigned_number(tok, "pad_offset", cur, col)
                second, _ = cur.number("pad_offset arousal")
                third, _ = cur.number("pad_offset dominance")
                offset = PadState(first, second, third)
            else:
                raise ScenarioError(f"unknown bias assignment {tok!r}", cur.line, col)
        if gain is None and override is None and offset is None:
            raise ScenarioError("rule sets no bias values", cur.line, col)

        bias = NodeBias(
            sd_default_override=override,
            pad_offset=offset,
            gain=1.0 if gain is None else gain,
        )
        rule = CognitiveRule(
            rule_id=f"rule{len(self.rules) + 1}",
            condition=RuleCondition(phase=phase, min_tick=min_tick),
            bias=bias,
            target_node=node,
        )
        self.rules.append((rule, cur.line))

    @staticmethod
    def _assigned_number(token: str, name: str, cur: _Cursor, col: int) -> float:
        text = token.split("=", 1)[1]
        try:
            value = float(text)
        except ValueError:
            raise ScenarioError(f"expected number for {name}, got {text!r}", cur.line, col)
        if not math.isfinite(value):
            raise ScenarioError(f"{name} must be finite, got {text!r}", cur.line, col)
        return value

    # -- semantic assembly --------------------------------------------------

    def _require(self, name: str) -> tuple[object, int]:
        if name not in self.directives:
            last = self.text.count("\n") + 1
            raise ScenarioError(f"missing required directive {name!r}", last)
        return self.directives[name]

    def _value(self, block: str, key: str, default):
        entry = self.block_values.get((block, key))
        return entry[0] if entry is not None else default

    def _build(self) -> Scenario:
        name, _ = self._require("scenario")
        mode, _ = self._require("mode")
        duration, _ = self._require("duration")
        initial_distance = self.directives.get(
            "initial_distance", (DEFAULT_INITIAL_DISTANCE, 0)
        )[0]

        personality_pad = self._value("vc", "personality", PadState())
        vc = VcConfig(
            personality=Personality(personality_pad),
            initial_pad=self._value("vc", "initial_pad", personality_pad),
            torso_params=TorsoReflexParams(
                sd_default=self._value("vc", "sd_default", 1.0),
                cultural_distance=self._value("vc", "cultural_distance", 0.0),
            ),
        )
        emotion_cfg = EmotionConfig(
            decay_rate=self._value("emotion", "decay_rate", 0.3),
            arousal_gain=self._value("emotion", "arousal_gain", 0.3),
            dominance_gain=self._value("emotion", "dominance_gain", 0.4),
            deviation_scale=self._value("emotion", "deviation_scale", 4.0),
        )
        try:
            body_cfg = BodyConfig(
                lean_max=self._value("body", "lean_max", 0.5),
                lean_over_max=self._value("body", "lean_over_max", 2.5),
                walk_gain=self._value("body", "walk_gain", 0.6),
                creep_gain=self._value("body", "creep_gain", 0.3),
                min_distance=self._value("body", "min_distance", 1.0),
            )
        except DomainError as exc:
            entry = self.block_values.get(("body", "lean_over_max"))
            line = entry[1] if entry else self.blocks_seen.get("body", 1)
            raise ScenarioError(str(exc), line)

        for event, line in self.events:
            if mode != MODE_REPLAY and event.kind in REPLAY_ONLY_KINDS:
                raise ScenarioError(
                    f"event {event.kind!r} is only allowed in replay mode", line
                )
        for rule, line in self.rules:
            if rule.target_node != TORSO_NODE:
                raise ScenarioError(
                    f"rule targets unknown node {rule.target_node!r}"
                    f" (known: {TORSO_NODE})",
                    line,
                )

        events = tuple(sorted((e for e, _ in self.events), key=lambda e: e.tick))
        return Scenario(
            name=name,
            mode=mode,
            duration=duration,
            vc=vc,
            emotion_cfg=emotion_cfg,
            body_cfg=body_cfg,
            events=events,
            rules=tuple(r for r, _ in self.rules),
            initial_distance=initial_distance,
        )


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text; raise ScenarioError (with line number) on any flaw."""
    return _Parser(text).parse()


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# serialization


def _num(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _pad(value: PadState) -> str:
    return f"{_num(value.pleasure)} {_num(value.arousal)} {_num(value.dominance)}"


def serialize_scenario(s: Scenario) -> str:
    """Emit the canonical text form: defaults omitted, events sorted by tick.

    parse_scenario(serialize_scenario(s)) == s for every valid Scenario.
    """
    lines = [f"scenario {s.name}", f"mode {s.mode}", f"duration {s.duration}"]
    if s.initial_distance != DEFAULT_INITIAL_DISTANCE:
        lines.append(f"initial_distance {_num(s.initial_distance)}")

    vc_lines = []
    personality = s.vc.personality.pad_default
    if personality != PadState():
        vc_lines.append(f"personality {_pad(personality)}")
    if s.vc.initial_pad != personality:
        vc_lines.append(f"initial_pad {_pad(s.vc.initial_pad)}")
    params = s.vc.torso_params
    if params.sd_default != 1.0:
        vc_lines.append(f"sd_default {_num(params.sd_default)}")
    if params.cultural_distance != 0.0:
        vc_lines.append(f"cultural_distance {_num(params.cultural_distance)}")
    if vc_lines:
        lines.append("vc:")
        lines.extend(f"  {line}" for line in vc_lines)

    defaults = EmotionConfig()
    emotion_lines = [
        f"{key} {_num(getattr(s.emotion_cfg, key))}"
        for key in _BLOCK_KEYS["emotion"]
        if getattr(s.emotion_cfg, key) != getattr(defaults, key)
    ]
    if emotion_lines:
        lines.append("emotion:")
        lines.extend(f"  {line}" for line in emotion_lines)

    body_defaults = BodyConfig()
    body_lines = [
        f"{key} {_num(getattr(s.body_cfg, key))}"
        for key in _BLOCK_KEYS["body"]
        if getattr(s.body_cfg, key) != getattr(body_defaults, key)
    ]
    if body_lines:
        lines.append("body:")
        lines.extend(f"  {line}" for line in body_lines)

    if s.events:
        lines.append("events:")
        for event in sorted(s.events, key=lambda e: e.tick):
            lines.append(f"  at {event.tick} {event.kind} {_event_args(event)}")

    if s.rules:
        lines.append("rules:")
        for rule in s.rules:
            lines.append(f"  {_rule_text(rule)}")

    return "\n".join(lines) + "\n"


def _event_args(event: TimedEvent) -> str:
    if event.kind == "set_pad":
        return _pad(event.value)
    if event.kind == "set_blocked":
        return "true" if event.value else "false"
    if event.kind == "set_phase":
        return event.value
    return _num(event.value)


def _rule_text(rule: CognitiveRule) -> str:
    parts = [f"when phase={rule.condition.phase}"]
    if rule.condition.min_tick is not None:
        parts.append(f"tick>={rule.condition.min_tick}")
    parts.append(f"set {rule.target_node}")
    bias = rule.bias
    assignments = []
    if bias.sd_default_override is not None:
        assignments.append(f"sd_default={_num(bias.sd_default_override)}")
    if bias.pad_offset is not None:
        o = bias.pad_offset
        assignments.append(
            f"pad_offset={_num(o.pleasure)} {_num(o.arousal)} {_num(o.dominance)}"
        )
    if bias.gain != 1.0 or not assignments:
        assignments.append(f"gain={_num(bias.gain)}")
    parts.extend(assignments)
    return " ".join(parts)
