"""Deterministic tick scheduler wiring sensors, nodes, body and emotion.

One tick runs a fixed pipeline:

  1. apply this tick's scripted events (and any live trainee input) to
     the world, then freeze an immutable SensorSnapshot;
  2. cognition plans node biases from the PREVIOUS tick's deviations, so
     planning never races with node evaluation;
  3. biases are installed on the nodes;
  4. every node is evaluated against the same snapshot and PAD state (the
     nodes are pure, so the order cannot matter; they run in fixed
     registration order);
  5. the body model resolves the torso command into lean and locomotion;
  6. closed loop only: the distance integrates and the emotion state
     absorbs this tick's deviations;
  7. a trace row records every quantity exactly as used.

In replay mode, distance comes from per-tick set_distance events and PAD
persists from the most recent set_pad event, so steps 5-7 never feed
back and node outputs are pure functions of the scripted inputs.

The engine owns all mutable state and advances one tick at a time; a run
is bit-identical across repeats for the same scenario.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .body import BodyState, integrate_distance, resolve_body
from .cognition import plan_step
from .core import DomainError, PadState, Personality, SensorSnapshot, clamp_pad
from .emotion import aggregate_deviations
from .reflex import TORSO_NODE, ReflexNodeState, apply_bias, evaluate_node
from .scenario import (
    DEFAULT_PHASE,
    MODE_CLOSED_LOOP,
    MODE_REPLAY,
    Scenario,
    ScenarioError,
    TimedEvent,
)
from .trace import Trace, TraceRow


@dataclass(frozen=True)
class TickInput:
    """Live trainee input for one tick (the session service feeds these).

    move: meters of trainee displacement, positive = away from the VC.
    calmness: new calmness in [0, 1], or None to keep the current value.
    """

    move: float = 0.0
    calmness: float | None = None

    def __post_init__(self) -> None:
        if self.calmness is not None and not 0.0 <= self.calmness <= 1.0:
            raise DomainError(f"calmness must be in [0, 1], got {self.calmness}")


@dataclass
class WorldState:
    tick: int
    pad: PadState
    personality: Personality
    nodes: dict[str, ReflexNodeState]
    body: BodyState
    distance: float
    phase: str
    mode: str
    calmness: float
    blocked: bool
    prev_deviations: dict[str, float] = field(default_factory=dict)


class Engine:
    """Executes one scenario; create a fresh Engine (or reset) per run."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self._events_by_tick: dict[int, list[TimedEvent]] = {}
        for event in scenario.events:
            self._events_by_tick.setdefault(event.tick, []).append(event)
        self.node_order = [TORSO_NODE]
        self.world = self._initial_world()

    def _initial_world(self) -> WorldState:
        s = self.scenario
        nodes = {
            TORSO_NODE: ReflexNodeState(node_id=TORSO_NODE, params=s.vc.torso_params)
        }
        return WorldState(
            tick=0,
            pad=clamp_pad(s.vc.initial_pad),
            personality=s.vc.personality,
            nodes=nodes,
            body=BodyState(),
            distance=s.initial_distance,
            phase=DEFAULT_PHASE,
            mode=s.mode,
            calmness=1.0,
            blocked=False,
            prev_deviations={node_id: 0.0 for node_id in nodes},
        )

    def reset(self) -> None:
        self.world = self._initial_world()

    def tick(self, live: TickInput | None = None) -> TraceRow:
        w = self.world
        t = w.tick

        displacement = 0.0
        saw_distance = False
        for event in self._events_by_tick.get(t, ()):
            if event.kind == "set_distance":
                w.distance = event.value
                saw_distance = True
            elif event.kind == "set_pad":
                w.pad = clamp_pad(event.value)
            elif event.kind == "trainee_move":
                displacement += event.value
            elif event.kind == "set_calmness":
                w.calmness = event.value
            elif event.kind == "set_blocked":
                w.blocked = event.value
            elif event.kind == "set_phase":
                w.phase = event.value
        if live is not None:
            displacement += live.move
            if live.calmness is not None:
                w.calmness = live.calmness
        if w.mode == MODE_REPLAY and not saw_distance:
            raise ScenarioError(f"replay tick {t} has no set_distance override")

        snapshot = SensorSnapshot(
            distance=w.distance,
            trainee_calmness=w.calmness,
            trainee_displacement=displacement,
            blocked=w.blocked,
        )

        biases = plan_step(
            self.scenario.rules, t, w.prev_deviations, w.pad, w.phase
        )
        for node_id, bias in biases.items():
            w.nodes[node_id] = apply_bias(w.nodes[node_id], bias)

        evaluations = {}
        for node_id in self.node_order:
            w.nodes[node_id], evaluations[node_id] = evaluate_node(
                w.nodes[node_id], snapshot, w.pad
            )

        torso = evaluations[TORSO_NODE]
        body = resolve_body(torso.command, snapshot.blocked, self.scenario.body_cfg)
        w.body = body

        row = TraceRow(
            tick=t,
            distance=snapshot.distance,
            pleasure=w.pad.pleasure,
            arousal=w.pad.arousal,
            dominance=w.pad.dominance,
            sd_target=torso.sd_target,
            c_sd=torso.inertia,
            torso_pitch_command=torso.command.value,
            deviation=torso.deviation,
            lean=body.lean,
            forward_velocity=body.forward_velocity,
            blocked=snapshot.blocked,
            phase=w.phase,
        )

        deviations = {nid: ev.deviation for nid, ev in evaluations.items()}
        if w.mode == MODE_CLOSED_LOOP:
            w.distance = integrate_distance(
                snapshot.distance,
                body,
                snapshot.trainee_displacement,
                self.scenario.body_cfg,
            )
            w.pad = aggregate_deviations(
                w.pad,
                list(deviations.values()),
                snapshot.trainee_calmness,
                self.scenario.emotion_cfg,
                w.personality,
            )
        w.prev_deviations = deviations
        w.tick = t + 1
        return row

    def run(self) -> Trace:
        rows = []
        for _ in range(self.scenario.duration):
            rows.append(self.tick())
        return rows


def run(scenario: Scenario) -> Trace:
    """Execute the scenario from a fresh world; returns the full trace."""
    return Engine(scenario).run()
