"""Reflex-node framework and the torso-pitch node.

A reflex node couples one sensor channel directly to a motor channel: it
measures how far the sensed quantity deviates from the node's drive
target and emits a command proportional to that deviation, with no
planning in between. Emotion modulates the equations through the PAD
state; cognition modulates them only through NodeBias values, which
replace one another (the most recent decision wins, no accumulation).

The torso-pitch node is the one fully specified instance:

    command   = inertia * (sd_target - distance) * gain
    sd_target = (1 - dominance) * sd_default + cultural_distance
    inertia   = (arousal + 1) / 2

Negative command = lean toward the trainee. The node framework accepts
other node kinds (gaze, breathing, ...) but none are implemented.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import (
    ConfigurationError,
    DomainError,
    MotorCommand,
    PadState,
    SensorSnapshot,
    TorsoReflexParams,
    clamp_pad,
)

TORSO_NODE = "torso_pitch"


def compute_inertia(arousal: float) -> float:
    """Arousal-derived response gain in [0, 1]: (arousal + 1) / 2.

    High arousal means the torso angle tracks its target quickly; at
    arousal -1 the node freezes entirely.
    """
    if not -1.0 <= arousal <= 1.0:
        raise DomainError(f"arousal must be in [-1, 1], got {arousal}")
    return (arousal + 1.0) / 2.0


def compute_sd_target(dominance: float, params: TorsoReflexParams) -> float:
    """Currently preferred social distance: (1 - D) * sd_default + CD.

    Strictly decreasing in dominance: a dominant VC tolerates a closer
    trainee, a submissive one wants more room.
    """
    if not -1.0 <= dominance <= 1.0:
        raise DomainError(f"dominance must be in [-1, 1], got {dominance}")
    return (1.0 - dominance) * params.sd_default + params.cultural_distance


def torso_pitch_command(
    snapshot: SensorSnapshot, pad: PadState, params: TorsoReflexParams
) -> MotorCommand:
    """Raw torso-pitch command: inertia * (sd_target - distance)."""
    target = compute_sd_target(pad.dominance, params)
    inertia = compute_inertia(pad.arousal)
    return MotorCommand(TORSO_NODE, inertia * (target - snapshot.distance))


@dataclass(frozen=True)
class NodeBias:
    """Cognitive modulation applied to one node; the default is neutral.

    sd_default_override replaces the node's preferred social distance,
    pad_offset is added to the PAD the node sees (then clamped), and
    gain scales the final command.
    """

    sd_default_override: float | None = None
    pad_offset: PadState | None = None
    gain: float = 1.0

    def __post_init__(self) -> None:
        if not self.gain >= 0.0:
            raise DomainError(f"bias gain must be >= 0, got {self.gain}")
        if self.sd_default_override is not None and not self.sd_default_override > 0.0:
            raise DomainError(
                f"sd_default override must be > 0, got {self.sd_default_override}"
            )


NEUTRAL_BIAS = NodeBias()


@dataclass(frozen=True)
class ReflexNodeState:
    """Parameters plus the last evaluation outcome of one reflex node."""

    node_id: str
    params: TorsoReflexParams
    last_deviation: float = 0.0
    last_command: MotorCommand = MotorCommand(TORSO_NODE, 0.0)
    bias: NodeBias = NEUTRAL_BIAS


@dataclass(frozen=True)
class NodeEvaluation:
    """Everything one evaluation computed, for the trace and for emotion."""

    command: MotorCommand
    deviation: float
    sd_target: float
    inertia: float


def evaluate_node(
    node: ReflexNodeState, snapshot: SensorSnapshot, pad: PadState
) -> tuple[ReflexNodeState, NodeEvaluation]:
    """Apply the node's bias, run its reflex equation, record the outcome.

    Bias is applied first: sd_default_override replaces the parameter,
    pad_offset shifts (then clamps) the PAD the node sees, gain scales
    the command. Pure in its inputs: identical (node, snapshot, pad)
    yield identical results, so nodes may be evaluated concurrently
    against the same snapshot.
    """
    if node.node_id != TORSO_NODE:
        raise ConfigurationError(f"unknown reflex node kind: {node.node_id!r}")
    bias = node.bias
    params = node.params
    if bias.sd_default_override is not None:
        params = replace(params, sd_default=bias.sd_default_override)
    effective_pad = pad
    if bias.pad_offset is not None:
        effective_pad = clamp_pad(pad.add(bias.pad_offset))
    target = compute_sd_target(effective_pad.dominance, params)
    deviation = target - snapshot.distance
    inertia = compute_inertia(effective_pad.arousal)
    command = MotorCommand(TORSO_NODE, bias.gain * inertia * deviation)
    updated = replace(node, last_deviation=deviation, last_command=command)
    return updated, NodeEvaluation(command, deviation, target, inertia)


def apply_bias(node: ReflexNodeState, bias: NodeBias) -> ReflexNodeState:
    """Install a new bias, replacing the previous one outright."""
    return replace(node, bias=bias)
