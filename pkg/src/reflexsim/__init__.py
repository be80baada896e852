"""Deterministic virtual-character behavior simulation.

Behavior is generated by concurrent reflex nodes (sensory-motor loops)
whose activity both shapes and is shaped by a PAD emotional state, with a
declarative cognition layer biasing the nodes and a body-integrity model
turning pitch commands into coherent motion. Scenarios script either a
full replay (distances and PAD given per tick) or a closed loop where a
scripted or live trainee steers the interaction.
"""

from .body import BodyConfig, BodyState, integrate_distance, resolve_body
from .cognition import CognitiveRule, RuleCondition, plan_step
from .core import (
    ConfigurationError,
    DomainError,
    MotorCommand,
    PadState,
    Personality,
    Posture,
    SensorSnapshot,
    TorsoReflexParams,
    clamp_pad,
)
from .emotion import EmotionConfig, aggregate_deviations, decay_toward
from .engine import Engine, TickInput, WorldState, run
from .reflex import (
    NEUTRAL_BIAS,
    NodeBias,
    NodeEvaluation,
    ReflexNodeState,
    TORSO_NODE,
    apply_bias,
    compute_inertia,
    compute_sd_target,
    evaluate_node,
    torso_pitch_command,
)
from .scenario import (
    MODE_CLOSED_LOOP,
    MODE_REPLAY,
    Scenario,
    ScenarioError,
    TimedEvent,
    VcConfig,
    load_scenario,
    parse_scenario,
    serialize_scenario,
)
from .trace import Trace, TraceRow, read_trace_csv, trace_to_csv, write_trace_csv

__version__ = "0.1.0"

__all__ = [
    "BodyConfig",
    "BodyState",
    "CognitiveRule",
    "ConfigurationError",
    "DomainError",
    "EmotionConfig",
    "Engine",
    "MODE_CLOSED_LOOP",
    "MODE_REPLAY",
    "MotorCommand",
    "NEUTRAL_BIAS",
    "NodeBias",
    "NodeEvaluation",
    "PadState",
    "Personality",
    "Posture",
    "ReflexNodeState",
    "RuleCondition",
    "Scenario",
    "ScenarioError",
    "SensorSnapshot",
    "TORSO_NODE",
    "TickInput",
    "TimedEvent",
    "TorsoReflexParams",
    "Trace",
    "TraceRow",
    "VcConfig",
    "WorldState",
    "aggregate_deviations",
    "apply_bias",
    "clamp_pad",
    "compute_inertia",
    "compute_sd_target",
    "decay_toward",
    "evaluate_node",
    "integrate_distance",
    "load_scenario",
    "parse_scenario",
    "plan_step",
    "read_trace_csv",
    "resolve_body",
    "run",
    "serialize_scenario",
    "torso_pitch_command",
    "trace_to_csv",
    "write_trace_csv",
]
