"""Shared domain types and numeric conventions.

All scalar quantities are 64-bit floats. Comparisons in tests use explicit
absolute tolerances. Sign convention: negative torso pitch = lean toward
the trainee. Pitch commands are dimensionless; the body model decides what
a unit of pitch does to posture and locomotion.

Every type here is an immutable value and safe to share across concurrent
node evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An input violates a documented domain constraint."""


class ConfigurationError(Exception):
    """A component was wired to an unknown node or motor channel."""


def clamp(value: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, value))


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PadState:
    """Pleasure/Arousal/Dominance triple.

    Components must be finite. Values held by the simulation stay in
    [-1, 1] via clamp_pad; transient out-of-range triples (a raw sum
    before clamping, a bias offset) are representable on purpose.
    """

    pleasure: float = 0.0
    arousal: float = 0.0
    dominance: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "pleasure", _finite("pleasure", self.pleasure))
        object.__setattr__(self, "arousal", _finite("arousal", self.arousal))
        object.__setattr__(self, "dominance", _finite("dominance", self.dominance))

    def add(self, other: PadState) -> PadState:
        return PadState(
            self.pleasure + other.pleasure,
            self.arousal + other.arousal,
            self.dominance + other.dominance,
        )

    def in_range(self) -> bool:
        return all(
            -1.0 <= v <= 1.0 for v in (self.pleasure, self.arousal, self.dominance)
        )


def clamp_pad(pad: PadState) -> PadState:
    """Limit each PAD component to [-1, 1]; in-range components pass through.

    Idempotent and component-wise monotone. Non-finite components are
    rejected at PadState construction, so every input here is finite.
    """
    return PadState(
        clamp(pad.pleasure, -1.0, 1.0),
        clamp(pad.arousal, -1.0, 1.0),
        clamp(pad.dominance, -1.0, 1.0),
    )


@dataclass(frozen=True)
class Personality:
    """Baseline PAD point the emotional state decays toward absent excitation."""

    pad_default: PadState = PadState()

    def __post_init__(self) -> None:
        if not self.pad_default.in_range():
            raise DomainError(
                f"personality components must be in [-1, 1], got {self.pad_default}"
            )


@dataclass(frozen=True)
class Posture:
    """Torso command triple. Roll and yaw are carried but always 0 here."""

    pitch: float = 0.0
    roll: float = 0.0
    yaw: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "pitch", _finite("pitch", self.pitch))
        object.__setattr__(self, "roll", _finite("roll", self.roll))
        object.__setattr__(self, "yaw", _finite("yaw", self.yaw))


@dataclass(frozen=True)
class SensorSnapshot:
    """Immutable per-tick view of the world as the reflex nodes see it.

    distance: meters between VC and trainee, >= 0.
    trainee_calmness: 1 = fully calm, 0 = fully agitated.
    trainee_displacement: meters moved this tick, positive = away from VC.
    blocked: VC's forward locomotion is obstructed (e.g. at the counter).
    """

    distance: float
    trainee_calmness: float = 1.0
    trainee_displacement: float = 0.0
    blocked: bool = False

    def __post_init__(self) -> None:
        d = _finite("distance", self.distance)
        if d < 0.0:
            raise DomainError(f"distance must be >= 0, got {d}")
        object.__setattr__(self, "distance", d)
        c = _finite("trainee_calmness", self.trainee_calmness)
        if not 0.0 <= c <= 1.0:
            raise DomainError(f"trainee_calmness must be in [0, 1], got {c}")
        object.__setattr__(self, "trainee_calmness", c)
        object.__setattr__(
            self,
            "trainee_displacement",
            _finite("trainee_displacement", self.trainee_displacement),
        )


@dataclass(frozen=True)
class TorsoReflexParams:
    """Social-distance parameters of the torso-pitch node.

    sd_default: the VC's personal preferred social distance, meters > 0.
    cultural_distance: additive offset for cultural dissimilarity, meters >= 0.
    """

    sd_default: float = 1.0
    cultural_distance: float = 0.0

    def __post_init__(self) -> None:
        sd = _finite("sd_default", self.sd_default)
        if sd <= 0.0:
            raise DomainError(f"sd_default must be > 0, got {sd}")
        object.__setattr__(self, "sd_default", sd)
        cd = _finite("cultural_distance", self.cultural_distance)
        if cd < 0.0:
            raise DomainError(f"cultural_distance must be >= 0, got {cd}")
        object.__setattr__(self, "cultural_distance", cd)


@dataclass(frozen=True)
class MotorCommand:
    """One actuator command emitted by a reflex node."""

    channel: str
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _finite("value", self.value))
