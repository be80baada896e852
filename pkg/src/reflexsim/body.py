"""Body-integrity model: pitch commands become lean plus locomotion.

A standing body can hold a lean of at most lean_max; commanding more
pitch tips it off balance and the character steps to recover, which is
what turns torso pitch into walking. Sub-threshold pitch still produces
a slow balancing shuffle in the same direction, so the body creeps
toward its drive target instead of freezing mid-lean. When blocked at an
obstacle the character may lean further (over the counter, up to
lean_over_max) but cannot step forward; stepping back is never blocked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ConfigurationError, DomainError, MotorCommand, Posture
from .reflex import TORSO_NODE


@dataclass(frozen=True)
class BodyConfig:
    lean_max: float = 0.5
    lean_over_max: float = 2.5
    walk_gain: float = 0.6  # stride speed per unit of off-balance pitch
    creep_gain: float = 0.3  # shuffle speed per unit of in-balance pitch
    min_distance: float = 1.0  # hard floor on distance, e.g. counter width

    def __post_init__(self) -> None:
        if not self.lean_max > 0.0:
            raise DomainError(f"lean_max must be > 0, got {self.lean_max}")
        if not self.lean_over_max >= self.lean_max:
            raise DomainError(
                f"lean_over_max must be >= lean_max, got {self.lean_over_max}"
            )
        if not self.walk_gain >= 0.0:
            raise DomainError(f"walk_gain must be >= 0, got {self.walk_gain}")
        if not self.creep_gain >= 0.0:
            raise DomainError(f"creep_gain must be >= 0, got {self.creep_gain}")
        if not self.min_distance >= 0.0:
            raise DomainError(f"min_distance must be >= 0, got {self.min_distance}")


@dataclass(frozen=True)
class BodyState:
    """Achieved lean and the locomotion it causes.

    forward_velocity is meters per tick toward the trainee: positive when
    approaching, negative when retreating.
    """

    lean: float = 0.0
    forward_velocity: float = 0.0

    def posture(self) -> Posture:
        return Posture(pitch=self.lean)


def resolve_body(command: MotorCommand, blocked: bool, cfg: BodyConfig) -> BodyState:
    """Map a torso-pitch command to a physically coherent lean and step.

    Unblocked: lean saturates at lean_max; pitch beyond that drives a
    stride of walk_gain per unit excess, pitch within it a shuffle of
    creep_gain per unit pitch. Blocked with a forward command: the
    character leans over the obstacle (up to lean_over_max) and does not
    step. Retreat is never blocked.
    """
    if command.channel != TORSO_NODE:
        raise ConfigurationError(f"unknown motor channel: {command.channel!r}")
    c = command.value
    if c == 0.0:
        return BodyState(lean=0.0, forward_velocity=0.0)
    magnitude = abs(c)

    if blocked and c < 0.0:
        return BodyState(
            lean=math.copysign(min(magnitude, cfg.lean_over_max), c),
            forward_velocity=0.0,
        )

    lean = math.copysign(min(magnitude, cfg.lean_max), c)
    excess = magnitude - cfg.lean_max
    if excess > 0.0:
        speed = cfg.walk_gain * excess
    else:
        speed = cfg.creep_gain * magnitude
    if speed == 0.0:
        return BodyState(lean=lean, forward_velocity=0.0)
    # forward (negative) pitch approaches, backward pitch retreats
    return BodyState(lean=lean, forward_velocity=speed if c < 0.0 else -speed)


def integrate_distance(
    distance: float, body: BodyState, trainee_displacement: float, cfg: BodyConfig
) -> float:
    """Advance the VC-trainee distance one tick; saturates at min_distance."""
    if not (math.isfinite(distance) and distance >= 0.0):
        raise DomainError(f"distance must be finite and >= 0, got {distance!r}")
    return max(cfg.min_distance, distance - body.forward_velocity + trainee_displacement)
