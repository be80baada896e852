"""PAD state dynamics.

The emotional state is a running correlate of how hard the reflex nodes
are being driven: deviation magnitude excites arousal, calm sensory input
erodes elevated dominance, and the whole state decays toward the
personality baseline in proportion to how calm the input is. Setting the
state from outside (scripted PAD, a bias) immediately shifts the drives,
since the nodes read PAD every tick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DomainError, PadState, Personality, clamp, clamp_pad


@dataclass(frozen=True)
class EmotionConfig:
    """Gains of the per-tick PAD update.

    Defaults are tuned so the shipped closed-loop demo calms within
    roughly ten ticks of sustained calm input; they are configuration,
    not claims.
    """

    decay_rate: float = 0.3
    arousal_gain: float = 0.3
    dominance_gain: float = 0.4
    deviation_scale: float = 4.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.decay_rate <= 1.0:
            raise DomainError(f"decay_rate must be in [0, 1], got {self.decay_rate}")
        if not self.arousal_gain >= 0.0:
            raise DomainError(f"arousal_gain must be >= 0, got {self.arousal_gain}")
        if not self.dominance_gain >= 0.0:
            raise DomainError(
                f"dominance_gain must be >= 0, got {self.dominance_gain}"
            )
        if not self.deviation_scale > 0.0:
            raise DomainError(
                f"deviation_scale must be > 0, got {self.deviation_scale}"
            )


def decay_toward(pad: PadState, personality: Personality, rate: float) -> PadState:
    """Move each component a fraction `rate` of the way to the personality.

    rate=0 is the identity, rate=1 lands exactly on the personality point.
    Computed as (1-rate)*c + rate*default so both endpoints are exact in
    floating point.
    """
    if not 0.0 <= rate <= 1.0:
        raise DomainError(f"decay rate must be in [0, 1], got {rate}")
    d = personality.pad_default
    keep = 1.0 - rate
    return clamp_pad(
        PadState(
            keep * pad.pleasure + rate * d.pleasure,
            keep * pad.arousal + rate * d.arousal,
            keep * pad.dominance + rate * d.dominance,
        )
    )


def aggregate_deviations(
    pad: PadState,
    deviations: list[float],
    calmness: float,
    cfg: EmotionConfig,
    personality: Personality,
) -> PadState:
    """One tick of PAD emergence from this tick's node deviations.

    Applied in this fixed order:
      1. arousal += arousal_gain * s * (1 - calmness), where s is the mean
         absolute deviation over deviation_scale, saturated to [0, 1];
      2. dominance -= dominance_gain * calmness * (dominance elevation
         above the personality baseline, if any);
      3. the whole state decays toward the personality at
         decay_rate * calmness.
    Pleasure is touched only by step 3. Output is always clamped.
    """
    if not 0.0 <= calmness <= 1.0:
        raise DomainError(f"calmness must be in [0, 1], got {calmness}")
    for dev in deviations:
        if not math.isfinite(dev):
            raise DomainError(f"deviations must be finite, got {dev!r}")

    if deviations:
        mean_abs = sum(abs(d) for d in deviations) / len(deviations)
        saturation = min(1.0, mean_abs / cfg.deviation_scale)
    else:
        saturation = 0.0

    arousal = clamp(
        pad.arousal + cfg.arousal_gain * saturation * (1.0 - calmness), -1.0, 1.0
    )
    baseline = personality.pad_default.dominance
    dominance = clamp(
        pad.dominance
        - cfg.dominance_gain * calmness * max(0.0, pad.dominance - baseline),
        -1.0,
        1.0,
    )
    excited = PadState(pad.pleasure, arousal, dominance)
    return decay_toward(excited, personality, cfg.decay_rate * calmness)
