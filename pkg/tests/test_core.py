from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reflexsim import (
    DomainError,
    MotorCommand,
    PadState,
    Personality,
    SensorSnapshot,
    TorsoReflexParams,
    clamp_pad,
)

finite = st.floats(allow_nan=False, allow_infinity=False)
pads = st.builds(PadState, finite, finite, finite)


def test_clamp_pad_in_range_unchanged():
    assert clamp_pad(PadState(0.5, -0.2, 0.0)) == PadState(0.5, -0.2, 0.0)


def test_clamp_pad_saturates():
    assert clamp_pad(PadState(2.0, -3.0, 1.0)) == PadState(1.0, -1.0, 1.0)


def test_clamp_pad_extreme_corner_is_legal():
    # (-1, 1, 1) is the aroused-dominant state the shipped scenario starts from
    assert clamp_pad(PadState(-1.0, 1.0, 1.0)) == PadState(-1.0, 1.0, 1.0)


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
def test_pad_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        PadState(bad, 0.0, 0.0)
    with pytest.raises(DomainError):
        PadState(0.0, bad, 0.0)


@given(pads)
def test_clamp_pad_idempotent(pad):
    once = clamp_pad(pad)
    assert clamp_pad(once) == once


@given(pads, pads)
def test_clamp_pad_componentwise_monotone(a, b):
    lo = PadState(
        min(a.pleasure, b.pleasure),
        min(a.arousal, b.arousal),
        min(a.dominance, b.dominance),
    )
    hi = PadState(
        max(a.pleasure, b.pleasure),
        max(a.arousal, b.arousal),
        max(a.dominance, b.dominance),
    )
    clo, chi = clamp_pad(lo), clamp_pad(hi)
    assert clo.pleasure <= chi.pleasure
    assert clo.arousal <= chi.arousal
    assert clo.dominance <= chi.dominance


@given(pads)
def test_clamp_pad_output_in_range(pad):
    assert clamp_pad(pad).in_range()


def test_personality_enforces_range():
    Personality(PadState(0.0, 0.0, -0.5))
    with pytest.raises(DomainError):
        Personality(PadState(0.0, 0.0, 1.5))


def test_snapshot_validation():
    snap = SensorSnapshot(distance=4.0, trainee_calmness=0.5, trainee_displacement=-0.2)
    assert snap.distance == 4.0
    with pytest.raises(DomainError):
        SensorSnapshot(distance=-1.0)
    with pytest.raises(DomainError):
        SensorSnapshot(distance=1.0, trainee_calmness=1.5)
    with pytest.raises(DomainError):
        SensorSnapshot(distance=math.inf)


def test_torso_params_validation():
    params = TorsoReflexParams(sd_default=1.0, cultural_distance=0.2)
    assert params.sd_default == 1.0
    with pytest.raises(DomainError):
        TorsoReflexParams(sd_default=0.0)
    with pytest.raises(DomainError):
        TorsoReflexParams(sd_default=1.0, cultural_distance=-0.1)


def test_motor_command_requires_finite_value():
    with pytest.raises(DomainError):
        MotorCommand("torso_pitch", math.nan)
