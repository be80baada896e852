from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reflexsim import (
    ConfigurationError,
    DomainError,
    NEUTRAL_BIAS,
    NodeBias,
    PadState,
    ReflexNodeState,
    SensorSnapshot,
    TORSO_NODE,
    TorsoReflexParams,
    apply_bias,
    compute_inertia,
    compute_sd_target,
    evaluate_node,
    torso_pitch_command,
)

TOL = 1e-9

PARAMS = TorsoReflexParams(sd_default=1.0, cultural_distance=0.2)
AROUSED_DOMINANT = PadState(-1.0, 1.0, 1.0)
CALMED = PadState(0.0, 0.0, -0.5)


def make_node(params=PARAMS, bias=NEUTRAL_BIAS):
    return ReflexNodeState(node_id=TORSO_NODE, params=params, bias=bias)


# ---------------------------------------------------------------------------
# inertia and social-distance target


@pytest.mark.parametrize(
    "arousal,expected",
    [(1.0, 1.0), (0.0, 0.5), (-1.0, 0.0)],
)
def test_compute_inertia(arousal, expected):
    assert compute_inertia(arousal) == pytest.approx(expected, abs=TOL)


def test_compute_inertia_domain():
    with pytest.raises(DomainError):
        compute_inertia(1.5)


@pytest.mark.parametrize(
    "dominance,params,expected",
    [
        (1.0, PARAMS, 0.2),
        (-0.5, PARAMS, 1.7),
        (0.0, TorsoReflexParams(sd_default=1.0, cultural_distance=0.0), 1.0),
    ],
)
def test_compute_sd_target(dominance, params, expected):
    assert compute_sd_target(dominance, params) == pytest.approx(expected, abs=TOL)


def test_compute_sd_target_domain():
    with pytest.raises(DomainError):
        compute_sd_target(-1.1, PARAMS)


@given(st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_sd_target_strictly_decreasing_in_dominance(d1, d2):
    if abs(d1 - d2) < 1e-9:  # below float resolution of (1 - D)
        return
    lo, hi = min(d1, d2), max(d1, d2)
    assert compute_sd_target(hi, PARAMS) < compute_sd_target(lo, PARAMS)


# ---------------------------------------------------------------------------
# torso-pitch command


@pytest.mark.parametrize(
    "distance,pad,expected",
    [
        (4.0, AROUSED_DOMINANT, -3.8),  # 1 * (0.2 - 4)
        (2.5, AROUSED_DOMINANT, -2.3),  # 1 * (0.2 - 2.5)
        (1.7, CALMED, 0.0),  # 0.5 * (1.7 - 1.7)
    ],
)
def test_torso_pitch_command_values(distance, pad, expected):
    command = torso_pitch_command(SensorSnapshot(distance=distance), pad, PARAMS)
    assert command.channel == TORSO_NODE
    assert command.value == pytest.approx(expected, abs=TOL)


# ---------------------------------------------------------------------------
# node evaluation and biasing


def test_evaluate_node_unbiased():
    node = make_node()
    updated, ev = evaluate_node(node, SensorSnapshot(distance=4.0), AROUSED_DOMINANT)
    assert ev.command.value == pytest.approx(-3.8, abs=TOL)
    assert ev.deviation == pytest.approx(-3.8, abs=TOL)  # C_sd = 1 here
    assert updated.last_command == ev.command
    assert updated.last_deviation == ev.deviation


def test_evaluate_node_zero_gain_annihilates():
    node = make_node(bias=NodeBias(gain=0.0))
    _, ev = evaluate_node(node, SensorSnapshot(distance=7.3), AROUSED_DOMINANT)
    assert ev.command.value == 0.0


def test_evaluate_node_sd_default_override():
    # by hand: sd_target = (1 - 1) * 2 + 0.2 = 0.2; command = 1 * (0.2 - 2.2) = -2.0
    node = make_node(bias=NodeBias(sd_default_override=2.0))
    _, ev = evaluate_node(node, SensorSnapshot(distance=2.2), AROUSED_DOMINANT)
    assert ev.command.value == pytest.approx(-2.0, abs=TOL)


def test_evaluate_node_unknown_kind():
    node = ReflexNodeState(node_id="gaze", params=PARAMS)
    with pytest.raises(ConfigurationError):
        evaluate_node(node, SensorSnapshot(distance=1.0), CALMED)


def test_apply_bias_neutral_is_identity():
    node = make_node()
    rebiaised = apply_bias(node, NEUTRAL_BIAS)
    snap = SensorSnapshot(distance=3.0)
    assert evaluate_node(node, snap, CALMED) == evaluate_node(rebiaised, snap, CALMED)


def test_apply_bias_gain_halves_command():
    node = make_node()
    snap = SensorSnapshot(distance=3.0)
    _, full = evaluate_node(node, snap, AROUSED_DOMINANT)
    _, half = evaluate_node(apply_bias(node, NodeBias(gain=0.5)), snap, AROUSED_DOMINANT)
    assert half.command.value == pytest.approx(0.5 * full.command.value, abs=TOL)


def test_apply_bias_replaces_not_accumulates():
    node = apply_bias(make_node(), NodeBias(gain=0.5))
    node = apply_bias(node, NodeBias(gain=0.8))
    assert node.bias == NodeBias(gain=0.8)


def test_pad_offset_shifts_dominance():
    # offset D by -0.5 from D=1: effective D = 0.5, sd_target = (1-0.5)*1+0.2 = 0.7
    node = make_node(bias=NodeBias(pad_offset=PadState(0.0, 0.0, -0.5)))
    _, ev = evaluate_node(node, SensorSnapshot(distance=0.7), AROUSED_DOMINANT)
    assert ev.sd_target == pytest.approx(0.7, abs=TOL)
    assert ev.command.value == pytest.approx(0.0, abs=TOL)


def test_bias_validation():
    with pytest.raises(DomainError):
        NodeBias(gain=-0.1)
    with pytest.raises(DomainError):
        NodeBias(sd_default_override=0.0)


# ---------------------------------------------------------------------------
# properties

params_st = st.builds(
    TorsoReflexParams,
    sd_default=st.floats(0.01, 10.0),
    cultural_distance=st.floats(0.0, 5.0),
)
pads_in_range = st.builds(
    PadState,
    st.floats(-1.0, 1.0),
    st.floats(-1.0, 1.0),
    st.floats(-1.0, 1.0),
)


@given(pads_in_range, params_st)
def test_equilibrium_zero_command(pad, params):
    target = compute_sd_target(pad.dominance, params)
    command = torso_pitch_command(SensorSnapshot(distance=target), pad, params)
    assert command.value == 0.0


@given(
    pads_in_range,
    params_st,
    st.floats(0.0, 20.0),
    st.floats(0.001, 5.0),
)
def test_monotone_decreasing_in_distance(pad, params, d, step):
    if pad.arousal <= -1.0:
        return
    near = torso_pitch_command(SensorSnapshot(distance=d), pad, params)
    far = torso_pitch_command(SensorSnapshot(distance=d + step), pad, params)
    assert far.value < near.value


@given(params_st, st.floats(0.0, 50.0))
def test_zero_arousal_freezes(params, distance):
    pad = PadState(0.0, -1.0, 0.3)
    command = torso_pitch_command(SensorSnapshot(distance=distance), pad, params)
    assert command.value == 0.0


@given(pads_in_range, params_st, st.floats(0.0, 20.0), st.floats(0.0, 4.0))
def test_bias_linearity(pad, params, distance, gain):
    snap = SensorSnapshot(distance=distance)
    _, unit = evaluate_node(make_node(params), snap, pad)
    _, scaled = evaluate_node(make_node(params, NodeBias(gain=gain)), snap, pad)
    assert scaled.command.value == pytest.approx(gain * unit.command.value, abs=1e-9)


@given(pads_in_range, params_st, st.floats(0.0, 20.0))
def test_evaluate_node_deterministic(pad, params, distance):
    node = make_node(params)
    snap = SensorSnapshot(distance=distance)
    assert evaluate_node(node, snap, pad) == evaluate_node(node, snap, pad)
