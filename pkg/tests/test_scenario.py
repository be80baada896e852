from __future__ import annotations

from pathlib import Path

import pytest

from reflexsim import (
    MODE_CLOSED_LOOP,
    MODE_REPLAY,
    PadState,
    Scenario,
    ScenarioError,
    parse_scenario,
    serialize_scenario,
)

FIXTURES = Path(__file__).parent / "fixtures" / "malformed"

# (fixture, 1-based line of the error, substring of the message)
MALFORMED = [
    ("unknown_directive.scn", 2, "unknown directive"),
    ("bad_mode.scn", 2, "mode"),
    ("pad_out_of_range.scn", 5, "dominance"),
    ("unknown_key.scn", 5, "unknown key"),
    ("replay_event_in_closed_loop.scn", 5, "replay"),
    ("duplicate_event.scn", 6, "duplicate event"),
    ("bad_duration.scn", 3, "integer"),
    ("indent_outside_block.scn", 2, "outside any block"),
    ("missing_header.scn", 1, "scenario"),
    ("rule_unknown_node.scn", 5, "unknown node"),
]

MINIMAL = "scenario tiny\nmode closed_loop\nduration 0\n"


def test_shipped_deescalation_shape(deescalation):
    s = deescalation
    assert s.mode == MODE_REPLAY
    assert s.duration == 7
    assert s.vc.torso_params.sd_default == 1.0
    assert s.vc.torso_params.cultural_distance == 0.2
    assert s.vc.personality.pad_default == PadState(0.0, 0.0, -0.5)
    assert s.vc.initial_pad == PadState(-1.0, 1.0, 1.0)
    pad_events = [e for e in s.events if e.kind == "set_pad"]
    assert [e.tick for e in pad_events] == [0, 5]
    assert pad_events[0].value == PadState(-1.0, 1.0, 1.0)
    assert pad_events[1].value == PadState(0.0, 0.0, -0.5)
    distances = [e.value for e in s.events if e.kind == "set_distance"]
    assert distances == [4.0, 2.0, 2.5, 1.5, 1.5, 1.5, 1.7]


def test_minimal_file():
    s = parse_scenario(MINIMAL)
    assert s.name == "tiny"
    assert s.mode == MODE_CLOSED_LOOP
    assert s.duration == 0
    assert s.events == ()
    assert s.rules == ()


def test_dominance_out_of_range_names_field_and_range():
    text = "scenario t\nmode replay\nduration 1\nvc:\n  initial_pad 0 0 1.5\n"
    with pytest.raises(ScenarioError) as err:
        parse_scenario(text)
    assert err.value.line == 5
    assert "dominance" in err.value.message
    assert "[-1, 1]" in err.value.message


@pytest.mark.parametrize("fixture,line,fragment", MALFORMED)
def test_malformed_rejected_with_line(fixture, line, fragment):
    text = (FIXTURES / fixture).read_text()
    with pytest.raises(ScenarioError) as err:
        parse_scenario(text)
    assert err.value.line == line, f"{fixture}: got line {err.value.line}"
    assert fragment in str(err.value)


def test_no_partial_results():
    # the error is at the end; nothing parsed earlier should leak out
    text = MINIMAL + "garbage here\n"
    with pytest.raises(ScenarioError):
        parse_scenario(text)


@pytest.mark.parametrize("name", ["deescalation.scn", "calm_approach.scn"])
def test_round_trip_fixpoint_on_shipped(scenarios_dir, name):
    original = parse_scenario((scenarios_dir / name).read_text())
    assert parse_scenario(serialize_scenario(original)) == original


def test_unordered_events_are_canonicalized():
    text = (
        "scenario t\nmode replay\nduration 3\n"
        "events:\n"
        "  at 2 set_distance 3\n"
        "  at 0 set_distance 1\n"
        "  at 1 set_distance 2\n"
    )
    s = parse_scenario(text)
    assert [e.tick for e in s.events] == [0, 1, 2]
    serialized = serialize_scenario(s)
    lines = [line for line in serialized.splitlines() if line.startswith("  at")]
    assert lines == ["  at 0 set_distance 1", "  at 1 set_distance 2", "  at 2 set_distance 3"]


def test_defaults_omitted_and_reparsed(deescalation):
    # serialize a scenario that is all defaults except the header fields
    s = parse_scenario(MINIMAL)
    text = serialize_scenario(s)
    assert text == MINIMAL
    # and a non-trivial one keeps only non-default keys, field by field
    round_tripped = parse_scenario(serialize_scenario(deescalation))
    assert round_tripped.vc == deescalation.vc
    assert round_tripped.emotion_cfg == deescalation.emotion_cfg
    assert round_tripped.body_cfg == deescalation.body_cfg
    assert round_tripped.events == deescalation.events
    assert round_tripped.rules == deescalation.rules
    assert round_tripped.initial_distance == deescalation.initial_distance
    assert round_tripped == deescalation


def test_rules_parse_and_round_trip():
    text = (
        "scenario t\nmode closed_loop\nduration 9\n"
        "rules:\n"
        "  when phase=calm_down set torso_pitch gain=0.5\n"
        "  when phase=calm_down tick>=4 set torso_pitch sd_default=2 pad_offset=0 -0.2 -0.5\n"
    )
    s = parse_scenario(text)
    assert len(s.rules) == 2
    assert s.rules[0].bias.gain == 0.5
    assert s.rules[1].condition.min_tick == 4
    assert s.rules[1].bias.sd_default_override == 2.0
    assert s.rules[1].bias.pad_offset == PadState(0.0, -0.2, -0.5)
    assert parse_scenario(serialize_scenario(s)) == s


def test_comments_and_blank_lines_ignored():
    text = "# header comment\n\nscenario t  # trailing\nmode replay\nduration 0\n"
    assert parse_scenario(text).name == "t"


def test_duplicate_directive_rejected():
    text = "scenario t\nmode replay\nmode replay\nduration 1\n"
    with pytest.raises(ScenarioError) as err:
        parse_scenario(text)
    assert err.value.line == 3


def test_missing_required_directive():
    with pytest.raises(ScenarioError) as err:
        parse_scenario("scenario t\nmode replay\n")
    assert "duration" in err.value.message


def test_error_carries_column():
    with pytest.raises(ScenarioError) as err:
        parse_scenario("scenario t\nmode replay\nduration 1\nvc:\n  sd_default nope\n")
    assert err.value.line == 5
    assert err.value.col == 14  # points at the bad token


def test_scenario_is_value_like():
    a = parse_scenario(MINIMAL)
    b = parse_scenario(MINIMAL)
    assert a == b and isinstance(a, Scenario)
