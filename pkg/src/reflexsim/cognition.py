"""Declarative cognitive layer.

Cognition never touches PAD or node state directly; it watches node
deviations, the emotional state, the tick index and the scenario phase,
and emits NodeBias values. Rules are a plain ordered table authored in
the scenario file: within a tick, the last matching rule per target node
wins, which gives authors an explicit priority mechanism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import PadState
from .reflex import NEUTRAL_BIAS, NodeBias


@dataclass(frozen=True)
class RuleCondition:
    """Conjunctive guard over scenario phase and tick index.

    Both parts are optional; an empty condition always matches. Total by
    construction: it cannot fail on any valid world state.
    """

    phase: str | None = None
    min_tick: int | None = None

    def matches(
        self,
        tick: int,
        deviations: dict[str, float],
        pad: PadState,
        phase: str,
    ) -> bool:
        if self.phase is not None and phase != self.phase:
            return False
        if self.min_tick is not None and tick < self.min_tick:
            return False
        return True


@dataclass(frozen=True)
class CognitiveRule:
    rule_id: str
    condition: RuleCondition
    bias: NodeBias
    target_node: str


def plan_step(
    rules: tuple[CognitiveRule, ...] | list[CognitiveRule],
    tick: int,
    deviations: dict[str, float],
    pad: PadState,
    phase: str,
) -> dict[str, NodeBias]:
    """Evaluate rules in order; per target node the last match wins.

    Nodes with no matching rule get the neutral bias. Targets are
    validated against the node set at scenario load, never here. Pure:
    identical inputs produce identical bias maps.
    """
    biases = {node_id: NEUTRAL_BIAS for node_id in deviations}
    for rule in rules:
        if rule.target_node not in biases:
            continue
        if rule.condition.matches(tick, deviations, pad, phase):
            biases[rule.target_node] = rule.bias
    return biases
