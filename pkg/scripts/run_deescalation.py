#!/usr/bin/env python3
"""Run the shipped de-escalation replay and print the tick table.

Shows every quantity the scenario walkthrough tabulates: distance, PAD,
social-distance target, inertia factor, the torso-pitch command and the
body outcome.
"""

from __future__ import annotations

import sys
from pathlib import Path

from reflexsim import load_scenario, run

SCENARIO = Path(__file__).resolve().parent.parent / "scenarios" / "deescalation.scn"


def main() -> int:
    rows = run(load_scenario(SCENARIO))
    header = (
        f"{'tick':>4} {'dist':>5} {'P':>5} {'A':>5} {'D':>5} "
        f"{'sd_t':>5} {'c_sd':>4} {'pitch':>6} {'lean':>5} {'vel':>6}  phase"
    )
    print(header)
    print("-" * len(header))
    for r in rows:
        print(
            f"{r.tick:>4} {r.distance:>5.2f} {r.pleasure:>5.2f} {r.arousal:>5.2f} "
            f"{r.dominance:>5.2f} {r.sd_target:>5.2f} {r.c_sd:>4.2f} "
            f"{r.torso_pitch_command:>6.2f} {r.lean:>5.2f} {r.forward_velocity:>6.2f}"
            f"  {r.phase}{'  [blocked]' if r.blocked else ''}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
