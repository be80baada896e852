#!/usr/bin/env python3
"""Closed-loop settling study.

Sweeps initial distances and trainee calmness levels against the shipped
calm-approach character and reports how many ticks the distance needs to
settle within a band of the preferred social distance. Illustrates the
qualitative claim behind the scenario: calm input is what lets the
character settle, agitated input keeps it pinned near the obstacle floor.
"""

from __future__ import annotations

import dataclasses
import sys
from pathlib import Path

from reflexsim import TimedEvent, load_scenario, run

SCENARIO = Path(__file__).resolve().parent.parent / "scenarios" / "calm_approach.scn"
BAND = 0.05
MAX_TICKS = 300


def ticks_to_settle(scenario) -> int | None:
    rows = run(scenario)
    for row in rows:
        if abs(row.distance - row.sd_target) < BAND:
            return row.tick
    return None


def main() -> int:
    base = load_scenario(SCENARIO)
    print(f"settling band: |distance - sd_target| < {BAND}, max {MAX_TICKS} ticks\n")

    print(f"{'initial d':>10} {'calmness':>9} {'settled at':>11}")
    for calmness in (1.0, 0.7, 0.4, 0.0):
        for d0 in (1.5, 2.5, 4.0, 7.0, 10.0):
            scenario = dataclasses.replace(
                base,
                initial_distance=d0,
                duration=MAX_TICKS,
                events=(TimedEvent(0, "set_calmness", calmness),),
            )
            tick = ticks_to_settle(scenario)
            settled = f"tick {tick}" if tick is not None else "never"
            print(f"{d0:>10.1f} {calmness:>9.1f} {settled:>11}")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
