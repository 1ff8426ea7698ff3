"""
Seeded verification suites
==========================

Every suite is deterministic in its seed.  Trial 0 injects the extremal
construction, so the attained maximum shows whether the bound is tight.
"""

from matalg.search import SUITES, replay_trial, run_suite

for sid in SUITES:
    rep = run_suite(sid, 4, trials=60, seed=11)
    print(rep.verdict())

rep = run_suite("thm31", 4, trials=200, seed=7)
print(rep.histogram)

# A single trial replays from (seed, index) alone.
print(replay_trial("thm31", 4, 0, 7).dims)
