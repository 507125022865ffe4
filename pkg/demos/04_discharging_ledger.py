"""Charge transfers with an auditable ledger.

Each vertex starts at 7*deg - 18 half-units; the rules R0-R2 move charge
toward the 2-vertices along runs, bridges, and sponsored paths.  The total
is invariant and equals 14m - 18n, which is nonpositive whenever the
density stays at or below 18/7 — that tension is what makes the sign
pattern of the final charges informative.
"""

import random
from collections import Counter

from sparse2dc import endgame_report, run_discharge, verify_ledger
from sparse2dc.families import cycle
from sparse2dc.verify import random_capped_instance
from sparse2dc.reductions import ForestOfStarsError

c = cycle(12)
ledger = run_discharge(c)
print("C12: every final charge is", ledger.final[0] / 2,
      "| total =", ledger.total_final(), "half-units")
print("endgame:", endgame_report(c, ledger).to_json())

rng = random.Random(3)
for _ in range(6):
    g, _ = random_capped_instance(rng)
    if g.min_degree() < 2:
        continue
    try:
        ledger = run_discharge(g)
    except ForestOfStarsError as exc:
        print(f"\nn={g.n}: refused ({exc})")
        continue
    rules = Counter(t.rule for t in ledger.transfers)
    report = verify_ledger(g, ledger)
    print(f"\nn={g.n:3d} m={g.m:3d}: total {ledger.total_final():5d} half-units "
          f"(expected {report.expected_total_halves})")
    print("  transfers by rule:", dict(sorted(rules.items())))
    print("  conserved:", report.conserved,
          "| negative vertices:", len(report.negatives),
          "| each negative implies a reducible configuration:",
          report.negative_implies_configuration)
