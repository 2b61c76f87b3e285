"""Build a finite bush-layer patch on the 5-cycle and read it back.

The data layer is seeded from x = 0101... under the odometer action.  Every
direction of the bush at the identity, read through every edge containing it,
returns the same sequence of omega symbols.
"""
from selfsim.actions import OdometerAction
from selfsim.bushes import bush_rules, bush_witness, columns, direction_sequences
from selfsim.compute import omega_str
from selfsim.fixtures import alternating_bits, cycle
from selfsim.sft import check_patch
from selfsim.words import format_word

G = cycle(5)
x = alternating_bits(40)
p = bush_witness(G, 3, x, OdometerAction())
report = check_patch(bush_rules(G), p)
print(f"{len(p.cells)} cells, {report.checked_count} windows checked, {len(report.violations)} violations")
print("columns:", ["1"] + [format_word(G, s) for s in columns(G)[1:]])
print("bush at the identity:", sorted(p.cells[()].B))
for (v, e), seq in direction_sequences(p, 3).items():
    print(f"  direction {v} via edge {e}: {[omega_str(w) for w in seq]}")
