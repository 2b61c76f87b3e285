"""Computation layer on the 4-cycle with a never-halting machine.

Each element carries a seeded Wang tiling of the machine run on its data.  We
check the patch, recover the seeded point with beta and confirm that shifting
the patch by a generator shifts the recovered point by the same generator.
"""
from selfsim.actions import OdometerAction
from selfsim.compute import beta, compute_rules, compute_witness, omega_alphabet, root_grid
from selfsim.fixtures import alternating_bits, cycle
from selfsim.sft import check_patch, shift_patch
from selfsim.tiling import never_halt_right
from selfsim.words import format_word, generators

G = cycle(4)
act = OdometerAction()
x = alternating_bits(40)
p = compute_witness(G, 3, x, act, never_halt_right(omega_alphabet(G)))
report = check_patch(compute_rules(G, p.tileset), p)
print(f"tiles: {len(p.tileset.tiles)}, violations: {len(report.violations)}")
print("beta:", beta(p), "seed prefix:", x[:3])

for s in generators(G):
    got = beta(shift_patch(p, s))
    want = list(act.apply(G, s, tuple(x)))[:len(got)]
    print(f"  shift by {format_word(G, s):5s} beta={got} s.x={want}")

grid = root_grid(p, ())
W = 1 + max(i for i, _ in grid)
H = 1 + max(j for _, j in grid)
print("tile ids on the plane rooted at the identity (top row last):")
for j in range(H):
    print("  " + " ".join(f"{grid.get((i, j), '.'):>3}" for i in range(W)))
