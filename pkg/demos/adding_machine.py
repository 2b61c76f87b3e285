"""Compile a binary counter to Wang tiles and print the rows of its run.

Cell 1 holds the least significant bit, marked with a star.  Row 0 is the
seed and the input; every later row is one machine step.
"""
from selfsim.tiling import adding_machine, check_tiling, compile_tm_to_tiles, run_tiling

m = adding_machine()
ts = compile_tm_to_tiles(m)
W, H = 8, 16
grid = run_tiling(m, ts, list("0110000"), W, H)
print(f"{len(ts.tiles)} tiles; tiling valid: {check_tiling(ts, grid).ok}")

for y in range(1, H):
    cells = []
    for x in range(1, W):
        parts = ts.tiles[grid[(x, y)]].n.split("|")
        cells.append(f"[{parts[1]:>2}]" if parts[0] == "h" else f" {parts[1]:>2} ")
    print(f"t={y - 1:2d} " + "".join(cells))
