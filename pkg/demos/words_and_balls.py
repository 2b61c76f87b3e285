"""Normal forms in the right-angled Artin group of the 4-cycle.

Vertices 1 and 3 are not adjacent, nor are 2 and 4, so the group is
F2 x F2.  Normal forms let us count balls exactly; the counts should match
the product of two free-group sphere sequences.
"""
from selfsim.fixtures import cycle
from selfsim.words import ball, format_word, invert, multiply, parse_normal, tail

G = cycle(4)

a = parse_normal(G, "2:+1 1:+1 3:-1")
b = parse_normal(G, "3:+1 4:+2")
print("a       =", format_word(G, a))
print("b       =", format_word(G, b))
print("a b     =", format_word(G, multiply(G, a, b)))
print("a^-1    =", format_word(G, invert(G, a)))
print("tail(a) =", sorted(tail(G, a)))

free = [1, 4, 12, 36, 108]
for R in range(5):
    direct = sum(free[i] * free[j] for i in range(R + 1) for j in range(R + 1 - i))
    print(f"R={R}: |ball| = {len(ball(G, R)):5d}   F2 x F2 count = {direct}")
