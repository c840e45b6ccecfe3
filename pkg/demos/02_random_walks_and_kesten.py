"""Kesten's criterion by exact return probabilities.

A symmetric random walk on a group has l2-spectral radius 1 exactly when
the group is amenable.  Return probabilities P^{2n}(e,e) are computed by
exact convolution over a ball of half the walk length (lossless: a
returning path never gets further than that), and the spectral radius is
extrapolated from the roots P^{2n}(e,e)^{1/2n}.
"""
from math import sqrt

import symdyn as sd

cases = [
    ("Z", sd.FreeAbelianGroup(1), 200, 1.0),
    ("Z^2", sd.FreeAbelianGroup(2), 60, 1.0),
    ("C3 (finite)", sd.FiniteTableGroup.cyclic(3), 100, 1.0),
    ("lamplighter", sd.LamplighterGroup(), 40, 1.0),
    ("F2 (free)", sd.FreeGroup(2), 20, sqrt(3) / 2),
]

print(f"{'group':14s} {'last root':>10s} {'lambda fit':>11s} {'known':>8s}")
for name, group, steps, known in cases:
    rs = sd.kesten_estimate(sd.uniform_walk(group), steps)
    print(f"{name:14s} {rs.lambda_raw:10.6f} {rs.lambda_fit:11.6f} {known:8.6f}")

# exact small values: on F2 the 4-step returns are 28/256
F2 = sd.FreeGroup(2)
rs = sd.kesten_estimate(sd.uniform_walk(F2), 8)
print("\nF2 exact returns:", dict(zip([2 * n for n in rs.ns], rs.probabilities)))

# the closed form for the free group F_k is sqrt(2k-1)/k < 1
for k in (2, 3):
    print(f"F{k}: closed form sqrt(2k-1)/k = {sqrt(2*k-1)/k:.6f}")
