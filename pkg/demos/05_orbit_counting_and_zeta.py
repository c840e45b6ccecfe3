"""Suspension flows: orbit counting, growth rates, zeta truncations.

A positive edge roof turns periodic words into closed orbits with real
lengths.  Counting them gives the growth rate h solving P(-h r) = 0,
the Perry-type ratio h T e^{-hT} N(T) -> 1 for non-lattice roofs, and
the zeta function whose abscissa the pressure root locates.
"""
from math import exp, log, sqrt

import symdyn as sd

full2 = sd.full_shift(2)

# --- integer roof: lattice case ------------------------------------------
r1 = sd.RoofFunction.constant(full2, 1.0)
table = sd.orbit_counts(full2, r1, 12.0)
print("r = 1: prime orbits with length <= 3:", table.count_prime(3.0))
print("growth-rate fit:", round(table.growth_rate, 4), "~ log 2 =", round(log(2), 4))
pc = sd.perry_check(full2, r1, 15.0)
print("lattice roof detected:", pc.lattice, "(ratio assertion skipped)")

# --- irrational roof: the ratio drifts toward 1 ---------------------------
r2 = sd.RoofFunction(full2, {("a", "a"): 1.0, ("a", "b"): 1.0,
                             ("b", "a"): sqrt(2), ("b", "b"): sqrt(2)})
pc = sd.perry_check(full2, r2, 20.0)
print("\nroof (1, sqrt 2): lattice:", pc.lattice)
for T, N, ratio in pc.table[-4:]:
    print(f"  T={T:5.1f}  N(T)={N:6d}  h T e^-hT N(T) = {ratio:.4f}")

# --- pressure roots --------------------------------------------------------
print("\ndelta roots:")
print("  r=1 on full 2-shift:", sd.delta_root(full2, r1), "= log 2")
r12 = sd.RoofFunction(full2, {("a", "a"): 1.0, ("a", "b"): 1.0,
                              ("b", "a"): 2.0, ("b", "b"): 2.0})
print("  r=(1,2):", sd.delta_root(full2, r12),
      "= log((1+sqrt5)/2) =", log((1 + sqrt(5)) / 2))

# --- zeta partial sums bracket the abscissa --------------------------------
kappa = sd.Involution(full2, {"a": "b", "b": "a"})
trivial = sd.trivial_quotient(1)
coc = sd.Cocycle(full2, trivial, letters={"a": "a", "b": "a"})
skew = sd.build_skew(full2, trivial, coc, kappa=kappa)
root = sd.delta_root(full2, r1)
for s in (root + 0.1, root - 0.1):
    z = sd.zeta_partial(skew, r1, s, 30)
    side = "above" if s > root else "below"
    print(f"Z(s) partial at s {side} the abscissa: terms "
          f"{'decay' if not z.diverging else 'grow'} "
          f"(last: {z.terms[-1]:.4g})")

# --- restricted root on a skew product -------------------------------------
full4 = sd.full_shift(4, names=["a", "A", "b", "B"])
kap4 = sd.Involution(full4, {"a": "A", "A": "a", "b": "B", "B": "b"})
F2 = sd.FreeGroup(2)
cocF = sd.Cocycle(full4, F2, letters={n: n for n in ["a", "A", "b", "B"]})
skF = sd.build_skew(full4, F2, cocF, kappa=kap4)
r4 = sd.RoofFunction.constant(full4, 1.0)
d = sd.delta_sub_root(skF, r4, n_max=16)
print(f"\nrestricted pressure root (F2 extension, r=1): "
      f"{d.value:.5f} +- {d.uncertainty:.4f}")
print("unrestricted root:", sd.delta_root(full4, r4), "= log 4")
