"""Subshifts of finite type and topological pressure.

Builds the standard small shifts, checks their structure, and computes
pressure two ways: the spectral radius of the weighted transition
matrix, and the growth rate of weighted periodic-orbit sums.
"""
from math import log, sqrt

import numpy as np

import symdyn as sd

# --- the full 2-shift: every transition allowed -------------------------
full2 = sd.full_shift(2)
print("full 2-shift:", full2)
print("entropy =", sd.spectral_pressure(full2), "= log 2 =", log(2))

# --- the golden-mean shift: 'bb' forbidden ------------------------------
golden = sd.build_sft(["a", "b"], [[1, 1], [1, 0]])
print("\ngolden mean:", golden)
print("entropy =", sd.spectral_pressure(golden),
      "= log phi =", log((1 + sqrt(5)) / 2))

# periodic point counts are traces of matrix powers (Lucas numbers here)
from symdyn.sft import periodic_sum
print("periodic counts n=1..8:",
      [periodic_sum(golden, None, n).count for n in range(1, 9)])

# --- a weighted potential ------------------------------------------------
f = sd.EdgePotential(full2, np.log([[1, 2], [3, 4]]))
print("\npressure of log-weight [[1,2],[3,4]]:",
      sd.spectral_pressure(full2, f), "= log((5+sqrt(33))/2) =",
      log((5 + sqrt(33)) / 2))

# --- orbital route: a_n = (1/n) log sum over period-n orbits ------------
orb = sd.orbital_pressure(golden, None, 30)
print("\norbital pressure estimates (golden mean):")
for n, v in list(zip(orb.ns, orb.values))[-5:]:
    print(f"  a_{n} = {v:.8f}")
print(f"extrapolated {orb.estimate:.8f} vs spectral {orb.spectral:.8f}")

# --- period > 1 is handled through the cyclic classes --------------------
two_cycle = sd.build_sft(["a", "b"], [[0, 1], [1, 0]])
print("\n2-cycle: period", two_cycle.period,
      "pressure", sd.spectral_pressure(two_cycle))

# --- time-reversal symmetry validators -----------------------------------
kappa = sd.Involution(full2, {"a": "b", "b": "a"})
rep = sd.check_symmetry(full2, kappa, sd.EdgePotential.constant(full2, 0.0))
print("\nsymmetry check (full 2-shift, kappa = swap):",
      "pass" if rep.passed else rep)
